// Wall-clock comparison of the OpenMP kernels against their serial twins.
// usage: bench_kernels [matrix size] [repeats]

#include <chrono>
#include <iostream>
#include <random>

#include "tautri/io.hpp"

using namespace tautri;

namespace {

template <class F>
double time_ms(int repeats, F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < repeats; ++i) f();
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

void line(const std::string& what, double par, double ser) {
  std::cout << what << "  parallel " << par << " ms  serial " << ser << " ms  speedup " << ser / par << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::stoul(argv[1]) : 400;
  const int repeats = argc > 2 ? std::stoi(argv[2]) : 3;

  std::mt19937 rng(42);
  std::uniform_int_distribution<std::int64_t> entry(0, la::kDefaultPrime - 1);
  la::Matrix m(n, n + n / 2);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m.set(r, c, entry(rng));
  line("factor " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()),
       time_ms(repeats, [&] { la::factor(m); }), time_ms(repeats, [&] { la::factor_serial(m); }));

  AlgebraPtr R = io::load_algebra(std::string(TAUTRI_DATA_DIR) + "/R.json");
  auto [a, b] = io::parse_split("A=1,2;B=3,4,5", *R);
  TriSplit s = triangular_split(R, a, b);
  TripleLabeler tl(s);
  SttPoset lp = enumerate_stt(s.Lambda, tl.lambda_labeler());
  SttPoset gp = enumerate_stt(s.Gamma, tl.gamma_labeler());
  line("sweep_lifts R", time_ms(repeats, [&] { sweep_lifts(s, lp, gp, tl, true); }),
       time_ms(repeats, [&] { sweep_lifts_serial(s, lp, gp, tl, true); }));

  std::vector<std::size_t> cap(R->num_vertices(), 1);
  line("oracle_indecomposables R", time_ms(repeats, [&] { oracle_indecomposables(R, cap); }),
       time_ms(repeats, [&] { oracle_indecomposables_serial(R, cap); }));
}
