#include "tautri/exactla.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef TAUTRI_HAVE_OPENMP
#include <omp.h>
#endif

namespace tautri::la {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 31))
    throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                std::to_string(p));
}

std::uint32_t Field::reduce(std::int64_t v) const {
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  return static_cast<std::uint32_t>(r);
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("inverse of zero in F_p");
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return reduce(t);
}

std::int64_t Field::signed_value(std::uint32_t a) const {
  return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t prime)
    : rows_(rows), cols_(cols), field_(prime), data_(rows * cols, 0) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows, std::uint32_t prime)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0), field_(prime) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (auto v : r) data_.push_back(field_.reduce(v));
  }
}

Matrix Matrix::identity(std::size_t n, std::uint32_t prime) {
  Matrix m(n, n, prime);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint32_t v) { return v == 0; });
}

bool Matrix::operator==(const Matrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && field_ == o.field_ && data_ == o.data_;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_, prime());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = data_[r * cols_ + c];
  return t;
}

Matrix Matrix::column(std::size_t c) const { return columns({c}); }

Matrix Matrix::columns(const std::vector<std::size_t>& cs) const {
  Matrix m(rows_, cs.size(), prime());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cs.size(); ++j) m.data_[r * cs.size() + j] = data_[r * cols_ + cs[j]];
  return m;
}

Matrix Matrix::rows_of(const std::vector<std::size_t>& rs) const {
  Matrix m(rs.size(), cols_, prime());
  for (std::size_t i = 0; i < rs.size(); ++i)
    std::copy_n(row_data(rs[i]), cols_, m.row_data(i));
  return m;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  Matrix m(nr, nc, prime());
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t c = 0; c < nc; ++c) m.data_[r * nc + c] = data_[(r0 + r) * cols_ + c0 + c];
  return m;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
  for (std::size_t r = 0; r < b.rows_; ++r)
    for (std::size_t c = 0; c < b.cols_; ++c) data_[(r0 + r) * cols_ + c0 + c] = b(r, c);
}

std::string Matrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? "," : "") << "[";
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? "," : "") << field_.signed_value((*this)(r, c));
    os << "]";
  }
  os << "]";
  return os.str();
}

namespace {

void check_same_field(const Matrix& a, const Matrix& b) {
  if (a.prime() != b.prime()) throw std::invalid_argument("matrices over different fields");
}

}  // namespace

Matrix operator*(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix product shape mismatch: " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " * " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  const std::uint64_t p = a.prime();
  Matrix c(a.rows(), b.cols(), a.prime());
  std::vector<std::uint64_t> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    const auto* arow = a.row_data(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::uint64_t v = arow[k];
      if (v == 0) continue;
      const auto* brow = b.row_data(k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        acc[j] += v * brow[j];
        if (acc[j] >= (1ull << 62)) acc[j] %= p;
      }
    }
    auto* crow = c.row_data(i);
    for (std::size_t j = 0; j < b.cols(); ++j) crow[j] = static_cast<std::uint32_t>(acc[j] % p);
  }
  return c;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix sum shape mismatch");
  Matrix c(a.rows(), a.cols(), a.prime());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) c.set_raw(r, k, a.field().add(a(r, k), b(r, k)));
  return c;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix difference shape mismatch");
  Matrix c(a.rows(), a.cols(), a.prime());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) c.set_raw(r, k, a.field().sub(a(r, k), b(r, k)));
  return c;
}

Matrix scale(const Matrix& a, std::uint32_t s) {
  Matrix c(a.rows(), a.cols(), a.prime());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) c.set_raw(r, k, a.field().mul(a(r, k), s));
  return c;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
  Matrix c(a.rows(), a.cols() + b.cols(), a.prime());
  c.set_block(0, 0, a);
  c.set_block(0, a.cols(), b);
  return c;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
  check_same_field(a, b);
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix c(a.rows() + b.rows(), a.cols(), a.prime());
  c.set_block(0, 0, a);
  c.set_block(a.rows(), 0, b);
  return c;
}

Matrix block_diagonal(const std::vector<Matrix>& blocks, std::uint32_t prime) {
  std::size_t nr = 0, nc = 0;
  for (const auto& b : blocks) {
    nr += b.rows();
    nc += b.cols();
  }
  Matrix m(nr, nc, prime);
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) {
    m.set_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Matrix power(const Matrix& a, std::size_t k) {
  Matrix result = Matrix::identity(a.rows(), a.prime());
  Matrix base = a;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

namespace {

constexpr std::size_t kParallelThreshold = 1u << 14;

template <bool Parallel>
Factorization factor_impl(const Matrix& a) {
  Factorization f;
  f.rref = a;
  Matrix& m = f.rref;
  const Field& k = a.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t prow = 0;
  for (std::size_t col = 0; col < cols && prow < rows; ++col) {
    std::size_t sel = rows;
    for (std::size_t r = prow; r < rows; ++r)
      if (m(r, col) != 0) {
        sel = r;
        break;
      }
    if (sel == rows) continue;
    if (sel != prow) std::swap_ranges(m.row_data(sel), m.row_data(sel) + cols, m.row_data(prow));
    const std::uint32_t inv = k.inv(m(prow, col));
    std::uint32_t* pr = m.row_data(prow);
    for (std::size_t c = col; c < cols; ++c) pr[c] = k.mul(pr[c], inv);

    const auto eliminate = [&](std::size_t r) {
      if (r == prow) return;
      std::uint32_t* rr = m.row_data(r);
      const std::uint32_t factor = rr[col];
      if (factor == 0) return;
      for (std::size_t c = col; c < cols; ++c)
        if (pr[c] != 0) rr[c] = k.sub(rr[c], k.mul(factor, pr[c]));
    };
    if constexpr (Parallel) {
#ifdef TAUTRI_HAVE_OPENMP
      const long long nrows = static_cast<long long>(rows);
#pragma omp parallel for schedule(static) if (rows * cols > kParallelThreshold)
      for (long long r = 0; r < nrows; ++r) eliminate(static_cast<std::size_t>(r));
#else
      for (std::size_t r = 0; r < rows; ++r) eliminate(r);
#endif
    } else {
      for (std::size_t r = 0; r < rows; ++r) eliminate(r);
    }
    f.pivots.push_back(col);
    ++prow;
  }
  f.rank = prow;

  std::vector<char> is_pivot(cols, 0);
  for (auto c : f.pivots) is_pivot[c] = 1;
  f.kernel_basis = Matrix(cols, cols - f.rank, a.prime());
  std::size_t kc = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    f.kernel_basis.set_raw(free, kc, 1);
    for (std::size_t i = 0; i < f.rank; ++i)
      f.kernel_basis.set_raw(f.pivots[i], kc, k.neg(m(i, free)));
    // scale so the leading nonzero entry is 1
    std::uint32_t lead = 0;
    for (std::size_t r = 0; r < cols && lead == 0; ++r) lead = f.kernel_basis(r, kc);
    const std::uint32_t s = k.inv(lead);
    for (std::size_t r = 0; r < cols; ++r) f.kernel_basis.set_raw(r, kc, k.mul(f.kernel_basis(r, kc), s));
    ++kc;
  }
  f.image_basis = a.columns(f.pivots);
  return f;
}

}  // namespace

Factorization factor(const Matrix& a) { return factor_impl<true>(a); }
Factorization factor_serial(const Matrix& a) { return factor_impl<false>(a); }

std::size_t rank(const Matrix& a) {
  if (a.empty()) return 0;
  return factor(a).rank;
}

Matrix kernel(const Matrix& a) { return factor(a).kernel_basis; }

std::optional<Matrix> solve(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows())
    throw std::invalid_argument("solve: A has " + std::to_string(a.rows()) + " rows, B has " +
                                std::to_string(b.rows()));
  check_same_field(a, b);
  const std::size_t n = a.cols();
  Factorization f = factor(hstack(a, b));
  Matrix x(n, b.cols(), a.prime());
  for (std::size_t i = 0; i < f.rank; ++i) {
    if (f.pivots[i] >= n) return std::nullopt;
    for (std::size_t c = 0; c < b.cols(); ++c) x.set_raw(f.pivots[i], c, f.rref(i, n + c));
  }
  return x;
}

Matrix complement(const Matrix& a) {
  const std::size_t n = a.rows();
  Factorization f = factor(hstack(a, Matrix::identity(n, a.prime())));
  std::vector<std::size_t> extra;
  for (auto c : f.pivots)
    if (c >= a.cols()) extra.push_back(c - a.cols());
  return Matrix::identity(n, a.prime()).columns(extra);
}

bool is_invertible(const Matrix& a) { return a.rows() == a.cols() && rank(a) == a.rows(); }

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  if (a.rows() == 0) return a;
  auto x = solve(a, Matrix::identity(a.rows(), a.prime()));
  if (!x || !is_invertible(a)) return std::nullopt;
  return x;
}

Poly charpoly(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("charpoly of a non-square matrix");
  const Field& k = a.field();
  const std::size_t n = a.rows();
  Matrix h = a;
  // Reduce to upper Hessenberg form by similarity transformations.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t c = 0; c < n; ++c) {
        auto t = h(i, c);
        h.set_raw(i, c, h(m, c));
        h.set_raw(m, c, t);
      }
      for (std::size_t r = 0; r < n; ++r) {
        auto t = h(r, i);
        h.set_raw(r, i, h(r, m));
        h.set_raw(r, m, t);
      }
    }
    const std::uint32_t tinv = k.inv(h(m, m - 1));
    for (std::size_t r = m + 1; r < n; ++r) {
      const std::uint32_t u = k.mul(h(r, m - 1), tinv);
      if (u == 0) continue;
      for (std::size_t c = 0; c < n; ++c) h.set_raw(r, c, k.sub(h(r, c), k.mul(u, h(m, c))));
      for (std::size_t rr = 0; rr < n; ++rr) h.set_raw(rr, m, k.add(h(rr, m), k.mul(u, h(rr, r))));
    }
  }
  // p_0 = 1, p_m = (x - h_mm) p_{m-1} - sum_{i<m} h_im (prod_{j=i+1..m} h_{j,j-1}) p_{i-1}
  std::vector<Poly> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= n; ++m) {
    Poly next(m + 1, 0);
    const Poly& prev = p[m - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = k.add(next[d + 1], prev[d]);
      next[d] = k.sub(next[d], k.mul(h(m - 1, m - 1), prev[d]));
    }
    std::uint32_t t = 1;
    for (std::size_t i = m - 1; i >= 1; --i) {
      t = k.mul(t, h(i, i - 1));
      const std::uint32_t coeff = k.mul(h(i - 1, m - 1), t);
      if (coeff != 0) {
        const Poly& q = p[i - 1];
        for (std::size_t d = 0; d < q.size(); ++d) next[d] = k.sub(next[d], k.mul(coeff, q[d]));
      }
    }
    p[m] = std::move(next);
  }
  return p[n];
}

std::uint32_t evaluate(const Poly& f, std::uint32_t x, const Field& k) {
  std::uint32_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) acc = k.add(k.mul(acc, x), f[i]);
  return acc;
}

std::vector<std::pair<std::uint32_t, std::size_t>> roots(const Poly& f, const Field& k) {
  std::vector<std::pair<std::uint32_t, std::size_t>> out;
  Poly g = f;
  while (g.size() > 1 && g.back() == 0) g.pop_back();
  if (g.size() <= 1) return out;
  for (std::uint32_t x = 0; x < k.prime() && g.size() > 1; ++x) {
    std::size_t mult = 0;
    while (g.size() > 1 && evaluate(g, x, k) == 0) {
      // synthetic division by (t - x)
      Poly q(g.size() - 1, 0);
      std::uint32_t carry = 0;
      for (std::size_t i = g.size(); i-- > 1;) {
        carry = k.add(g[i], k.mul(carry, x));
        q[i - 1] = carry;
      }
      g = std::move(q);
      ++mult;
    }
    if (mult) out.emplace_back(x, mult);
  }
  return out;
}

}  // namespace tautri::la
