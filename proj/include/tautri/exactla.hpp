#pragma once

// Dense exact linear algebra over a prime field F_p.
//
// Every question the higher layers ask about modules (Hom dimensions,
// kernels, cokernels, lifting through covers) is reduced to rank / kernel /
// image / solve on these matrices. Pivoting is deterministic: the leftmost
// column with a nonzero entry, taking the topmost such row.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace tautri::la {

inline constexpr std::uint32_t kDefaultPrime = 1009;

/// Arithmetic in F_p for a runtime prime p < 2^31.
class Field {
 public:
  explicit Field(std::uint32_t p = kDefaultPrime);

  std::uint32_t prime() const { return p_; }
  std::uint32_t reduce(std::int64_t v) const;
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t inv(std::uint32_t a) const;
  /// Symmetric representative in (-p/2, p/2], used for printing.
  std::int64_t signed_value(std::uint32_t a) const;

  bool operator==(const Field& o) const { return p_ == o.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t p);

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, std::uint32_t prime = kDefaultPrime);
  /// Row-major literal; entries are reduced modulo `prime`.
  Matrix(std::initializer_list<std::initializer_list<std::int64_t>> rows,
         std::uint32_t prime = kDefaultPrime);

  static Matrix identity(std::size_t n, std::uint32_t prime);
  static Matrix zero(std::size_t rows, std::size_t cols, std::uint32_t prime) {
    return Matrix(rows, cols, prime);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t prime() const { return field_.prime(); }
  const Field& field() const { return field_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  std::uint32_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, std::int64_t v) { data_[r * cols_ + c] = field_.reduce(v); }
  void set_raw(std::size_t r, std::size_t c, std::uint32_t v) { data_[r * cols_ + c] = v; }
  void add_to(std::size_t r, std::size_t c, std::uint32_t v) {
    auto& e = data_[r * cols_ + c];
    e = field_.add(e, v);
  }

  const std::uint32_t* row_data(std::size_t r) const { return data_.data() + r * cols_; }
  std::uint32_t* row_data(std::size_t r) { return data_.data() + r * cols_; }

  bool is_zero() const;
  bool operator==(const Matrix& o) const;
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix transpose() const;
  Matrix column(std::size_t c) const;
  Matrix columns(const std::vector<std::size_t>& cs) const;
  Matrix rows_of(const std::vector<std::size_t>& rs) const;
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const Matrix& b);

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Field field_{};
  std::vector<std::uint32_t> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, std::uint32_t s);
Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);
Matrix block_diagonal(const std::vector<Matrix>& blocks, std::uint32_t prime);
Matrix power(const Matrix& a, std::size_t k);

struct Factorization {
  std::size_t rank = 0;
  Matrix rref;                       // reduced row echelon form, same shape as input
  std::vector<std::size_t> pivots;   // pivot column of each nonzero rref row
  Matrix kernel_basis;               // cols x (cols - rank), columns span ker A
  Matrix image_basis;                // rows x rank, the pivot columns of A
};

/// Full factorization. Row updates for large inputs run on OpenMP workers;
/// the result is bit-identical to `factor_serial`.
Factorization factor(const Matrix& a);
/// Single-threaded reference for `factor`.
Factorization factor_serial(const Matrix& a);

std::size_t rank(const Matrix& a);
Matrix kernel(const Matrix& a);

/// Some X with A X = B, or nullopt when a column of B leaves the image of A.
/// Throws std::invalid_argument when A and B have different row counts.
std::optional<Matrix> solve(const Matrix& a, const Matrix& b);

/// Columns of `a` extended by standard basis vectors to a basis of the whole
/// space; returns only the added vectors (a complement of the column span).
Matrix complement(const Matrix& a);

bool is_invertible(const Matrix& a);
std::optional<Matrix> inverse(const Matrix& a);

/// Dense polynomial over F_p, coefficients from the constant term upward.
using Poly = std::vector<std::uint32_t>;

/// Characteristic polynomial det(xI - A) via Hessenberg reduction; monic of
/// degree n. Valid in every characteristic.
Poly charpoly(const Matrix& a);
std::uint32_t evaluate(const Poly& f, std::uint32_t x, const Field& k);
/// Roots in F_p with multiplicities, ascending by root.
std::vector<std::pair<std::uint32_t, std::size_t>> roots(const Poly& f, const Field& k);

}  // namespace tautri::la
