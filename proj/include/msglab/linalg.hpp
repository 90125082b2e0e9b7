#pragma once

// Dense exact linear algebra over a finite field.

#include <optional>
#include <string>
#include <vector>

#include "msglab/gf.hpp"

namespace msglab {

using Vec = std::vector<Elem>;

class Matrix {
public:
  Matrix() = default;
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols);
  Matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(FieldPtr f, std::size_t n);
  static Matrix scalar(FieldPtr f, std::size_t n, Elem s);
  static Matrix diagonal(FieldPtr f, const std::vector<Elem>& d);
  /// Integers reduced into the prime subfield.
  static Matrix from_ints(FieldPtr f, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v);
  /// Columns given as vectors of equal length.
  static Matrix from_columns(FieldPtr f, std::size_t rows, const std::vector<Vec>& columns);

  const FieldPtr& field() const { return f_; }
  const Field& F() const { return *f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Elem operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  Elem& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const std::vector<Elem>& entries() const { return a_; }

  Vec column(std::size_t j) const;
  Vec row(std::size_t i) const;
  Matrix transpose() const;

  bool is_zero() const;
  bool is_identity() const;
  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_ && (!f_ || *f_ == *o.f_);
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b);
  friend Matrix operator-(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  Matrix scaled(Elem s) const;
  Vec apply(const Vec& v) const;

private:
  FieldPtr f_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

struct MatrixHash {
  std::size_t operator()(const Matrix& m) const;
};

std::size_t rank(const Matrix& m);
/// Basis of the right kernel {v : M v = 0}, one vector per free column of
/// the reduced row echelon form.
std::vector<Vec> kernel_basis(const Matrix& m);
/// Some solution of M v = b, or nullopt.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
Elem det(const Matrix& m);
/// Throws std::domain_error on singular input.
Matrix invert(const Matrix& m);
std::optional<Matrix> try_invert(const Matrix& m);
bool is_invertible(const Matrix& m);
Matrix matmul(const Matrix& a, const Matrix& b);
/// Signed exponent; negative powers require an invertible matrix.
Matrix matpow(const Matrix& m, std::int64_t k);

/// Reduced row echelon form with the pivot columns.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;
};
Echelon rref(const Matrix& m);

/// Basis of the column space, chosen among the columns of m.
std::vector<Vec> column_space_basis(const Matrix& m);

/// Extends independent vectors to a basis of F^n with standard basis vectors,
/// lowest index first. Returns only the added vectors.
std::vector<Vec> complete_basis(FieldPtr f, std::size_t n, const std::vector<Vec>& vectors);

/// Basis of the linear space {M : x M = M x}.
std::vector<Matrix> commutant_basis(const Matrix& x);

/// Basis of {T : a T = T b} for square a (m x m) and b (n x n); T is m x n.
std::vector<Matrix> intertwiner_basis(const Matrix& a, const Matrix& b);

struct RankShift {
  std::size_t rank = 0;
  std::vector<Elem> argmins;
};

inline constexpr std::uint32_t kDefaultShiftBudget = 1u << 16;

/// min over alpha in F^x of rank(g - alpha h), with every minimizer.
RankShift min_rank_shift(const Matrix& g, const Matrix& h, std::uint32_t budget = kDefaultShiftBudget);

/// Visits every linear combination of `basis` (q^d members) in odometer
/// order, updating the current matrix incrementally. Throws BudgetError when
/// q^d exceeds the budget. The callback may return false to stop early.
template <class Visit>
void for_each_in_span(const std::vector<Matrix>& basis, const Matrix& zero, std::uint64_t budget, Visit visit) {
  const Field& f = zero.F();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    total *= f.q();
    if (total > budget) throw BudgetError("span enumeration exceeds budget");
  }
  std::vector<std::uint32_t> digits(basis.size(), 0);
  Matrix cur = zero;
  for (std::uint64_t step = 0;; ++step) {
    if (!visit(static_cast<const Matrix&>(cur))) return;
    if (step + 1 == total) return;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      const Elem old{digits[i]};
      digits[i] = digits[i] + 1 == f.q() ? 0 : digits[i] + 1;
      const Elem delta = f.sub(Elem{digits[i]}, old);
      const auto& b = basis[i].entries();
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (b[k].is_zero()) continue;
        const std::size_t r = k / cur.cols(), c = k % cur.cols();
        cur.at(r, c) = f.add(cur(r, c), f.mul(delta, b[k]));
      }
      if (digits[i] != 0) break;
    }
  }
}

/// Entries as "a,b;c,d"; extension-field entries are parenthesized
/// coefficient lists such as "(0,1)".
Matrix parse_matrix(FieldPtr f, const std::string& text);
std::string format_matrix(const Matrix& m);

}  // namespace msglab
