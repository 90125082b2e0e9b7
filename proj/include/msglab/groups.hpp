#pragma once

// Group element carriers: permutations with cycle analysis, and matrix-group
// elements tagged by the classical group they are meant to live in.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "msglab/linalg.hpp"

namespace msglab {

/// Bijection of {0, ..., n-1}; images[i] is the image of i.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint32_t> images);

  static Permutation identity(std::size_t n);
  /// Product of the given disjoint or overlapping cycles, applied right to left.
  static Permutation from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles);

  std::size_t degree() const { return images_.size(); }
  std::uint32_t operator[](std::size_t i) const { return images_[i]; }
  const std::vector<std::uint32_t>& images() const { return images_; }

  bool is_identity() const;
  int sign() const;
  bool is_even() const { return sign() == 1; }
  /// Cycles including fixed points, each starting at its smallest point,
  /// ordered by that point.
  std::vector<std::vector<std::uint32_t>> cycles() const;
  std::vector<std::uint32_t> support() const;
  std::uint64_t order() const;

  auto operator<=>(const Permutation&) const = default;

private:
  std::vector<std::uint32_t> images_;
};

/// (sigma * tau)(i) = sigma(tau(i)).
Permutation perm_compose(const Permutation& sigma, const Permutation& tau);
Permutation perm_inverse(const Permutation& sigma);
inline Permutation operator*(const Permutation& a, const Permutation& b) { return perm_compose(a, b); }

/// Cycle type as a sorted (descending) list of cycle lengths, fixed points included.
std::vector<std::size_t> cycle_type(const Permutation& sigma);
std::vector<std::uint32_t> support(const Permutation& sigma);

/// Image list "1,2,0" or cycle notation with the degree, "3:(0 1 2)".
Permutation parse_permutation(const std::string& text);
std::string format_permutation(const Permutation& sigma);

/// Deterministic 64-bit generator; the algorithm is std::mt19937_64.
using Rng = std::mt19937_64;
/// Uniform integer in [0, bound) by rejection, independent of the standard
/// library's distribution implementation.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);
/// Independent stream for (seed, index).
Rng derive_rng(std::uint64_t seed, std::uint64_t index);

Permutation random_perm(std::size_t n, Rng& rng);
/// Fisher-Yates, then multiplied by (0 1) when odd.
Permutation random_even_perm(std::size_t n, std::uint64_t seed);
Permutation random_even_perm(std::size_t n, Rng& rng);

enum class GroupTag { GL, SL, Sp, PSL_REP };

std::string to_string(GroupTag tag);
GroupTag parse_group_tag(const std::string& s);

/// The standard alternating form [[0, I], [-I, 0]] of size n2.
Matrix standard_symplectic_form(FieldPtr f, std::size_t n2);
bool is_alternating_form(const Matrix& j);
bool preserves_form(const Matrix& g, const Matrix& j);

/// An invertible matrix tagged with the group it belongs to. Membership is
/// checked exactly on construction.
class ClassicalElement {
public:
  ClassicalElement(Matrix m, GroupTag tag, std::optional<Matrix> form = std::nullopt);

  const Matrix& matrix() const { return m_; }
  GroupTag tag() const { return tag_; }
  const std::optional<Matrix>& form() const { return form_; }
  std::size_t n() const { return m_.rows(); }
  const FieldPtr& field() const { return m_.field(); }

  /// Exact equality, or equality modulo scalars for PSL_REP.
  bool equals(const ClassicalElement& other) const;

private:
  Matrix m_;
  GroupTag tag_;
  std::optional<Matrix> form_;
};

/// g == alpha h for some alpha in F^x.
bool projectively_equal(const Matrix& g, const Matrix& h);
/// Scalar multiple whose first nonzero entry (row-major) is 1.
Matrix projective_normal_form(const Matrix& g);

Matrix random_invertible(FieldPtr f, std::size_t n, Rng& rng);
Matrix random_matrix(FieldPtr f, std::size_t rows, std::size_t cols, Rng& rng);
ClassicalElement random_sl(std::size_t n, FieldPtr f, std::uint64_t seed);
ClassicalElement random_sl(std::size_t n, FieldPtr f, Rng& rng);
/// Symplectic transvection x -> x + lambda <x, v> v with <x, v> = x^T J v.
Matrix symplectic_transvection(const Matrix& form, const Vec& v, Elem lambda);
/// Product of 3 * n2 random symplectic transvections; not uniform on Sp.
ClassicalElement random_sp(std::size_t n2, FieldPtr f, std::uint64_t seed);
ClassicalElement random_sp(std::size_t n2, FieldPtr f, Rng& rng);

/// |GL_n(q)|, |SL_n(q)|, |PSL_n(q)| as decimal strings are provided by
/// metrics; these enumerate elements for brute-force checks.
std::vector<Matrix> enumerate_sl(FieldPtr f, std::size_t n, std::uint64_t budget = 100000);
std::vector<Matrix> enumerate_gl(FieldPtr f, std::size_t n, std::uint64_t budget = 100000);
/// One projective normal form per element of PSL_n(q).
std::vector<Matrix> enumerate_psl(FieldPtr f, std::size_t n, std::uint64_t budget = 100000);
std::vector<Permutation> enumerate_symmetric(std::size_t n);
std::vector<Permutation> enumerate_alternating(std::size_t n);

ClassicalElement parse_classical(FieldPtr f, const std::string& text);
std::string format_classical(const ClassicalElement& g);

}  // namespace msglab
