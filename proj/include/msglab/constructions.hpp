#pragma once

// Rank-bounded matrix constructions:
//  * near k-th roots of a scalar (x agrees with y up to a controlled rank),
//  * approximating a matrix by one that commutes exactly with such an x,
//  * the order-p block-unipotent element of SL_2n / Sp_2n and witnesses for
//    the structure of its centralizer,
//  * the determinant-one projection of GL and commutator witnesses.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "msglab/metrics.hpp"

namespace msglab {

/// V = L (+) S where x^k = alpha on L and x = 1 on S.
struct SplitDecomposition {
  std::vector<Vec> L_basis;
  std::vector<Vec> S_basis;
  std::uint64_t k = 1;
  Elem alpha{1};

  std::size_t dim_L() const { return L_basis.size(); }
  std::size_t dim_S() const { return S_basis.size(); }
  /// Columns: L basis, then S basis.
  Matrix basis_matrix(FieldPtr f) const;
};

/// True iff the bases span V, L and S are x-invariant, (x|_L)^k = alpha and
/// x|_S = 1, all checked exactly.
bool satisfies_split_condition(const Matrix& x, const SplitDecomposition& dec);

struct NearRoot {
  Matrix x;
  SplitDecomposition dec;
  std::size_t defect_rank = 0;  ///< rk(y^k - alpha I)
  std::size_t distance_rank = 0;  ///< rk(x - y)
};

/// L = ker(y^k - alpha I), S completed from standard basis vectors in index
/// order, x = y on L and x = 1 on S. Then dim S = rk(y^k - alpha I) and
/// rk(x - y) <= dim S.
NearRoot prepare_near_root(const Matrix& y, std::uint64_t k, Elem alpha);

/// Thrown when a constructed centralizing matrix misses the rank bound.
class BoundViolation : public std::runtime_error {
public:
  BoundViolation(const std::string& what, std::string reproducer)
      : std::runtime_error(what), reproducer_(std::move(reproducer)) {}
  const std::string& reproducer() const { return reproducer_; }

private:
  std::string reproducer_;
};

struct CentralizeResult {
  Matrix psi;
  std::size_t commutator_rank = 0;  ///< rk(x phi - phi x)
  std::size_t distance_rank = 0;    ///< rk(phi - psi)
  std::size_t bound = 0;            ///< 2 k^2 rk(x phi - phi x) + 3 dim S
};

/// Finds an invertible psi commuting exactly with x and close to phi in rank.
/// Projects phi to block-diagonal form for L (+) S, averages the L-block over
/// conjugation by x|_L, and repairs singular blocks inside the commutant.
/// Throws BoundViolation when the bound is missed.
CentralizeResult approx_centralize(const Matrix& x, const SplitDecomposition& dec, const Matrix& phi,
                                   std::uint64_t seed = 0);

/// An invertible matrix differing from m by a matrix of rank nullity(m).
Matrix nearest_invertible(const Matrix& m);

enum class NiceblockGroup { SL, Sp };
std::string to_string(NiceblockGroup g);

struct NiceblockCertificate {
  NiceblockGroup group = NiceblockGroup::SL;
  std::size_t n = 0;  ///< half the matrix size
  ClassicalElement x;
  std::vector<Matrix> A_generators;
  std::vector<Matrix> H_generators;
  Matrix witness_u;
  Matrix witness_h;
  Rational witness_u_length;
  Rational witness_h_length;
  Matrix commutator_u;
  Matrix commutator_h;
  Matrix commutator;  ///< u^-1 h^-1 u h
  Rational commutator_length;
  Rational commutator_target;  ///< (1 - 2/n) / 3
  Rational x_length;
  BigInt p_core_order;  ///< q^(n^2) for SL, q^(n(n+1)/2) for Sp
  bool used_search = false;
};

/// x = [[I, I], [0, I]] of size 2n, the elementary abelian normal subgroup
/// A = {[[I, B], [0, I]]} of its centralizer (B symmetric for Sp), block
/// diagonal generators of a complement H, and length witnesses.
NiceblockCertificate build_niceblock(std::size_t n, FieldPtr f, NiceblockGroup group, std::uint64_t seed = 0);

/// Rechecks every invariant of a certificate; returns a list of failures.
std::vector<std::string> verify_niceblock(const NiceblockCertificate& cert);

/// [[I, B], [0, I]] in block form, B of size n.
Matrix upper_unipotent(const Matrix& b);
bool is_upper_unipotent(const Matrix& m, bool symmetric_block);

struct SlProjection {
  Matrix projected;
  std::size_t rank_difference = 0;
  Rational distance;
};

/// Scales the first column by det(g)^-1.
SlProjection project_to_sl(const Matrix& g);

/// Group generated by `gens` by breadth-first closure.
std::vector<Matrix> generate_group(const std::vector<Matrix>& gens, std::size_t budget = 200000);

inline constexpr std::size_t kCommutatorBudget = 10000;

/// (a, b) with g = a^-1 b^-1 a b, searching all pairs of `elements`, or
/// nullopt when no pair works.
template <class G, class Mul, class Inv, class Eq>
std::optional<std::pair<G, G>> commutator_witness(const G& g, const std::vector<G>& elements, Mul mul, Inv inv,
                                                  Eq eq, std::size_t budget = kCommutatorBudget) {
  if (elements.size() > budget) throw BudgetError("group too large for brute-force commutator search");
  if (eq(mul(g, g), g)) return std::pair<G, G>{g, g};
  for (const auto& a : elements) {
    const G ai = inv(a);
    for (const auto& b : elements) {
      const G c = mul(mul(ai, inv(b)), mul(a, b));
      if (eq(c, g)) return std::pair<G, G>{a, b};
    }
  }
  return std::nullopt;
}

}  // namespace msglab
