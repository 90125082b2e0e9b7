#pragma once

// Discrete near-geodesic chains from the identity to a target element:
// cycle-prefix chains in (A_n, d_H) and rank-one factorization chains in
// (PSL_n(q), d_pr). All lengths are exact rationals.

#include <optional>
#include <string>
#include <vector>

#include "msglab/metrics.hpp"

namespace msglab {

struct ChainPath {
  MetricKind kind = MetricKind::Hamming;
  bool alternating = true;  ///< Hamming chains: every element must be even
  /// Hamming chains fill `perms`, rank chains fill `matrices` (PSL_REP).
  std::vector<Permutation> perms;
  std::vector<ClassicalElement> matrices;
  Permutation target_perm;
  std::optional<ClassicalElement> target_matrix;

  std::vector<Rational> step_lengths;
  Rational total;
  Rational target_length;
  Rational overshoot;  ///< total - target_length

  std::size_t splits = 0;          ///< extra cycle segments (Hamming)
  std::size_t parity_repairs = 0;  ///< twist toggles, each costing 2/n (Hamming)
  std::size_t merged_repairs = 0;  ///< odd stretches merged into one step instead (Hamming)
  std::size_t rank_target = 0;     ///< r* (rank chains)
  std::size_t factors = 0;         ///< s (rank chains)
  std::size_t outside_psl = 0;     ///< chain elements whose determinant is not an n-th power

  std::size_t size() const { return kind == MetricKind::Hamming ? perms.size() : matrices.size(); }
  std::string element_string(std::size_t i) const;
};

/// Chain built by appending whole cycles of sigma, or segments of cycles
/// that do not fit in a step; each extra segment costs 1/n. In A_n
/// (`alternating`) odd intermediate prefixes are corrected by a
/// transposition on the right, costing 2/n where the twist starts and again
/// where it ends. Steps move at most floor(max_step n) + 2 points except
/// when a repair had to be merged. A_n needs sigma even and
/// max_step >= 2/n; S_n needs max_step >= 1/n, and there every step moves at
/// most max(floor(max_step n), 2) points.
ChainPath hamming_chain(const Permutation& sigma, const Rational& max_step, bool alternating = true);

/// Chain through I + u_1 w_1^T, (I + u_1 w_1^T)(I + u_2 w_2^T), ... ending
/// at alpha^-1 g, where alpha is the smallest minimizer of rk(g - alpha I).
/// Each peeled factor lowers the rank of the remainder by one, so s = r*
/// and every step has length 1/n. Requires max_step >= 1/n.
ChainPath rank_metric_chain(const ClassicalElement& g, const Rational& max_step,
                            std::uint32_t budget = kDefaultShiftBudget);

struct ChainReport {
  bool valid = false;
  Rational recomputed_total;
  Rational max_step;
  std::vector<std::string> issues;
};

/// Recomputes endpoints, every step distance, the total and the overshoot.
ChainReport verify_chain(const ChainPath& chain);

std::string format_chain(const ChainPath& chain);

}  // namespace msglab
