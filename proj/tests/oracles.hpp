#pragma once

// Brute-force reference computations used only by the tests. Every function
// here enumerates; none of them shares code paths with the library routines
// it is compared against beyond basic field and matrix arithmetic.

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "msglab/centralizers.hpp"
#include "msglab/metrics.hpp"

namespace oracle {

using namespace msglab;

/// All q^(rows*cols) matrices, visited in odometer order.
template <class Visit>
void for_each_matrix(FieldPtr f, std::size_t rows, std::size_t cols, Visit visit) {
  Matrix m(f, rows, cols);
  const std::size_t cells = rows * cols;
  while (true) {
    visit(m);
    std::size_t i = 0;
    for (; i < cells; ++i) {
      Elem& e = m.at(i / cols, i % cols);
      if (e.code + 1 < f->q()) {
        e.code += 1;
        break;
      }
      e.code = 0;
    }
    if (i == cells) return;
  }
}

/// All q^n vectors.
inline std::vector<Vec> all_vectors(FieldPtr f, std::size_t n) {
  std::vector<Vec> out;
  Vec v(n, Elem{});
  while (true) {
    out.push_back(v);
    std::size_t i = 0;
    for (; i < n; ++i) {
      if (v[i].code + 1 < f->q()) {
        v[i].code += 1;
        break;
      }
      v[i].code = 0;
    }
    if (i == n) return out;
  }
}

/// Rank from the kernel size: q^(n - rank) vectors v with M v = 0.
inline std::size_t rank_by_kernel_count(const Matrix& m) {
  std::size_t kernel = 0;
  for (const auto& v : all_vectors(m.field(), m.cols())) {
    const Vec w = m.apply(v);
    if (std::all_of(w.begin(), w.end(), [](Elem e) { return e.is_zero(); })) ++kernel;
  }
  std::size_t nullity = 0;
  for (std::size_t k = 1; k < kernel; k *= m.F().q()) ++nullity;
  return m.cols() - nullity;
}

/// Determinant by the Leibniz formula.
inline Elem leibniz_det(const Matrix& m) {
  const Field& f = m.F();
  const std::size_t n = m.rows();
  std::vector<std::uint32_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = std::uint32_t(i);
  Elem total{};
  do {
    Elem term = f.one();
    for (std::size_t i = 0; i < n; ++i) term = f.mul(term, m(i, perm[i]));
    if (Permutation(perm).sign() < 0) term = f.neg(term);
    total = f.add(total, term);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// min over alpha != 0 of rank(g - alpha h), each rank by kernel counting.
inline std::size_t min_rank_shift_bruteforce(const Matrix& g, const Matrix& h) {
  std::size_t best = g.rows();
  for (auto a : g.F().enumerate_nonzero()) best = std::min(best, rank_by_kernel_count(g - h.scaled(a)));
  return best;
}

/// Number of invertible matrices T with T x = x T, over all q^(n^2) matrices.
inline std::uint64_t centralizer_order_bruteforce(const Matrix& x) {
  std::uint64_t count = 0;
  for_each_matrix(x.field(), x.rows(), x.cols(), [&](const Matrix& t) {
    if (t * x == x * t && !leibniz_det(t).is_zero()) ++count;
  });
  return count;
}

/// Conjugacy class of sigma by conjugating with every element of the group.
inline std::size_t class_size_bruteforce(const Permutation& sigma, const std::vector<Permutation>& group) {
  std::set<Permutation> seen;
  for (const auto& t : group) seen.insert(t * sigma * perm_inverse(t));
  return seen.size();
}

inline std::size_t centralizer_bruteforce(const Permutation& sigma, const std::vector<Permutation>& group) {
  std::size_t c = 0;
  for (const auto& t : group)
    if (t * sigma == sigma * t) ++c;
  return c;
}

/// Conjugacy class of x inside an explicitly listed matrix group, modulo
/// scalars when `projective`.
inline std::size_t class_size_bruteforce(const Matrix& x, const std::vector<Matrix>& group, bool projective) {
  std::set<std::vector<Elem>> seen;
  for (const auto& t : group) {
    Matrix c = t * x * invert(t);
    if (projective) c = projective_normal_form(c);
    seen.insert(c.entries());
  }
  return seen.size();
}

/// Number of points moved, counted directly.
inline std::size_t moved_points(const Permutation& a, const Permutation& b) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.degree(); ++i) c += a[i] != b[i];
  return c;
}

}  // namespace oracle
