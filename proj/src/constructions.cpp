#include "msglab/constructions.hpp"

#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace msglab {

namespace {

Matrix block(const Matrix& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  Matrix out(m.field(), rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = m(r0 + i, c0 + j);
  return out;
}

void put(Matrix& m, const Matrix& b, std::size_t r0, std::size_t c0) {
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m.at(r0 + i, c0 + j) = b(i, j);
}

Matrix block_diag(const Matrix& a, const Matrix& d) {
  Matrix m(a.field(), a.rows() + d.rows(), a.cols() + d.cols());
  put(m, a, 0, 0);
  put(m, d, a.rows(), a.cols());
  return m;
}

// Coordinates of the columns of `m` in the basis given by the columns of
// `basis` (which must span them).
Matrix coordinates(const Matrix& basis, const Matrix& m) {
  Matrix out(m.field(), basis.cols(), m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j) {
    auto c = solve(basis, m.column(j));
    if (!c) throw std::logic_error("vector outside the expected subspace");
    for (std::size_t i = 0; i < basis.cols(); ++i) out.at(i, j) = (*c)[i];
  }
  return out;
}

// Projection onto span(sub) along the standard-basis completion.
Matrix projection_onto(const FieldPtr& f, std::size_t n, const std::vector<Vec>& sub) {
  std::vector<Vec> cols = sub;
  const auto extra = complete_basis(f, n, sub);
  cols.insert(cols.end(), extra.begin(), extra.end());
  const Matrix q = Matrix::from_columns(f, n, cols);
  Matrix keep(f, n, n);
  for (std::size_t i = 0; i < sub.size(); ++i) keep.at(i, i) = f->one();
  return q * keep * invert(q);
}

// (1/order) sum_j x^-j m x^j, where x^order is scalar and order is prime to p.
Matrix average_conjugates(const Matrix& x, const Matrix& m, std::uint64_t order) {
  const Field& f = x.F();
  const Matrix xi = invert(x);
  Matrix acc(x.field(), m.rows(), m.cols());
  Matrix term = m;
  for (std::uint64_t j = 0; j < order; ++j) {
    acc = acc + term;
    term = xi * term * x;
  }
  return acc.scaled(f.inv(f.from_int(std::int64_t(order % f.p()))));
}

// Invertible matrix in the commutant of a semisimple `x` with x^order scalar
// and order prime to p, differing from `a` (which commutes with x) in rank nullity(a).
Matrix repair_in_commutant(const Matrix& x, const Matrix& a, std::uint64_t order, Rng& rng) {
  const auto& f = a.field();
  const std::size_t n = a.rows();
  const auto kernel = kernel_basis(a);
  if (kernel.empty()) return a;
  const auto image = column_space_basis(a);

  // Equivariant projections; W = ker(projection onto Im a) complements Im a.
  const Matrix pi_image = average_conjugates(x, projection_onto(f, n, image), order);
  const Matrix pi_kernel = average_conjugates(x, projection_onto(f, n, kernel), order);
  const auto w_vectors = kernel_basis(pi_image);
  if (w_vectors.size() != kernel.size()) throw std::logic_error("invariant complement has wrong dimension");

  const Matrix nb = Matrix::from_columns(f, n, kernel);
  const Matrix wb = Matrix::from_columns(f, n, w_vectors);
  const Matrix x_n = coordinates(nb, x * nb);
  const Matrix x_w = coordinates(wb, x * wb);
  const Matrix r = coordinates(nb, pi_kernel);
  const auto hom = intertwiner_basis(x_w, x_n);

  for (std::size_t attempt = 0; attempt < 4096; ++attempt) {
    Matrix theta(f, w_vectors.size(), kernel.size());
    if (attempt < hom.size()) {
      theta = hom[attempt];
    } else {
      for (const auto& h : hom) theta = theta + h.scaled(Elem{std::uint32_t(uniform_below(rng, f->q()))});
    }
    if (!is_invertible(theta)) continue;
    return a + wb * theta * r;
  }
  throw std::logic_error("no invertible intertwiner found");
}

std::string reproducer(const Matrix& x, const SplitDecomposition& dec, const Matrix& phi, std::size_t achieved,
                       std::size_t bound) {
  std::ostringstream os;
  os << "field=" << x.F().to_string() << " k=" << dec.k << " alpha=" << x.F().format(dec.alpha)
     << " dimS=" << dec.dim_S() << "\nx=" << format_matrix(x) << "\nphi=" << format_matrix(phi)
     << "\nachieved=" << achieved << " bound=" << bound;
  return os.str();
}

}  // namespace

Matrix SplitDecomposition::basis_matrix(FieldPtr f) const {
  std::vector<Vec> cols = L_basis;
  cols.insert(cols.end(), S_basis.begin(), S_basis.end());
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  return Matrix::from_columns(std::move(f), n, cols);
}

bool satisfies_split_condition(const Matrix& x, const SplitDecomposition& dec) {
  const std::size_t n = x.rows();
  if (dec.dim_L() + dec.dim_S() != n) return false;
  const Matrix p = dec.basis_matrix(x.field());
  const auto pinv = try_invert(p);
  if (!pinv) return false;
  const Matrix xp = *pinv * x * p;
  const std::size_t l = dec.dim_L();
  if (!block(xp, 0, l, l, n - l).is_zero() || !block(xp, l, 0, n - l, l).is_zero()) return false;
  if (!block(xp, l, l, n - l, n - l).is_identity()) return false;
  const Matrix xl = block(xp, 0, 0, l, l);
  return matpow(xl, std::int64_t(dec.k)) == Matrix::scalar(x.field(), l, dec.alpha);
}

NearRoot prepare_near_root(const Matrix& y, std::uint64_t k, Elem alpha) {
  const auto& f = y.field();
  if (!y.square()) throw std::invalid_argument("y must be square");
  if (k == 0 || k % f->p() == 0) throw std::invalid_argument("k must be positive and prime to the characteristic");
  if (alpha.is_zero() || !f->valid(alpha)) throw std::invalid_argument("alpha must be a nonzero field element");
  if (!is_invertible(y)) throw std::invalid_argument("y must be invertible");
  const std::size_t n = y.rows();

  const Matrix defect = matpow(y, std::int64_t(k)) - Matrix::scalar(f, n, alpha);
  SplitDecomposition dec;
  dec.k = k;
  dec.alpha = alpha;
  dec.L_basis = kernel_basis(defect);
  dec.S_basis = complete_basis(f, n, dec.L_basis);

  std::vector<Vec> images;
  for (const auto& v : dec.L_basis) images.push_back(y.apply(v));
  images.insert(images.end(), dec.S_basis.begin(), dec.S_basis.end());
  const Matrix x = Matrix::from_columns(f, n, images) * invert(dec.basis_matrix(f));

  NearRoot out{x, dec, rank(defect), rank(x - y)};
  return out;
}

Matrix nearest_invertible(const Matrix& m) {
  const auto& f = m.field();
  const std::size_t n = m.rows();
  const auto kernel = kernel_basis(m);
  if (kernel.empty()) return m;
  const auto image = column_space_basis(m);
  const auto w = complete_basis(f, n, image);
  // Dual functionals to the kernel basis vanishing on its completion.
  std::vector<Vec> cols = kernel;
  const auto rest = complete_basis(f, n, kernel);
  cols.insert(cols.end(), rest.begin(), rest.end());
  const Matrix qinv = invert(Matrix::from_columns(f, n, cols));
  Matrix dual(f, kernel.size(), n);
  for (std::size_t i = 0; i < kernel.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) dual.at(i, j) = qinv(i, j);
  return m + Matrix::from_columns(f, n, w) * dual;
}

CentralizeResult approx_centralize(const Matrix& x, const SplitDecomposition& dec, const Matrix& phi,
                                   std::uint64_t seed) {
  const auto& f = x.field();
  if (dec.k % f->p() == 0) throw std::invalid_argument("k must be prime to the characteristic");
  if (!is_invertible(phi)) throw std::invalid_argument("phi must be invertible");
  if (!satisfies_split_condition(x, dec)) throw std::invalid_argument("x does not satisfy the split condition");

  CentralizeResult res;
  res.commutator_rank = rank(x * phi - phi * x);
  res.bound = 2 * std::size_t(dec.k * dec.k) * res.commutator_rank + 3 * dec.dim_S();
  if (res.commutator_rank == 0) {
    res.psi = phi;
    return res;
  }

  const std::size_t l = dec.dim_L(), s = dec.dim_S();
  const Matrix p = dec.basis_matrix(f);
  const Matrix pinv = invert(p);
  const Matrix phi_b = pinv * phi * p;
  const Matrix x_l = block(pinv * x * p, 0, 0, l, l);

  Matrix a_block(f, l, l);
  if (l > 0) {
    const Matrix a = block(phi_b, 0, 0, l, l);
    // Conjugation by x|_L has order dividing k on End(L) since x|_L^k is scalar.
    const Matrix averaged = average_conjugates(x_l, a, dec.k);
    Rng rng(seed);
    a_block = repair_in_commutant(x_l, averaged, dec.k, rng);
  }
  const Matrix d_block = nearest_invertible(block(phi_b, l, l, s, s));
  const Matrix psi = p * block_diag(a_block, d_block) * pinv;

  res.psi = psi;
  res.distance_rank = rank(phi - psi);
  if (!(x * psi == psi * x) || !is_invertible(psi) || res.distance_rank > res.bound) {
    throw BoundViolation("centralizing construction missed its contract",
                         reproducer(x, dec, phi, res.distance_rank, res.bound));
  }
  return res;
}

std::string to_string(NiceblockGroup g) { return g == NiceblockGroup::SL ? "SL" : "Sp"; }

Matrix upper_unipotent(const Matrix& b) {
  const std::size_t n = b.rows();
  Matrix m = Matrix::identity(b.field(), 2 * n);
  put(m, b, 0, n);
  return m;
}

bool is_upper_unipotent(const Matrix& m, bool symmetric_block) {
  if (!m.square() || m.rows() % 2) return false;
  const std::size_t n = m.rows() / 2;
  if (!block(m, 0, 0, n, n).is_identity() || !block(m, n, n, n, n).is_identity() || !block(m, n, 0, n, n).is_zero())
    return false;
  if (!symmetric_block) return true;
  const Matrix b = block(m, 0, n, n, n);
  return b == b.transpose();
}

namespace {

Matrix cyclic_shift(const FieldPtr& f, std::size_t n) {
  Matrix a(f, n, n);
  for (std::size_t i = 0; i < n; ++i) a.at((i + 1) % n, i) = f->one();
  return a;
}

Matrix permutation_matrix(const FieldPtr& f, const Permutation& s) {
  Matrix a(f, s.degree(), s.degree());
  for (std::size_t i = 0; i < s.degree(); ++i) a.at(s[i], i) = f->one();
  return a;
}

Rational pr_length(const Matrix& m) {
  return projective_rank_distance(m, Matrix::identity(m.field(), m.rows()));
}

// Powers t^i of the field generator, an additive basis of GF(q) over GF(p).
std::vector<Elem> additive_basis(const Field& f) {
  std::vector<Elem> out;
  for (std::uint32_t i = 0, code = 1; i < f.e(); ++i, code *= f.p()) out.push_back(Elem{code});
  return out;
}

}  // namespace

NiceblockCertificate build_niceblock(std::size_t n, FieldPtr f, NiceblockGroup group, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("niceblock needs n >= 2");
  const bool sp = group == NiceblockGroup::Sp;
  const Matrix id = Matrix::identity(f, n);
  const Matrix form = standard_symplectic_form(f, 2 * n);
  const Matrix xm = upper_unipotent(id);

  std::vector<Matrix> a_gens;
  for (auto c : additive_basis(*f)) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = sp ? i : 0; j < n; ++j) {
        Matrix b(f, n, n);
        b.at(i, j) = c;
        if (sp) b.at(j, i) = c;
        a_gens.push_back(upper_unipotent(b));
      }
    }
  }

  std::vector<Matrix> h_gens;
  if (!sp) {
    for (auto c : additive_basis(*f)) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i == j) continue;
          Matrix t = id;
          t.at(i, j) = c;
          h_gens.push_back(block_diag(t, t));
        }
      }
    }
  } else {
    // Monomial orthogonal matrices: a transposition, an n-cycle.
    const Matrix tr = permutation_matrix(f, Permutation::from_cycles(n, {{0, 1}}));
    h_gens.push_back(block_diag(tr, tr));
    const Matrix cyc = cyclic_shift(f, n);
    h_gens.push_back(block_diag(cyc, cyc));
  }
  if (f->p() != 2) {
    Matrix d = id;
    d.at(0, 0) = f->neg(f->one());
    h_gens.push_back(block_diag(d, d));
  }

  const Matrix shift = cyclic_shift(f, n);
  const Rational target = Rational(1, 3) * (Rational(1) - Rational(2, std::int64_t(n)));

  auto commutator_of = [&](const Matrix& b, const Matrix& a) {
    const Matrix u = upper_unipotent(b);
    const Matrix h = block_diag(a, a);
    return std::tuple{u, h, invert(u) * invert(h) * u * h};
  };

  Matrix cu, ch, cc;
  bool searched = false;
  if (f->q() > n) {
    std::vector<Elem> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = Elem{std::uint32_t(i)};
    std::tie(cu, ch, cc) = commutator_of(Matrix::diagonal(f, d), shift);
  } else {
    searched = true;
    Rng rng(seed);
    bool found = false;
    for (int trial = 0; trial < 10000 && !found; ++trial) {
      const Matrix a = trial == 0 ? shift : permutation_matrix(f, random_perm(n, rng));
      Matrix b = random_matrix(f, n, n, rng);
      if (sp) b = b + b.transpose();
      std::tie(cu, ch, cc) = commutator_of(b, a);
      found = pr_length(cc) >= target;
    }
    if (!found) throw std::runtime_error("no commutator witness reached the length target");
  }

  const BigInt q = f->q();
  const unsigned exponent = unsigned(sp ? n * (n + 1) / 2 : n * n);
  NiceblockCertificate cert{
      .group = group,
      .n = n,
      .x = sp ? ClassicalElement(xm, GroupTag::Sp, form) : ClassicalElement(xm, GroupTag::SL),
      .A_generators = std::move(a_gens),
      .H_generators = std::move(h_gens),
      .witness_u = xm,
      .witness_h = block_diag(shift, shift),
      .witness_u_length = pr_length(xm),
      .witness_h_length = pr_length(block_diag(shift, shift)),
      .commutator_u = cu,
      .commutator_h = ch,
      .commutator = cc,
      .commutator_length = pr_length(cc),
      .commutator_target = target,
      .x_length = pr_length(xm),
      .p_core_order = boost::multiprecision::pow(q, exponent),
      .used_search = searched,
  };
  return cert;
}

std::vector<std::string> verify_niceblock(const NiceblockCertificate& c) {
  std::vector<std::string> bad;
  const Matrix& x = c.x.matrix();
  const auto& f = x.field();
  const bool sp = c.group == NiceblockGroup::Sp;
  const Matrix form = standard_symplectic_form(f, 2 * c.n);
  if (!matpow(x, f->p()).is_identity() || x.is_identity()) bad.push_back("x does not have order p");
  if (pr_length(x) != Rational(1, 2)) bad.push_back("length of x is not 1/2");
  for (const auto& a : c.A_generators) {
    if (!is_upper_unipotent(a, sp)) bad.push_back("A-generator outside A");
    if (!matpow(a, f->p()).is_identity()) bad.push_back("A-generator order does not divide p");
    if (!(a * x == x * a)) bad.push_back("A-generator does not commute with x");
    for (const auto& b : c.A_generators)
      if (!(a * b == b * a)) {
        bad.push_back("A-generators do not commute");
        break;
      }
  }
  for (const auto& h : c.H_generators) {
    if (!(h * x == x * h)) bad.push_back("H-generator does not commute with x");
    if (det(h) != f->one()) bad.push_back("H-generator has determinant != 1");
    if (sp && !preserves_form(h, form)) bad.push_back("H-generator is not symplectic");
    for (const auto& a : c.A_generators)
      if (!is_upper_unipotent(invert(h) * a * h, sp)) {
        bad.push_back("A is not normalized by H");
        break;
      }
  }
  if (c.witness_u_length < Rational(1, 2)) bad.push_back("witness u shorter than 1/2");
  if (c.witness_h_length < Rational(1, 2)) bad.push_back("witness h shorter than 1/2");
  if (!(c.commutator == invert(c.commutator_u) * invert(c.commutator_h) * c.commutator_u * c.commutator_h))
    bad.push_back("commutator does not match its factors");
  if (!is_upper_unipotent(c.commutator_u, sp)) bad.push_back("commutator u outside A");
  if (!(c.commutator_h * x == x * c.commutator_h)) bad.push_back("commutator h outside the centralizer");
  if (c.commutator_length < c.commutator_target) bad.push_back("commutator shorter than target");
  if (sp) {
    for (const Matrix* m : {&x, &c.witness_u, &c.witness_h, &c.commutator_u, &c.commutator_h})
      if (!preserves_form(*m, form)) bad.push_back("certificate element is not symplectic");
  }
  return bad;
}

SlProjection project_to_sl(const Matrix& g) {
  const auto& f = g.field();
  const Elem d = det(g);
  if (d.is_zero()) throw std::invalid_argument("g must be invertible");
  Matrix out = g;
  const Elem s = f->inv(d);
  for (std::size_t i = 0; i < g.rows(); ++i) out.at(i, 0) = f->mul(g(i, 0), s);
  SlProjection res;
  res.rank_difference = rank(g - out);
  res.distance = projective_rank_distance(g, out);
  res.projected = std::move(out);
  return res;
}

std::vector<Matrix> generate_group(const std::vector<Matrix>& gens, std::size_t budget) {
  if (gens.empty()) return {};
  const Matrix id = Matrix::identity(gens.front().field(), gens.front().rows());
  std::unordered_set<Matrix, MatrixHash> seen{id};
  std::vector<Matrix> out{id};
  std::deque<Matrix> queue{id};
  while (!queue.empty()) {
    const Matrix g = queue.front();
    queue.pop_front();
    for (const auto& s : gens) {
      Matrix h = g * s;
      if (seen.insert(h).second) {
        if (out.size() >= budget) throw BudgetError("generated group exceeds budget");
        out.push_back(h);
        queue.push_back(std::move(h));
      }
    }
  }
  return out;
}

}  // namespace msglab
