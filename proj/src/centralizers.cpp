#include "msglab/centralizers.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace msglab {

namespace {

Matrix evaluate_at(const Poly& f, const Matrix& x) {
  Matrix acc(x.field(), x.rows(), x.cols());
  for (std::size_t i = f.coeffs().size(); i-- > 0;)
    acc = acc * x + Matrix::scalar(x.field(), x.rows(), f.coeffs()[i]);
  return acc;
}

Matrix block_diag(const Matrix& a, const Matrix& d) {
  Matrix m(a.field(), a.rows() + d.rows(), a.cols() + d.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m.at(i, j) = a(i, j);
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j) m.at(a.rows() + i, a.cols() + j) = d(i, j);
  return m;
}

BigInt power(std::uint64_t base, std::size_t exp) { return boost::multiprecision::pow(BigInt(base), unsigned(exp)); }

}  // namespace

std::string to_string(CentralizerFactor::Kind k) {
  switch (k) {
    case CentralizerFactor::Kind::GLBlock: return "GL";
    case CentralizerFactor::Kind::WreathBlock: return "wreath";
    case CentralizerFactor::Kind::SymmetricBlock: return "sym";
    case CentralizerFactor::Kind::AbelianPCore: return "pcore";
  }
  return "?";
}

std::size_t CentralizerDescriptor::count(CentralizerFactor::Kind k) const {
  std::size_t c = 0;
  for (const auto& f : factors)
    if (f.kind == k) ++c;
  return c;
}

std::string CentralizerDescriptor::format() const {
  std::ostringstream os;
  for (const auto& f : factors) os << to_string(f.kind) << ' ' << f.dim << ' ' << f.ext_degree << ' ' << f.order << '\n';
  os << "total " << total_order << '\n';
  os << "p_core " << p_core_order << '\n';
  return os.str();
}

Matrix companion_matrix(const Poly& f) {
  const Poly m = f.monic();
  const std::size_t d = std::size_t(m.degree());
  const Field& F = *m.field();
  Matrix c(m.field(), d, d);
  for (std::size_t i = 1; i < d; ++i) c.at(i, i - 1) = F.one();
  for (std::size_t i = 0; i < d; ++i) c.at(i, d - 1) = F.neg(m[i]);
  return c;
}

CentralizerDescriptor centralizer_factorization(const Matrix& x, const SplitDecomposition& dec) {
  const auto& f = x.field();
  if (dec.k % f->p() == 0) throw std::invalid_argument("k must be prime to the characteristic");
  if (!satisfies_split_condition(x, dec)) throw std::invalid_argument("x does not satisfy the split condition");
  const std::size_t n = x.rows();

  auto irreducibles = factor_squarefree(Poly::binomial(f, dec.k, dec.alpha));
  const Poly t_minus_1 = Poly::binomial(f, 1, f->one());
  if (dec.dim_S() > 0 && std::find(irreducibles.begin(), irreducibles.end(), t_minus_1) == irreducibles.end())
    irreducibles.push_back(t_minus_1);

  CentralizerDescriptor out;
  std::size_t covered = 0;
  for (const auto& g : irreducibles) {
    const std::size_t kernel_dim = n - rank(evaluate_at(g, x));
    if (kernel_dim == 0) continue;
    const std::size_t deg = std::size_t(g.degree());
    if (kernel_dim % deg != 0) throw std::logic_error("kernel dimension is not a multiple of the factor degree");
    CentralizerFactor fac;
    fac.kind = CentralizerFactor::Kind::GLBlock;
    fac.dim = kernel_dim / deg;
    fac.ext_degree = deg;
    fac.order = gl_order(fac.dim, std::uint64_t(boost::multiprecision::pow(BigInt(f->q()), unsigned(deg))));
    out.total_order *= fac.order;
    out.factors.push_back(fac);
    covered += kernel_dim;
  }
  if (covered != n) throw std::logic_error("primary components do not cover the space");
  return out;
}

BigInt brute_force_centralizer_order(const Matrix& x, std::uint64_t budget) {
  std::uint64_t count = 0;
  for_each_in_span(commutant_basis(x), Matrix(x.field(), x.rows(), x.cols()), budget, [&](const Matrix& m) {
    if (!det(m).is_zero()) ++count;
    return true;
  });
  return count;
}

BigInt perm_centralizer_order(const Permutation& sigma) { return perm_centralizer_structure(sigma).total_order; }

CentralizerDescriptor perm_centralizer_structure(const Permutation& sigma) {
  std::map<std::size_t, std::size_t> mult;
  for (auto len : cycle_type(sigma)) ++mult[len];
  CentralizerDescriptor out;
  const std::uint64_t order = sigma.order();
  const bool prime = order > 1 && is_prime(order);

  auto add = [&](std::size_t len, std::size_t m) {
    CentralizerFactor fac;
    fac.kind = len == 1 ? CentralizerFactor::Kind::SymmetricBlock : CentralizerFactor::Kind::WreathBlock;
    fac.dim = len * m;
    fac.ext_degree = len;
    fac.multiplicity = m;
    fac.order = power(len, m) * factorial(m);
    out.total_order *= fac.order;
    out.factors.push_back(fac);
  };
  // Largest cycles first, fixed points last.
  for (auto it = mult.rbegin(); it != mult.rend(); ++it)
    if (it->first != 1) add(it->first, it->second);
  if (mult.count(1)) add(1, mult[1]);
  if (prime) out.p_core_order = power(order, mult[std::size_t(order)]);
  return out;
}

PrimeOrderShape prime_order_shape(const Permutation& sigma) {
  const std::uint64_t p = sigma.order();
  if (p < 2 || !is_prime(p)) throw UnsupportedCase("permutation does not have prime order");
  std::size_t mp = 0, fixed = 0;
  for (auto len : cycle_type(sigma)) {
    if (len == p) ++mp;
    if (len == 1) ++fixed;
  }
  PrimeOrderShape s;
  s.p = p;
  s.m_order = power(p, mp);
  s.t1_order = factorial(mp);
  s.t2_order = factorial(fixed);
  s.t2_trivial = fixed <= 1;
  return s;
}

Matrix semisimple_prime_order_element(FieldPtr f, std::size_t n, std::uint64_t p) {
  if (!is_prime(p) || p == f->p()) throw std::invalid_argument("p must be a prime different from the characteristic");
  // (T^p - 1) / (T - 1) = 1 + T + ... + T^{p-1}
  std::vector<Elem> c(p, f->one());
  const auto factors = factor_squarefree(Poly(f, std::move(c)));
  const Poly& g = factors.front();
  if (std::size_t(g.degree()) > n) throw UnsupportedCase("no element of this prime order in GL_n(q)");
  const Matrix comp = companion_matrix(g);
  return block_diag(comp, Matrix::identity(f, n - comp.rows()));
}

Fingerprint characteristic_fingerprint(const Matrix& x, bool sp_form, std::uint64_t enumerate_budget) {
  const auto& f = x.field();
  const std::size_t n2 = x.rows();
  Fingerprint fp;

  if (n2 % 2 == 0 && n2 >= 4 && is_upper_unipotent(x, false) && x == upper_unipotent(Matrix::identity(f, n2 / 2))) {
    const std::size_t n = n2 / 2;
    fp.p = f->p();
    fp.has_large_p_core = true;
    fp.family = sp_form ? "niceblock-Sp" : "niceblock-SL";
    const auto cert = build_niceblock(n, f, sp_form ? NiceblockGroup::Sp : NiceblockGroup::SL);
    fp.p_core_order = cert.p_core_order;
    if (cert.p_core_order <= enumerate_budget) {
      const auto a_group = generate_group(cert.A_generators, std::size_t(enumerate_budget));
      if (BigInt(a_group.size()) != cert.p_core_order) throw std::logic_error("A-group enumeration disagrees");
    }
    CentralizerFactor core;
    core.kind = CentralizerFactor::Kind::AbelianPCore;
    core.dim = sp_form ? n * (n + 1) / 2 : n * n;
    core.order = cert.p_core_order;
    fp.reductive_part.p_core_order = cert.p_core_order;
    if (!sp_form) {
      // {P : det(P)^2 = 1}, embedded as diag(P, P).
      CentralizerFactor red;
      red.kind = CentralizerFactor::Kind::GLBlock;
      red.dim = n;
      red.order = sl_order(n, f->q()) * (f->p() == 2 ? 1 : 2);
      fp.reductive_part.factors.push_back(red);
      fp.reductive_part.total_order = red.order;
    }
    return fp;
  }

  // Semisimple case: x^p = 1 for a prime p != char.
  std::uint64_t p = 0;
  for (std::uint64_t r = 2; r <= 1000; ++r) {
    if (!is_prime(r)) continue;
    if (matpow(x, std::int64_t(r)).is_identity()) {
      p = r;
      break;
    }
  }
  if (x.is_identity() || p == 0) throw UnsupportedCase("matrix is neither the block unipotent element nor of prime order");
  if (p == f->p()) throw UnsupportedCase("unipotent element outside the supported family");
  const NearRoot root = prepare_near_root(x, p, f->one());
  fp.p = p;
  fp.has_large_p_core = false;
  fp.family = "semisimple";
  fp.reductive_part = centralizer_factorization(root.x, root.dec);
  fp.p_core_order = 1;
  return fp;
}

Fingerprint characteristic_fingerprint(const Permutation& sigma) {
  const auto shape = prime_order_shape(sigma);
  Fingerprint fp;
  fp.p = shape.p;
  fp.family = "permutation";
  fp.p_core_order = shape.m_order;
  fp.has_large_p_core = shape.m_order > 1;
  fp.reductive_part = perm_centralizer_structure(sigma);
  return fp;
}

}  // namespace msglab
