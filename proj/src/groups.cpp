#include "msglab/groups.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace msglab {

Permutation::Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto v : images_) {
    if (v >= images_.size() || seen[v]) throw std::invalid_argument("image list is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  return Permutation(std::move(img));
}

Permutation Permutation::from_cycles(std::size_t n, const std::vector<std::vector<std::uint32_t>>& cycles) {
  Permutation result = identity(n);
  for (const auto& c : cycles) {
    std::vector<std::uint32_t> img(n);
    std::iota(img.begin(), img.end(), 0u);
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] >= n) throw std::invalid_argument("cycle point out of range");
      img[c[i]] = c[(i + 1) % c.size()];
    }
    result = perm_compose(result, Permutation(std::move(img)));
  }
  return result;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

int Permutation::sign() const {
  std::size_t even_cycles = 0;
  for (auto len : cycle_type(*this))
    if (len % 2 == 0) ++even_cycles;
  return even_cycles % 2 == 0 ? 1 : -1;
}

std::vector<std::vector<std::uint32_t>> Permutation::cycles() const {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<bool> seen(images_.size(), false);
  for (std::uint32_t s = 0; s < images_.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::uint32_t> c;
    for (std::uint32_t x = s; !seen[x]; x = images_[x]) {
      seen[x] = true;
      c.push_back(x);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<std::uint32_t> Permutation::support() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) out.push_back(i);
  return out;
}

std::uint64_t Permutation::order() const {
  std::uint64_t o = 1;
  for (auto len : cycle_type(*this)) o = std::lcm(o, std::uint64_t(len));
  return o;
}

Permutation perm_compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.degree() != tau.degree()) throw std::invalid_argument("degree mismatch");
  std::vector<std::uint32_t> img(sigma.degree());
  for (std::size_t i = 0; i < img.size(); ++i) img[i] = sigma[tau[i]];
  return Permutation(std::move(img));
}

Permutation perm_inverse(const Permutation& sigma) {
  std::vector<std::uint32_t> img(sigma.degree());
  for (std::uint32_t i = 0; i < img.size(); ++i) img[sigma[i]] = i;
  return Permutation(std::move(img));
}

std::vector<std::size_t> cycle_type(const Permutation& sigma) {
  std::vector<std::size_t> out;
  std::vector<bool> seen(sigma.degree(), false);
  for (std::uint32_t s = 0; s < sigma.degree(); ++s) {
    if (seen[s]) continue;
    std::size_t len = 0;
    for (std::uint32_t x = s; !seen[x]; x = sigma[x]) {
      seen[x] = true;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<std::uint32_t> support(const Permutation& sigma) { return sigma.support(); }

namespace {

// "n:(0 1 2)(3 4)": cycles of points below n, applied right to left.
Permutation parse_cycle_notation(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("cycle notation needs a degree prefix 'n:'");
  const std::size_t n = std::stoul(text.substr(0, colon));
  std::vector<std::vector<std::uint32_t>> cycles;
  std::size_t pos = colon + 1;
  while ((pos = text.find('(', pos)) != std::string::npos) {
    const auto close = text.find(')', pos);
    if (close == std::string::npos) throw std::invalid_argument("unbalanced cycle in '" + text + "'");
    std::stringstream ss(text.substr(pos + 1, close - pos - 1));
    std::vector<std::uint32_t> cycle;
    std::string tok;
    while (ss >> tok) {
      if (tok.back() == ',') tok.pop_back();
      if (tok.empty()) continue;
      cycle.push_back(std::uint32_t(std::stoul(tok)));
    }
    cycles.push_back(std::move(cycle));
    pos = close + 1;
  }
  return Permutation::from_cycles(n, cycles);
}

}  // namespace

Permutation parse_permutation(const std::string& text) {
  if (text.find('(') != std::string::npos) return parse_cycle_notation(text);
  std::vector<std::uint32_t> img;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      img.push_back(std::uint32_t(std::stoul(part)));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad permutation entry '" + part + "'");
    }
  }
  return Permutation(std::move(img));
}

std::string format_permutation(const Permutation& sigma) {
  std::ostringstream os;
  for (std::size_t i = 0; i < sigma.degree(); ++i) os << (i ? "," : "") << sigma[i];
  return os.str();
}

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(index), std::uint32_t(index >> 32)};
  return Rng(seq);
}

Permutation random_perm(std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  for (std::size_t i = n; i > 1; --i) std::swap(img[i - 1], img[uniform_below(rng, i)]);
  return Permutation(std::move(img));
}

Permutation random_even_perm(std::size_t n, Rng& rng) {
  if (n < 3) throw std::invalid_argument("random_even_perm needs n >= 3");
  Permutation s = random_perm(n, rng);
  if (!s.is_even()) s = perm_compose(s, Permutation::from_cycles(n, {{0, 1}}));
  return s;
}

Permutation random_even_perm(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  return random_even_perm(n, rng);
}

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::GL: return "GL";
    case GroupTag::SL: return "SL";
    case GroupTag::Sp: return "Sp";
    case GroupTag::PSL_REP: return "PSL";
  }
  return "?";
}

GroupTag parse_group_tag(const std::string& s) {
  if (s == "GL") return GroupTag::GL;
  if (s == "SL") return GroupTag::SL;
  if (s == "Sp") return GroupTag::Sp;
  if (s == "PSL" || s == "PSL_REP") return GroupTag::PSL_REP;
  throw std::invalid_argument("unknown group tag '" + s + "'");
}

Matrix standard_symplectic_form(FieldPtr f, std::size_t n2) {
  if (n2 % 2 != 0) throw std::invalid_argument("symplectic dimension must be even");
  const std::size_t m = n2 / 2;
  Matrix j(f, n2, n2);
  for (std::size_t i = 0; i < m; ++i) {
    j.at(i, m + i) = f->one();
    j.at(m + i, i) = f->neg(f->one());
  }
  return j;
}

bool is_alternating_form(const Matrix& j) {
  if (!j.square()) return false;
  const Field& f = j.F();
  for (std::size_t i = 0; i < j.rows(); ++i) {
    if (!j(i, i).is_zero()) return false;
    for (std::size_t k = 0; k < j.cols(); ++k)
      if (j(i, k) != f.neg(j(k, i))) return false;
  }
  return is_invertible(j);
}

bool preserves_form(const Matrix& g, const Matrix& j) { return g.transpose() * j * g == j; }

ClassicalElement::ClassicalElement(Matrix m, GroupTag tag, std::optional<Matrix> form)
    : m_(std::move(m)), tag_(tag), form_(std::move(form)) {
  if (!is_invertible(m_)) throw std::invalid_argument("group element must be invertible");
  switch (tag_) {
    case GroupTag::GL:
    case GroupTag::PSL_REP: break;
    case GroupTag::SL:
      if (det(m_) != m_.F().one()) throw std::invalid_argument("SL element must have determinant 1");
      break;
    case GroupTag::Sp:
      if (!form_) form_ = standard_symplectic_form(m_.field(), m_.rows());
      if (!is_alternating_form(*form_)) throw std::invalid_argument("form is not a nondegenerate alternating form");
      if (!preserves_form(m_, *form_)) throw std::invalid_argument("matrix does not preserve the symplectic form");
      break;
  }
}

bool ClassicalElement::equals(const ClassicalElement& other) const {
  if (tag_ == GroupTag::PSL_REP || other.tag_ == GroupTag::PSL_REP) return projectively_equal(m_, other.m_);
  return m_ == other.m_;
}

bool projectively_equal(const Matrix& g, const Matrix& h) {
  if (g.rows() != h.rows() || g.cols() != h.cols()) return false;
  require_same_field(g.F(), h.F());
  return projective_normal_form(g) == projective_normal_form(h);
}

Matrix projective_normal_form(const Matrix& g) {
  for (auto e : g.entries())
    if (!e.is_zero()) return g.scaled(g.F().inv(e));
  return g;
}

Matrix random_matrix(FieldPtr f, std::size_t rows, std::size_t cols, Rng& rng) {
  std::vector<Elem> e(rows * cols);
  for (auto& x : e) x = Elem{std::uint32_t(uniform_below(rng, f->q()))};
  return Matrix(std::move(f), rows, cols, std::move(e));
}

Matrix random_invertible(FieldPtr f, std::size_t n, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(f, n, n, rng);
    if (is_invertible(m)) return m;
  }
}

ClassicalElement random_sl(std::size_t n, FieldPtr f, Rng& rng) {
  if (n < 2) throw std::invalid_argument("random_sl needs n >= 2");
  Matrix m = random_invertible(f, n, rng);
  const Elem s = f->inv(det(m));
  for (std::size_t i = 0; i < n; ++i) m.at(i, 0) = f->mul(m(i, 0), s);
  return ClassicalElement(std::move(m), GroupTag::SL);
}

ClassicalElement random_sl(std::size_t n, FieldPtr f, std::uint64_t seed) {
  Rng rng(seed);
  return random_sl(n, std::move(f), rng);
}

Matrix symplectic_transvection(const Matrix& form, const Vec& v, Elem lambda) {
  // T_ik = delta_ik + lambda v_i (J v)_k, since <x, v> = sum_k x_k (J v)_k.
  const Field& f = form.F();
  const std::size_t n = form.rows();
  const Vec jv = form.apply(v);
  Matrix t = Matrix::identity(form.field(), n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) t.at(i, k) = f.add(t(i, k), f.mul(lambda, f.mul(v[i], jv[k])));
  return t;
}

ClassicalElement random_sp(std::size_t n2, FieldPtr f, Rng& rng) {
  if (n2 == 0 || n2 % 2 != 0) throw std::invalid_argument("random_sp needs even dimension");
  const Matrix form = standard_symplectic_form(f, n2);
  Matrix g = Matrix::identity(f, n2);
  for (std::size_t step = 0; step < 3 * n2; ++step) {
    Vec v(n2);
    for (auto& x : v) x = Elem{std::uint32_t(uniform_below(rng, f->q()))};
    const Elem lambda{std::uint32_t(1 + uniform_below(rng, f->q() - 1))};
    g = g * symplectic_transvection(form, v, lambda);
  }
  return ClassicalElement(std::move(g), GroupTag::Sp, form);
}

ClassicalElement random_sp(std::size_t n2, FieldPtr f, std::uint64_t seed) {
  Rng rng(seed);
  return random_sp(n2, std::move(f), rng);
}

namespace {

template <class Keep>
std::vector<Matrix> enumerate_matrices(const FieldPtr& f, std::size_t n, std::uint64_t budget, Keep keep) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) {
    total *= f->q();
    if (total > budget) throw BudgetError("matrix enumeration exceeds budget");
  }
  std::vector<Matrix> out;
  std::vector<Elem> e(n * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (auto& x : e) {
      x = Elem{std::uint32_t(c % f->q())};
      c /= f->q();
    }
    Matrix m(f, n, n, e);
    if (keep(m)) out.push_back(std::move(m));
  }
  return out;
}

}  // namespace

std::vector<Matrix> enumerate_sl(FieldPtr f, std::size_t n, std::uint64_t budget) {
  return enumerate_matrices(f, n, budget, [&](const Matrix& m) { return det(m) == f->one(); });
}

std::vector<Matrix> enumerate_gl(FieldPtr f, std::size_t n, std::uint64_t budget) {
  return enumerate_matrices(f, n, budget, [&](const Matrix& m) { return !det(m).is_zero(); });
}

std::vector<Matrix> enumerate_psl(FieldPtr f, std::size_t n, std::uint64_t budget) {
  std::unordered_set<Matrix, MatrixHash> seen;
  std::vector<Matrix> out;
  for (auto& m : enumerate_sl(f, n, budget)) {
    Matrix nf = projective_normal_form(m);
    if (seen.insert(nf).second) out.push_back(std::move(nf));
  }
  return out;
}

std::vector<Permutation> enumerate_symmetric(std::size_t n) {
  std::vector<std::uint32_t> img(n);
  std::iota(img.begin(), img.end(), 0u);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

std::vector<Permutation> enumerate_alternating(std::size_t n) {
  auto all = enumerate_symmetric(n);
  std::erase_if(all, [](const Permutation& p) { return !p.is_even(); });
  return all;
}

ClassicalElement parse_classical(FieldPtr f, const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return ClassicalElement(parse_matrix(f, text), GroupTag::GL);
  return ClassicalElement(parse_matrix(f, text.substr(colon + 1)), parse_group_tag(text.substr(0, colon)));
}

std::string format_classical(const ClassicalElement& g) { return to_string(g.tag()) + ":" + format_matrix(g.matrix()); }

}  // namespace msglab
