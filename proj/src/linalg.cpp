#include "msglab/linalg.hpp"

#include <algorithm>
#include <sstream>

namespace msglab {

namespace {

void require_compatible(const Matrix& a, const Matrix& b) {
  require_same_field(a.F(), b.F());
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch");
}

// Forward elimination in place; returns pivot columns. When `full` is set
// the result is reduced (zeros above pivots, pivots equal to 1).
std::vector<std::size_t> eliminate(const Field& f, std::vector<Elem>& a, std::size_t rows, std::size_t cols,
                                   bool full) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c].is_zero()) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + std::ptrdiff_t(piv * cols), a.begin() + std::ptrdiff_t((piv + 1) * cols),
                       a.begin() + std::ptrdiff_t(r * cols));
    Elem* pr = &a[r * cols];
    const Elem inv = f.inv(pr[c]);
    if (full) {
      for (std::size_t j = c; j < cols; ++j) pr[j] = f.mul(pr[j], inv);
    }
    const std::size_t start = full ? 0 : r + 1;
    for (std::size_t i = start; i < rows; ++i) {
      if (i == r) continue;
      Elem* pi = &a[i * cols];
      if (pi[c].is_zero()) continue;
      const Elem factor = full ? pi[c] : f.mul(pi[c], inv);
      for (std::size_t j = c; j < cols; ++j) {
        if (!pr[j].is_zero()) pi[j] = f.sub(pi[j], f.mul(factor, pr[j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols) {}

Matrix::Matrix(FieldPtr f, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(std::move(entries)) {
  if (a_.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
  for (auto e : a_)
    if (!f_->valid(e)) throw std::invalid_argument("entry is not a field element");
}

Matrix Matrix::identity(FieldPtr f, std::size_t n) { return scalar(std::move(f), n, Elem{1}); }

Matrix Matrix::scalar(FieldPtr f, std::size_t n, Elem s) {
  Matrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = s;
  return m;
}

Matrix Matrix::diagonal(FieldPtr f, const std::vector<Elem>& d) {
  Matrix m(std::move(f), d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m.at(i, i) = d[i];
  return m;
}

Matrix Matrix::from_ints(FieldPtr f, std::size_t rows, std::size_t cols, const std::vector<std::int64_t>& v) {
  if (v.size() != rows * cols) throw std::invalid_argument("entry count does not match shape");
  std::vector<Elem> e(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) e[i] = f->from_int(v[i]);
  return Matrix(std::move(f), rows, cols, std::move(e));
}

Matrix Matrix::from_columns(FieldPtr f, std::size_t rows, const std::vector<Vec>& columns) {
  Matrix m(std::move(f), rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = columns[j][i];
  }
  return m;
}

Vec Matrix::column(std::size_t j) const {
  Vec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Matrix::row(std::size_t i) const { return Vec(a_.begin() + std::ptrdiff_t(i * cols_), a_.begin() + std::ptrdiff_t((i + 1) * cols_)); }

Matrix Matrix::transpose() const {
  Matrix t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = (*this)(i, j);
  return t;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](Elem e) { return e.is_zero(); });
}

bool Matrix::is_identity() const {
  if (!square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j).code != (i == j ? 1u : 0u)) return false;
  return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  Matrix out(a.f_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.f_->add(a.a_[i], b.a_[i]);
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_compatible(a, b);
  Matrix out(a.f_, a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.f_->sub(a.a_[i], b.a_[i]);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_field(*a.f_, *b.f_);
  if (a.cols_ != b.rows_) throw std::invalid_argument("shape mismatch in product");
  const Field& f = *a.f_;
  Matrix out(a.f_, a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    Elem* o = &out.a_[i * b.cols_];
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Elem x = a.a_[i * a.cols_ + k];
      if (x.is_zero()) continue;
      const Elem* br = &b.a_[k * b.cols_];
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!br[j].is_zero()) o[j] = f.add(o[j], f.mul(x, br[j]));
    }
  }
  return out;
}

Matrix Matrix::scaled(Elem s) const {
  Matrix out(f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = f_->mul(a_[i], s);
  return out;
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
  Vec out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Elem acc{};
    for (std::size_t j = 0; j < cols_; ++j) acc = f_->add(acc, f_->mul((*this)(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

std::size_t MatrixHash::operator()(const Matrix& m) const {
  std::size_t h = m.rows() * 1000003u + m.cols();
  for (auto e : m.entries()) h = h * 1099511628211ull ^ e.code;
  return h;
}

std::size_t rank(const Matrix& m) {
  std::vector<Elem> a = m.entries();
  return eliminate(m.F(), a, m.rows(), m.cols(), false).size();
}

Echelon rref(const Matrix& m) {
  std::vector<Elem> a = m.entries();
  auto piv = eliminate(m.F(), a, m.rows(), m.cols(), true);
  return {Matrix(m.field(), m.rows(), m.cols(), std::move(a)), std::move(piv)};
}

std::vector<Vec> kernel_basis(const Matrix& m) {
  const auto [r, pivots] = rref(m);
  const Field& f = m.F();
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    Vec v(m.cols());
    v[free] = f.one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m(i, j);
    aug.at(i, m.cols()) = b[i];
  }
  const auto [r, pivots] = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  Vec x(m.cols());
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = r(i, m.cols());
  return x;
}

Elem det(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("determinant of non-square matrix");
  const Field& f = m.F();
  std::vector<Elem> a = m.entries();
  const std::size_t n = m.rows();
  Elem d = f.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv * n + c].is_zero()) ++piv;
    if (piv == n) return f.zero();
    if (piv != c) {
      std::swap_ranges(a.begin() + std::ptrdiff_t(piv * n), a.begin() + std::ptrdiff_t((piv + 1) * n),
                       a.begin() + std::ptrdiff_t(c * n));
      d = f.neg(d);
    }
    d = f.mul(d, a[c * n + c]);
    const Elem inv = f.inv(a[c * n + c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (a[i * n + c].is_zero()) continue;
      const Elem factor = f.mul(a[i * n + c], inv);
      for (std::size_t j = c; j < n; ++j) a[i * n + j] = f.sub(a[i * n + j], f.mul(factor, a[c * n + j]));
    }
  }
  return d;
}

std::optional<Matrix> try_invert(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m(i, j);
    aug.at(i, n + i) = m.F().one();
  }
  const auto [r, pivots] = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r(i, n + j);
  return inv;
}

Matrix invert(const Matrix& m) {
  auto inv = try_invert(m);
  if (!inv) throw std::domain_error("matrix is singular");
  return *inv;
}

bool is_invertible(const Matrix& m) { return m.square() && rank(m) == m.rows(); }

Matrix matmul(const Matrix& a, const Matrix& b) { return a * b; }

Matrix matpow(const Matrix& m, std::int64_t k) {
  if (!m.square()) throw std::invalid_argument("power of non-square matrix");
  Matrix base = k < 0 ? invert(m) : m;
  std::uint64_t e = k < 0 ? std::uint64_t(-k) : std::uint64_t(k);
  Matrix result = Matrix::identity(m.field(), m.rows());
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

std::vector<Vec> column_space_basis(const Matrix& m) {
  const auto [r, pivots] = rref(m);
  std::vector<Vec> out;
  for (auto c : pivots) out.push_back(m.column(c));
  return out;
}

std::vector<Vec> complete_basis(FieldPtr f, std::size_t n, const std::vector<Vec>& vectors) {
  std::vector<Vec> current = vectors;
  std::vector<Vec> added;
  std::size_t r = current.empty() ? 0 : rank(Matrix::from_columns(f, n, current));
  if (r != current.size()) throw std::invalid_argument("vectors are not independent");
  for (std::size_t i = 0; i < n && r < n; ++i) {
    Vec e(n);
    e[i] = f->one();
    current.push_back(e);
    const std::size_t r2 = rank(Matrix::from_columns(f, n, current));
    if (r2 > r) {
      r = r2;
      added.push_back(std::move(e));
    } else {
      current.pop_back();
    }
  }
  return added;
}

std::vector<Matrix> intertwiner_basis(const Matrix& a, const Matrix& b) {
  if (!a.square() || !b.square()) throw std::invalid_argument("intertwiner needs square matrices");
  require_same_field(a.F(), b.F());
  const Field& f = a.F();
  const std::size_t m = a.rows(), n = b.rows();
  // Unknown T (m x n), variable index i*n + j. Equation (aT - Tb)_{ij} = 0.
  Matrix sys(a.field(), m * n, m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t eq = i * n + j;
      for (std::size_t k = 0; k < m; ++k) sys.at(eq, k * n + j) = f.add(sys(eq, k * n + j), a(i, k));
      for (std::size_t k = 0; k < n; ++k) sys.at(eq, i * n + k) = f.sub(sys(eq, i * n + k), b(k, j));
    }
  }
  std::vector<Matrix> out;
  for (const auto& v : kernel_basis(sys)) out.emplace_back(a.field(), m, n, v);
  return out;
}

std::vector<Matrix> commutant_basis(const Matrix& x) { return intertwiner_basis(x, x); }

RankShift min_rank_shift(const Matrix& g, const Matrix& h, std::uint32_t budget) {
  require_compatible(g, h);
  if (!g.square()) throw std::invalid_argument("min_rank_shift needs square matrices");
  const Field& f = g.F();
  if (f.q() > budget) throw BudgetError("field order exceeds the scalar enumeration budget");
  RankShift best{g.rows() + 1, {}};
  for (auto alpha : f.enumerate_nonzero()) {
    const std::size_t r = rank(g - h.scaled(alpha));
    if (r < best.rank) {
      best.rank = r;
      best.argmins.clear();
    }
    if (r == best.rank) best.argmins.push_back(alpha);
  }
  return best;
}

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

Matrix parse_matrix(FieldPtr f, const std::string& text) {
  const auto rows = split_top_level(text, ';');
  std::vector<Elem> entries;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto cells = split_top_level(rows[i], ',');
    if (i == 0) cols = cells.size();
    if (cells.size() != cols) throw std::invalid_argument("ragged matrix text");
    for (const auto& c : cells) entries.push_back(parse_elem(*f, c));
  }
  return Matrix(f, rows.size(), cols, std::move(entries));
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream os;
  const bool wrap = m.F().e() > 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ';';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      if (wrap) os << '(';
      os << m.F().format(m(i, j));
      if (wrap) os << ')';
    }
  }
  return os.str();
}

}  // namespace msglab
