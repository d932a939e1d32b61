#include "su2chan/repspace.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace su2chan {

namespace {

void check_index(int nu, int i) {
  if (i < 0 || i > nu) {
    throw Error(Errc::IndexOutOfRange,
                "monomial index " + std::to_string(i) + " outside [0, " + std::to_string(nu) + "]");
  }
}

void check_same_level(const KernelOperator& a, const KernelOperator& b) {
  if (a.level() != b.level()) {
    throw Error(Errc::LevelMismatch, "levels " + std::to_string(a.level()) + " and " +
                                         std::to_string(b.level()));
  }
}

std::vector<Rational> gram(int nu) {
  std::vector<Rational> g(nu + 1);
  for (int i = 0; i <= nu; ++i) g[i] = 1 / binomial(nu, i);
  return g;
}

}  // namespace

PolySpace::PolySpace(int nu) : nu_(nu) {
  if (nu < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
}

// The reproducing kernel (1 + z conj(w))^nu = sum_i C(nu,i) z^i conj(w)^i
// forces |z^i|^2 = 1 / C(nu,i).
Rational monomial_norm_sq(const PolySpace& space, int i) {
  check_index(space.level(), i);
  return 1 / binomial(space.level(), i);
}

CRational inner_product(const PolySpace& space, std::span<const CRational> f,
                        std::span<const CRational> g) {
  const auto n = static_cast<std::size_t>(space.dim());
  if (f.size() != n || g.size() != n) throw Error(Errc::LengthMismatch, "coefficient vector length");
  CRational s;
  for (std::size_t i = 0; i < n; ++i) {
    if (f[i].is_zero() || g[i].is_zero()) continue;
    s += f[i] * conj(g[i]) * monomial_norm_sq(space, static_cast<int>(i));
  }
  return s;
}

CVector kernel_section(const PolySpace& space, const CRational& w) {
  CVector k(space.dim());
  CRational wbar_pow(1);
  for (int i = 0; i <= space.level(); ++i) {
    k[i] = binomial(space.level(), i) * wbar_pow;
    wbar_pow *= conj(w);
  }
  return k;
}

CRational evaluate(std::span<const CRational> poly, const CRational& z) {
  CRational acc;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::complex<double> evaluate(std::span<const CRational> poly, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * z + to_complex(*it);
  return acc;
}

// --- KernelOperator ----------------------------------------------------------

KernelOperator::KernelOperator(int level) : level_(level) {
  if (level < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  coeffs_ = CMatrix(level + 1, level + 1);
}

KernelOperator::KernelOperator(int level, CMatrix coeffs) : level_(level), coeffs_(std::move(coeffs)) {
  const auto n = static_cast<std::size_t>(level + 1);
  if (level < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  if (coeffs_.rows() != n || coeffs_.cols() != n) {
    throw Error(Errc::LengthMismatch, "kernel coefficient matrix must be square of side level+1");
  }
}

KernelOperator& KernelOperator::operator+=(const KernelOperator& o) {
  check_same_level(*this, o);
  coeffs_ += o.coeffs_;
  return *this;
}

KernelOperator& KernelOperator::operator-=(const KernelOperator& o) {
  check_same_level(*this, o);
  coeffs_ -= o.coeffs_;
  return *this;
}

KernelOperator& KernelOperator::operator*=(const CRational& s) {
  coeffs_.scale(s);
  return *this;
}

KernelOperator reproducing_identity_operator(int mu) {
  if (mu < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  CMatrix c(mu + 1, mu + 1);
  for (int i = 0; i <= mu; ++i) c(i, i) = binomial(mu, i);
  return {mu, std::move(c)};
}

KernelOperator rank_one(int level, std::span<const CRational> f, std::span<const CRational> g) {
  const auto n = static_cast<std::size_t>(level + 1);
  if (f.size() != n || g.size() != n) throw Error(Errc::LengthMismatch, "coefficient vector length");
  CMatrix c(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) c(i, j) = f[i] * conj(g[j]);
  return {level, std::move(c)};
}

KernelOperator compose(const KernelOperator& a, const KernelOperator& b) {
  check_same_level(a, b);
  const int n = a.dim();
  const auto g = gram(a.level());
  CMatrix bg = b.coeffs();
  for (int j = 0; j < n; ++j)
    for (int c = 0; c < n; ++c) bg(j, c) *= g[j];
  return {a.level(), a.coeffs() * bg};
}

CRational operator_trace(const KernelOperator& a) {
  CRational t;
  for (int i = 0; i < a.dim(); ++i) t += a(i, i) * (1 / binomial(a.level(), i));
  return t;
}

KernelOperator adjoint(const KernelOperator& a) { return {a.level(), su2chan::adjoint(a.coeffs())}; }

bool is_self_adjoint(const KernelOperator& a) { return a.coeffs() == su2chan::adjoint(a.coeffs()); }

CVector apply_operator(const KernelOperator& a, std::span<const CRational> f) {
  if (f.size() != static_cast<std::size_t>(a.dim())) throw Error(Errc::LengthMismatch, "coefficient vector length");
  const auto g = gram(a.level());
  CVector out(a.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if (a(i, j).is_zero() || f[j].is_zero()) continue;
      out[i] += a(i, j) * f[j] * g[j];
    }
  return out;
}

KernelOperator raise_level(const KernelOperator& a, int nu) {
  if (nu < a.level()) throw Error(Errc::BandLimitExceeded, "cannot lower the level of a kernel");
  const int extra = nu - a.level();
  CMatrix c(nu + 1, nu + 1);
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) {
      if (a(i, j).is_zero()) continue;
      for (int s = 0; s <= extra; ++s) c(i + s, j + s) += a(i, j) * binomial(extra, s);
    }
  return {nu, std::move(c)};
}

Eigen::MatrixXcd to_orthonormal_matrix(const KernelOperator& a) {
  const int n = a.dim();
  std::vector<double> scale(n);
  for (int i = 0; i < n; ++i) scale[i] = 1.0 / std::sqrt(to_double(binomial(a.level(), i)));
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = to_complex(a(i, j)) * (scale[i] * scale[j]);
  return m;
}

std::complex<double> evaluate_kernel(const KernelOperator& a, std::complex<double> x,
                                     std::complex<double> y) {
  const std::complex<double> ybar = std::conj(y);
  std::complex<double> acc = 0;
  for (int i = a.level(); i >= 0; --i) {
    std::complex<double> row = 0;
    for (int j = a.level(); j >= 0; --j) row = row * ybar + to_complex(a(i, j));
    acc = acc * x + row;
  }
  return acc;
}

// --- tensor operators ------------------------------------------------------

TensorKernelOperator::TensorKernelOperator(int mu, int nu, CMatrix coeffs)
    : mu_(mu), nu_(nu), coeffs_(std::move(coeffs)) {
  const auto n = static_cast<std::size_t>((mu + 1) * (nu + 1));
  if (mu < 0 || nu < 0) throw Error(Errc::IndexOutOfRange, "levels must be nonnegative");
  if (coeffs_.rows() != n || coeffs_.cols() != n) throw Error(Errc::LengthMismatch, "tensor kernel shape");
}

TensorKernelOperator tensor_with_identity(const KernelOperator& a, int nu) {
  const int mu = a.level();
  const auto n = static_cast<std::size_t>((mu + 1) * (nu + 1));
  CMatrix c(n, n);
  for (int p = 0; p <= nu; ++p) {
    const Rational kp = binomial(nu, p);
    for (int i = 0; i <= mu; ++i)
      for (int j = 0; j <= mu; ++j) {
        if (a(i, j).is_zero()) continue;
        c(i * (nu + 1) + p, j * (nu + 1) + p) = a(i, j) * kp;
      }
  }
  return {mu, nu, std::move(c)};
}

// --- SU(2) -----------------------------------------------------------------

GroupElement make_group_element(CRational a, CRational b) {
  if (norm_sq(a) + norm_sq(b) != 1) {
    throw Error(Errc::NotUnitaryInput, "|a|^2 + |b|^2 = " + to_string(norm_sq(a) + norm_sq(b)));
  }
  return {std::move(a), std::move(b)};
}

GroupElement inverse(const GroupElement& g) { return {conj(g.a), -g.b}; }

CMatrix group_action_matrix(const PolySpace& space, const GroupElement& g) {
  make_group_element(g.a, g.b);
  const int nu = space.level();
  const CRational mbbar = -conj(g.b);
  const CRational abar = conj(g.a);
  CMatrix m(nu + 1, nu + 1);
  for (int j = 0; j <= nu; ++j) {
    // (a z + b)^j (-conj(b) z + conj(a))^(nu - j)
    for (int s = 0; s <= j; ++s) {
      const CRational left = binomial(j, s) * pow(g.a, s) * pow(g.b, j - s);
      if (left.is_zero()) continue;
      for (int t = 0; t <= nu - j; ++t) {
        const CRational right = binomial(nu - j, t) * pow(mbbar, t) * pow(abar, nu - j - t);
        m(s + t, j) += left * right;
      }
    }
  }
  return m;
}

KernelOperator conjugate(const KernelOperator& a, const GroupElement& g) {
  const CMatrix u = group_action_matrix(PolySpace(a.level()), g);
  return {a.level(), u * a.coeffs() * su2chan::adjoint(u)};
}

std::complex<double> inverse_point_action(const GroupElement& g, std::complex<double> z) {
  const auto a = to_complex(g.a);
  const auto b = to_complex(g.b);
  return (a * z + b) / (-std::conj(b) * z + std::conj(a));
}

// --- Casimir and isotypic projectors ---------------------------------------
//
// sl2 on H_mu: E z^j = j z^(j-1), F z^j = (mu-j) z^(j+1), H z^j = (mu-2j) z^j,
// with [E,F] = H. On kernels, ad_X(a) = X a - a (G X G^{-1}); the conjugated
// generators are again integer bidiagonal, which gives the stencils below.

namespace {

template <class T>
Matrix<T> ad_e(int mu, const Matrix<T>& a) {
  Matrix<T> out(mu + 1, mu + 1);
  for (int r = 0; r <= mu; ++r)
    for (int c = 0; c <= mu; ++c) {
      if (r + 1 <= mu) out(r, c) += Rational(r + 1) * a(r + 1, c);
      if (c >= 1) out(r, c) -= Rational(mu - c + 1) * a(r, c - 1);
    }
  return out;
}

template <class T>
Matrix<T> ad_f(int mu, const Matrix<T>& a) {
  Matrix<T> out(mu + 1, mu + 1);
  for (int r = 0; r <= mu; ++r)
    for (int c = 0; c <= mu; ++c) {
      if (r >= 1) out(r, c) += Rational(mu - r + 1) * a(r - 1, c);
      if (c + 1 <= mu) out(r, c) -= Rational(c + 1) * a(r, c + 1);
    }
  return out;
}

template <class T>
Matrix<T> casimir(int mu, const Matrix<T>& a) {
  Matrix<T> ef = ad_e(mu, ad_f(mu, a));
  Matrix<T> fe = ad_f(mu, ad_e(mu, a));
  Matrix<T> out = ef + fe;
  out.scale(Rational(1, 2));
  for (int r = 0; r <= mu; ++r)
    for (int c = 0; c <= mu; ++c) {
      const Rational h = c - r;  // ad_H = 2(c - r); quarter of its square
      out(r, c) += h * h * a(r, c);
    }
  return out;
}

// Row indices of the diagonal j - i = d.
int diag_first(int d) { return d < 0 ? -d : 0; }
int diag_len(int mu, int d) { return mu + 1 - (d < 0 ? -d : d); }

}  // namespace

RMatrix casimir_on_operators(int mu) {
  if (mu < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  const int n = mu + 1;
  RMatrix out(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RMatrix e(n, n);
      e(i, j) = 1;
      const RMatrix img = casimir(mu, e);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) out(r * n + c, i * n + j) = img(r, c);
    }
  return out;
}

KernelOperator apply_casimir(const KernelOperator& a) { return {a.level(), casimir(a.level(), a.coeffs())}; }

IsotypicDecomposition::IsotypicDecomposition(int mu) : mu_(mu) {
  if (mu < 0) throw Error(Errc::IndexOutOfRange, "level must be nonnegative");
  blocks_.assign(mu + 1, std::vector<RMatrix>(2 * mu + 1));
  const int n = mu + 1;
  for (int d = -mu; d <= mu; ++d) {
    const int len = diag_len(mu, d);
    const int first = diag_first(d);
    // Casimir restricted to the diagonal d.
    RMatrix cd(len, len);
    for (int col = 0; col < len; ++col) {
      RMatrix e(n, n);
      e(first + col, first + col + d) = 1;
      const RMatrix img = casimir(mu, e);
      for (int row = 0; row < len; ++row) cd(row, col) = img(first + row, first + row + d);
    }
    const int dabs = d < 0 ? -d : d;
    for (int m = dabs; m <= mu; ++m) {
      const Rational lm = m * (m + 1);
      RMatrix p = RMatrix::identity(len);
      for (int other = dabs; other <= mu; ++other) {
        if (other == m) continue;
        const Rational lo = other * (other + 1);
        RMatrix factor = cd;
        for (int t = 0; t < len; ++t) factor(t, t) -= lo;
        factor.scale(1 / (lm - lo));
        p = p * factor;
      }
      blocks_[m][d + mu] = std::move(p);
    }
  }
}

KernelOperator IsotypicDecomposition::component(int m, const KernelOperator& a) const {
  if (a.level() != mu_) throw Error(Errc::LevelMismatch, "operator level differs from decomposition level");
  if (m < 0 || m > mu_) throw Error(Errc::IndexOutOfRange, "isotypic index out of range");
  CMatrix out(mu_ + 1, mu_ + 1);
  for (int d = -m; d <= m; ++d) {
    const RMatrix& p = blocks_[m][d + mu_];
    const int first = diag_first(d);
    const int len = diag_len(mu_, d);
    for (int row = 0; row < len; ++row) {
      CRational acc;
      for (int col = 0; col < len; ++col) {
        const Rational& w = p(row, col);
        if (w == 0) continue;
        const CRational& x = a(first + col, first + col + d);
        if (!x.is_zero()) acc += x * w;
      }
      out(first + row, first + row + d) = std::move(acc);
    }
  }
  return {mu_, std::move(out)};
}

std::vector<KernelOperator> IsotypicDecomposition::decompose(const KernelOperator& a) const {
  std::vector<KernelOperator> parts;
  parts.reserve(mu_ + 1);
  for (int m = 0; m <= mu_; ++m) parts.push_back(component(m, a));
  return parts;
}

RMatrix IsotypicDecomposition::projector_matrix(int m) const {
  if (m < 0 || m > mu_) throw Error(Errc::IndexOutOfRange, "isotypic index out of range");
  const int n = mu_ + 1;
  RMatrix out(n * n, n * n);
  for (int d = -m; d <= m; ++d) {
    const RMatrix& p = blocks_[m][d + mu_];
    const int first = diag_first(d);
    const int len = diag_len(mu_, d);
    for (int row = 0; row < len; ++row)
      for (int col = 0; col < len; ++col) {
        const int r = first + row;
        const int c = first + col;
        out(r * n + r + d, c * n + c + d) = p(row, col);
      }
  }
  return out;
}

const IsotypicDecomposition& isotypic_projectors(int mu) {
  static std::mutex lock;
  static std::map<int, std::unique_ptr<IsotypicDecomposition>> cache;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(mu);
  if (it == cache.end()) it = cache.emplace(mu, std::make_unique<IsotypicDecomposition>(mu)).first;
  return *it->second;
}

}  // namespace su2chan
