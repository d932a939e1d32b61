#pragma once

// The spaces H_nu of polynomials of degree <= nu with the reproducing kernel
// (1 + z conj(w))^nu, operators on them stored as kernel coefficients, the
// SU(2) action, and the isotypic splitting of B(H_mu).
//
// Coordinates: a polynomial is its monomial coefficient vector f_0..f_nu.
// An operator A has kernel A(x, y) = sum_ij a_ij x^i conj(y)^j and acts by
// (A f)(x) = <f, A(., x)^*> = sum_ij a_ij x^i f_j |z^j|^2, so its matrix on
// coefficient vectors is a * G with G = diag(|z^j|^2).

#include <Eigen/Dense>

#include <complex>
#include <span>
#include <vector>

#include "su2chan/exactnum.hpp"
#include "su2chan/matrix.hpp"

namespace su2chan {

using CVector = std::vector<CRational>;

class PolySpace {
 public:
  explicit PolySpace(int nu);

  int level() const { return nu_; }
  int dim() const { return nu_ + 1; }

 private:
  int nu_;
};

/// |z^i|^2 in H_nu, which is 1 / C(nu, i).
Rational monomial_norm_sq(const PolySpace& space, int i);
CRational inner_product(const PolySpace& space, std::span<const CRational> f,
                        std::span<const CRational> g);
/// Coefficients of K_w(z) = (1 + z conj(w))^nu.
CVector kernel_section(const PolySpace& space, const CRational& w);
CRational evaluate(std::span<const CRational> poly, const CRational& z);
std::complex<double> evaluate(std::span<const CRational> poly, std::complex<double> z);

class KernelOperator {
 public:
  explicit KernelOperator(int level);
  KernelOperator(int level, CMatrix coeffs);

  int level() const { return level_; }
  int dim() const { return level_ + 1; }
  const CMatrix& coeffs() const { return coeffs_; }
  const CRational& operator()(int i, int j) const { return coeffs_(i, j); }

  KernelOperator& operator+=(const KernelOperator& o);
  KernelOperator& operator-=(const KernelOperator& o);
  KernelOperator& operator*=(const CRational& s);

  bool is_zero() const { return coeffs_.is_zero_matrix(); }

  friend bool operator==(const KernelOperator&, const KernelOperator&) = default;

 private:
  int level_;
  CMatrix coeffs_;
};

inline KernelOperator operator+(KernelOperator a, const KernelOperator& b) { return a += b; }
inline KernelOperator operator-(KernelOperator a, const KernelOperator& b) { return a -= b; }
inline KernelOperator operator*(KernelOperator a, const CRational& s) { return a *= s; }
inline KernelOperator operator*(const CRational& s, KernelOperator a) { return a *= s; }

/// Kernel (1 + x conj(y))^mu, the identity operator.
KernelOperator reproducing_identity_operator(int mu);
/// Kernel f(x) conj(g(y)): the operator h -> <h, g> f.
KernelOperator rank_one(int level, std::span<const CRational> f, std::span<const CRational> g);
KernelOperator compose(const KernelOperator& a, const KernelOperator& b);
CRational operator_trace(const KernelOperator& a);
KernelOperator adjoint(const KernelOperator& a);
bool is_self_adjoint(const KernelOperator& a);
/// Image of a coefficient vector under the operator.
CVector apply_operator(const KernelOperator& a, std::span<const CRational> f);
/// Same function A(z,z)/(1+|z|^2)^mu written at level nu >= mu: the kernel is
/// multiplied by (1 + x conj(y))^(nu - mu).
KernelOperator raise_level(const KernelOperator& a, int nu);

/// Matrix in the orthonormal basis z^i / |z^i|; its spectrum is the operator's.
Eigen::MatrixXcd to_orthonormal_matrix(const KernelOperator& a);
std::complex<double> evaluate_kernel(const KernelOperator& a, std::complex<double> x,
                                     std::complex<double> y);

// --- operators on H_mu (x) H_nu -------------------------------------------

/// Kernel sum a x^i u^p conj(y)^j conj(w)^q, flattened with index i*(nu+1)+p.
class TensorKernelOperator {
 public:
  TensorKernelOperator(int mu, int nu, CMatrix coeffs);

  int mu() const { return mu_; }
  int nu() const { return nu_; }
  std::size_t index(int i, int p) const { return static_cast<std::size_t>(i * (nu_ + 1) + p); }
  const CMatrix& coeffs() const { return coeffs_; }

 private:
  int mu_;
  int nu_;
  CMatrix coeffs_;
};

/// A (x) I: the nu-indices carry the diagonal of the kernel (1 + u conj(w))^nu.
TensorKernelOperator tensor_with_identity(const KernelOperator& a, int nu);

// --- SU(2) -----------------------------------------------------------------

/// g^{-1} = [[a, b], [-conj(b), conj(a)]] with |a|^2 + |b|^2 = 1 exactly.
struct GroupElement {
  CRational a;
  CRational b;
};

GroupElement make_group_element(CRational a, CRational b);
GroupElement inverse(const GroupElement& g);
/// (g . f)(z) = (-conj(b) z + conj(a))^nu f((a z + b) / (-conj(b) z + conj(a))) on monomials.
CMatrix group_action_matrix(const PolySpace& space, const GroupElement& g);
/// g A g^{-1}; in kernel coefficients this is U a U^*.
KernelOperator conjugate(const KernelOperator& a, const GroupElement& g);
/// The Mobius point g^{-1} . z used by the action.
std::complex<double> inverse_point_action(const GroupElement& g, std::complex<double> z);

// --- isotypic splitting of B(H_mu) ------------------------------------------

/// Quadratic Casimir of the adjoint action on kernel coefficients, as a map on
/// the row-major coefficient vector. Eigenvalue m(m+1) on the copy of H_{2m}.
RMatrix casimir_on_operators(int mu);
KernelOperator apply_casimir(const KernelOperator& a);

/// Spectral projectors of the Casimir. The adjoint weight j - i of a_ij is
/// preserved by the Casimir, so each projector is stored as one dense block
/// per diagonal offset d = j - i.
class IsotypicDecomposition {
 public:
  explicit IsotypicDecomposition(int mu);

  int level() const { return mu_; }
  KernelOperator component(int m, const KernelOperator& a) const;
  std::vector<KernelOperator> decompose(const KernelOperator& a) const;
  /// Full (mu+1)^2 square projector on the row-major coefficient vector.
  RMatrix projector_matrix(int m) const;

 private:
  int mu_;
  // blocks_[m][d + mu]; empty when m < |d|.
  std::vector<std::vector<RMatrix>> blocks_;
};

/// Cached per level; safe to call concurrently.
const IsotypicDecomposition& isotypic_projectors(int mu);

}  // namespace su2chan
