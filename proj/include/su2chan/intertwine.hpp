#pragma once

// Intertwiners J_k : H_mu (x) H_nu -> H_{mu+nu-2k}, the Schur constant C^2,
// and the channels T(A) = C^2 J_k (A (x) I) J_k^*.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "su2chan/exactnum.hpp"
#include "su2chan/matrix.hpp"
#include "su2chan/repspace.hpp"

namespace su2chan {

struct ChannelSpec {
  int mu = 0;
  int nu = 0;
  int k = 0;

  /// Dimension of the target space H_{mu+nu-2k}.
  int target_level() const { return mu + nu - 2 * k; }
  int target_dim() const { return target_level() + 1; }
  int source_dim() const { return (mu + 1) * (nu + 1); }

  friend bool operator==(const ChannelSpec&, const ChannelSpec&) = default;
};

/// Throws InvalidSpec unless 0 <= k <= mu <= nu.
void validate(const ChannelSpec& spec);
std::string to_string(const ChannelSpec& spec);

/// J_k on monomial coefficients. Column (i, p) = i*(nu+1)+p has at most one
/// nonzero entry, in row i + p - k.
class IntertwinerMatrix {
 public:
  struct Entry {
    int row = -1;  // -1: column is annihilated
    Rational value;
  };

  IntertwinerMatrix(ChannelSpec spec, std::vector<Entry> columns);

  const ChannelSpec& spec() const { return spec_; }
  const Entry& column(int i, int p) const { return columns_[i * (spec_.nu + 1) + p]; }
  RMatrix dense() const;

 private:
  ChannelSpec spec_;
  std::vector<Entry> columns_;
};

/// J_k(z^a w^b) = sum_j (-1)^j C(k,j) (a)^j_- (b)^(k-j)_- / ((-mu)_j (-nu)_(k-j)) xi^(a+b-k).
IntertwinerMatrix jk_matrix(const ChannelSpec& spec);
/// Adjoint for the Gram forms: G_S^{-1} J^T G_T, shape source_dim x target_dim.
RMatrix jk_adjoint_matrix(const ChannelSpec& spec);
/// (-nu)_k (-mu)_k / (k! (mu+nu-2k+2)_k); J_k J_k^* = I / C^2.
Rational c_squared(const ChannelSpec& spec);

struct IdentityWitness {
  int row = 0;
  int col = 0;
  std::string value;  // offending entry as "p/q"
};

struct PkReport {
  int mu = 0;
  int nu = 0;
  bool schur_scalar = true;  // C^2 J_k J_k^* = I for every k
  bool cross_zero = true;    // J_k J_l^* = 0 for k != l
  bool complete = true;      // sum_k C^2 J_k^* J_k = I
  std::string failed;        // first failing identity, empty when all hold
  std::optional<IdentityWitness> witness;

  bool ok() const { return schur_scalar && cross_zero && complete; }
};

PkReport pk_orthogonality_check(int mu, int nu);
/// Same checks with a caller-supplied Schur constant.
PkReport pk_orthogonality_check(int mu, int nu, const std::function<Rational(const ChannelSpec&)>& schur);

KernelOperator apply_channel(const ChannelSpec& spec, const KernelOperator& a);
/// Trace-preserving rescaling by (mu+1)/(mu+nu-2k+1).
KernelOperator apply_normalized_channel(const ChannelSpec& spec, const KernelOperator& a);
Rational normalization_factor(const ChannelSpec& spec);

/// Choi matrix sum_ij |e_i><e_j| (x) T^(|e_i><e_j|) of the normalized channel in
/// orthonormal bases; input index is the slow one.
Eigen::MatrixXcd choi_matrix(const ChannelSpec& spec);
/// Tr over the output factor; the identity for a trace-preserving channel.
Eigen::MatrixXcd choi_partial_trace_output(const Eigen::MatrixXcd& choi, int in_dim, int out_dim);
double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m);

}  // namespace su2chan
