#include "su2chan/intertwine.hpp"

#include <cmath>

namespace su2chan {

void validate(const ChannelSpec& spec) {
  if (spec.k < 0 || spec.k > spec.mu || spec.mu > spec.nu) {
    throw Error(Errc::InvalidSpec, "need 0 <= k <= mu <= nu, got " + to_string(spec));
  }
}

std::string to_string(const ChannelSpec& spec) {
  return "(mu=" + std::to_string(spec.mu) + ", nu=" + std::to_string(spec.nu) +
         ", k=" + std::to_string(spec.k) + ")";
}

IntertwinerMatrix::IntertwinerMatrix(ChannelSpec spec, std::vector<Entry> columns)
    : spec_(spec), columns_(std::move(columns)) {
  if (columns_.size() != static_cast<std::size_t>(spec_.source_dim())) {
    throw Error(Errc::LengthMismatch, "intertwiner column count");
  }
}

RMatrix IntertwinerMatrix::dense() const {
  RMatrix m(spec_.target_dim(), spec_.source_dim());
  for (std::size_t c = 0; c < columns_.size(); ++c)
    if (columns_[c].row >= 0) m(columns_[c].row, c) = columns_[c].value;
  return m;
}

IntertwinerMatrix jk_matrix(const ChannelSpec& spec) {
  validate(spec);
  const auto [mu, nu, k] = spec;
  const int target = spec.target_level();

  // Constant part of the j-th term of the differential form.
  std::vector<Rational> weight(k + 1);
  for (int j = 0; j <= k; ++j) {
    Rational w = binomial(k, j) / (rising_pochhammer(-mu, j) * rising_pochhammer(-nu, k - j));
    weight[j] = (j % 2 == 0) ? w : Rational(-w);
  }

  std::vector<IntertwinerMatrix::Entry> cols(spec.source_dim());
  for (int a = 0; a <= mu; ++a)
    for (int b = 0; b <= nu; ++b) {
      const int row = a + b - k;
      if (row < 0 || row > target) continue;
      Rational v;
      for (int j = 0; j <= k; ++j) v += weight[j] * falling_pochhammer(a, j) * falling_pochhammer(b, k - j);
      if (v != 0) cols[a * (nu + 1) + b] = {row, std::move(v)};
    }
  return {spec, std::move(cols)};
}

RMatrix jk_adjoint_matrix(const ChannelSpec& spec) {
  const IntertwinerMatrix j = jk_matrix(spec);
  RMatrix out(spec.source_dim(), spec.target_dim());
  for (int i = 0; i <= spec.mu; ++i)
    for (int p = 0; p <= spec.nu; ++p) {
      const auto& e = j.column(i, p);
      if (e.row < 0) continue;
      // G_S^{-1} = C(mu,i) C(nu,p); G_T = 1 / C(target, row)
      out(i * (spec.nu + 1) + p, e.row) =
          e.value * binomial(spec.mu, i) * binomial(spec.nu, p) / binomial(spec.target_level(), e.row);
    }
  return out;
}

Rational c_squared(const ChannelSpec& spec) {
  validate(spec);
  const auto [mu, nu, k] = spec;
  return rising_pochhammer(-nu, k) * rising_pochhammer(-mu, k) /
         (Rational(factorial(k)) * rising_pochhammer(mu + nu - 2 * k + 2, k));
}

namespace {

std::optional<IdentityWitness> first_mismatch(const RMatrix& got, const RMatrix& want) {
  for (std::size_t r = 0; r < got.rows(); ++r)
    for (std::size_t c = 0; c < got.cols(); ++c)
      if (got(r, c) != want(r, c)) return IdentityWitness{int(r), int(c), to_string(got(r, c))};
  return std::nullopt;
}

}  // namespace

PkReport pk_orthogonality_check(int mu, int nu) { return pk_orthogonality_check(mu, nu, c_squared); }

PkReport pk_orthogonality_check(int mu, int nu, const std::function<Rational(const ChannelSpec&)>& schur) {
  PkReport report;
  report.mu = mu;
  report.nu = nu;
  validate({mu, nu, 0});
  const int sdim = (mu + 1) * (nu + 1);
  std::vector<RMatrix> jk;
  std::vector<RMatrix> jk_adj;
  for (int k = 0; k <= mu; ++k) {
    jk.push_back(jk_matrix({mu, nu, k}).dense());
    jk_adj.push_back(jk_adjoint_matrix({mu, nu, k}));
  }

  RMatrix completeness(sdim, sdim);
  for (int k = 0; k <= mu && report.ok(); ++k) {
    const ChannelSpec spec{mu, nu, k};
    const Rational c2 = schur(spec);
    RMatrix jjs = jk[k] * jk_adj[k];
    jjs.scale(c2);
    if (auto w = first_mismatch(jjs, RMatrix::identity(spec.target_dim()))) {
      report.schur_scalar = false;
      report.failed = "C^2 J_k J_k^* = I at " + to_string(spec);
      report.witness = w;
      break;
    }
    for (int l = 0; l <= mu; ++l) {
      if (l == k) continue;
      const RMatrix cross = jk[k] * jk_adj[l];
      if (auto w = first_mismatch(cross, RMatrix(cross.rows(), cross.cols()))) {
        report.cross_zero = false;
        report.failed = "J_k J_l^* = 0 at k=" + std::to_string(k) + ", l=" + std::to_string(l) +
                        " (mu=" + std::to_string(mu) + ", nu=" + std::to_string(nu) + ")";
        report.witness = w;
        break;
      }
    }
    RMatrix proj = jk_adj[k] * jk[k];
    proj.scale(c2);
    completeness += proj;
  }
  if (report.ok()) {
    if (auto w = first_mismatch(completeness, RMatrix::identity(sdim))) {
      report.complete = false;
      report.failed = "sum_k P_k^* P_k = I at mu=" + std::to_string(mu) + ", nu=" + std::to_string(nu);
      report.witness = w;
    }
  }
  return report;
}

// Kernel of C^2 J (A (x) I) J^*: in coefficients C^2 J (a (x) diag C(nu,p)) J^T,
// and J has one entry per column, so only matching p survive.
KernelOperator apply_channel(const ChannelSpec& spec, const KernelOperator& a) {
  validate(spec);
  if (a.level() != spec.mu) {
    throw Error(Errc::LevelMismatch, "channel input must have level " + std::to_string(spec.mu));
  }
  const IntertwinerMatrix j = jk_matrix(spec);
  const int n = spec.target_dim();
  CMatrix t(n, n);
  for (int p = 0; p <= spec.nu; ++p) {
    const Rational kp = binomial(spec.nu, p);
    for (int i = 0; i <= spec.mu; ++i) {
      const auto& ei = j.column(i, p);
      if (ei.row < 0) continue;
      const Rational left = ei.value * kp;
      for (int jj = 0; jj <= spec.mu; ++jj) {
        const auto& ej = j.column(jj, p);
        if (ej.row < 0 || a(i, jj).is_zero()) continue;
        t(ei.row, ej.row) += a(i, jj) * (left * ej.value);
      }
    }
  }
  t.scale(c_squared(spec));
  return {spec.target_level(), std::move(t)};
}

Rational normalization_factor(const ChannelSpec& spec) {
  return Rational(spec.mu + 1, spec.target_dim());
}

KernelOperator apply_normalized_channel(const ChannelSpec& spec, const KernelOperator& a) {
  return apply_channel(spec, a) * CRational(normalization_factor(spec));
}

Eigen::MatrixXcd choi_matrix(const ChannelSpec& spec) {
  validate(spec);
  const int in = spec.mu + 1;
  const int out = spec.target_dim();
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(in * out, in * out);
  for (int i = 0; i < in; ++i)
    for (int j = 0; j < in; ++j) {
      // |e_i><e_j| has kernel x^i conj(y)^j / sqrt(|z^i|^2 |z^j|^2)
      CMatrix unit(in, in);
      unit(i, j) = 1;
      const KernelOperator img = apply_normalized_channel(spec, KernelOperator(spec.mu, std::move(unit)));
      const double s = std::sqrt(to_double(binomial(spec.mu, i)) * to_double(binomial(spec.mu, j)));
      choi.block(i * out, j * out, out, out) = to_orthonormal_matrix(img) * s;
    }
  return choi;
}

Eigen::MatrixXcd choi_partial_trace_output(const Eigen::MatrixXcd& choi, int in_dim, int out_dim) {
  Eigen::MatrixXcd r(in_dim, in_dim);
  for (int i = 0; i < in_dim; ++i)
    for (int j = 0; j < in_dim; ++j) r(i, j) = choi.block(i * out_dim, j * out_dim, out_dim, out_dim).trace();
  return r;
}

double min_hermitian_eigenvalue(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace su2chan
