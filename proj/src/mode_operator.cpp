#include "bogofock/mode_operator.hpp"

#include <algorithm>
#include <stdexcept>

namespace bogofock {

namespace {

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

ModeOperator linear_op(Matrix entries) {
  if (entries.rows() != entries.cols()) throw std::invalid_argument("linear_op: square matrix required");
  return ModeOperator{std::move(entries), false};
}

ModeOperator conjugation_j(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("conjugation_j: dim >= 1 required");
  return ModeOperator{Matrix::Identity(dim, dim), true};
}

ModeOperator compose(const ModeOperator& f, const ModeOperator& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("compose: dimension mismatch");
  Matrix entries = f.antilinear ? Matrix(f.entries * g.entries.conjugate()) : Matrix(f.entries * g.entries);
  return ModeOperator{std::move(entries), f.antilinear != g.antilinear};
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.jacobiSvd().singularValues()(0);
}

double operator_norm(const ModeOperator& op) { return operator_norm(op.entries); }

BogoliubovMap make_map(Matrix u, Matrix v) {
  if (u.rows() != u.cols() || v.rows() != v.cols() || u.rows() != v.rows())
    throw std::invalid_argument("make_map: u, v must be square with equal dimension");
  return BogoliubovMap{linear_op(std::move(u)), linear_op(std::move(v))};
}

BogoliubovMap identity_map(Eigen::Index dim) {
  return make_map(Matrix::Identity(dim, dim), Matrix::Zero(dim, dim));
}

double RelationResiduals::max() const { return std::max({in_metric, in_pairing, out_metric, out_pairing}); }

RelationResiduals bogoliubov_residuals(const BogoliubovMap& map) {
  if (map.u.dim() != map.v.dim()) throw std::invalid_argument("bogoliubov_residuals: dimension mismatch");
  const Matrix& u = map.u.entries;
  const Matrix& v = map.v.entries;
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  RelationResiduals r;
  r.in_metric = max_abs(u.adjoint() * u - v.transpose() * v.conjugate() - id);
  r.in_pairing = max_abs(u.adjoint() * v - v.transpose() * u.conjugate());
  r.out_metric = max_abs(u * u.adjoint() - v * v.adjoint() - id);
  r.out_pairing = max_abs(u * v.transpose() - v * u.transpose());
  return r;
}

PairOperator pair_operator(const BogoliubovMap& map, double tol) {
  const RelationResiduals residuals = bogoliubov_residuals(map);
  if (residuals.max() > tol)
    throw std::invalid_argument("pair_operator: Bogoliubov relation residual exceeds tolerance");
  const Matrix& u = map.u.entries;
  const Matrix& v = map.v.entries;
  // Solve O conj(u) = -1/2 v, i.e. u^* O^T = -1/2 v^T, instead of forming
  // the inverse. u is invertible at finite dimension since u*u >= 1.
  Matrix op = (u.adjoint().partialPivLu().solve(Matrix(-0.5 * v.transpose()))).transpose();
  PairOperator out;
  out.kernel = op;
  out.op = linear_op(std::move(op));
  return out;
}

Matrix pair_operator_spectral(const BogoliubovMap& map, double tol) {
  const RelationResiduals residuals = bogoliubov_residuals(map);
  if (residuals.max() > tol)
    throw std::invalid_argument("pair_operator_spectral: Bogoliubov relation residual exceeds tolerance");
  const Matrix& u = map.u.entries;
  const Matrix& v = map.v.entries;
  const Matrix vv = v.transpose() * v.conjugate();  // Hermitian PSD
  Eigen::SelfAdjointEigenSolver<Matrix> eig(vv);
  if (eig.info() != Eigen::Success) throw std::runtime_error("pair_operator_spectral: eigensolver failed");
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  Matrix op = Matrix::Zero(u.rows(), u.cols());
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i) {
    const double lambda = eig.eigenvalues()(i);
    if (lambda <= scale * 1e-14) continue;  // the polar factor vanishes on the kernel
    const Vector f = eig.eigenvectors().col(i);
    const Vector g = (v * f.conjugate()) / std::sqrt(lambda);
    const Vector h = (u.conjugate() * f.conjugate()) / std::sqrt(1.0 + lambda);
    op.noalias() -= std::sqrt(lambda / (4.0 * (1.0 + lambda))) * g * h.adjoint();
  }
  return op;
}

double pair_relation_residual(const BogoliubovMap& map, const ModeOperator& pair_op) {
  const ModeOperator j = conjugation_j(map.dim());
  const ModeOperator ju = compose(j, map.u);
  const ModeOperator vj = compose(map.v, j);
  const ModeOperator lhs = compose(pair_op, ju);
  return max_abs(2.0 * lhs.entries + vj.entries);
}

}  // namespace bogofock
