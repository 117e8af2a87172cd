#pragma once

#include "bogofock/types.hpp"

namespace bogofock {

/// Linear or antilinear operator on the truncated mode space C^M.
/// An antilinear operator acts as phi -> entries * conj(phi).
struct ModeOperator {
  Matrix entries;
  bool antilinear = false;

  Eigen::Index dim() const { return entries.rows(); }

  Vector apply(const Vector& phi) const {
    return antilinear ? Vector(entries * phi.conjugate()) : Vector(entries * phi);
  }
};

ModeOperator linear_op(Matrix entries);

/// The complex conjugation J: phi -> conj(phi). J composed with J is the
/// linear identity.
ModeOperator conjugation_j(Eigen::Index dim);

/// Composition f after g. The antilinear flags combine by XOR; an antilinear
/// f conjugates g's matrix.
ModeOperator compose(const ModeOperator& f, const ModeOperator& g);

/// Largest singular value.
double operator_norm(const Matrix& m);
double operator_norm(const ModeOperator& op);

/// Candidate Bogoliubov pair (u, v), both linear. Validity means small
/// residuals of the four bosonic relations; it is checked, never assumed.
struct BogoliubovMap {
  ModeOperator u;
  ModeOperator v;

  Eigen::Index dim() const { return u.dim(); }
};

BogoliubovMap make_map(Matrix u, Matrix v);
BogoliubovMap identity_map(Eigen::Index dim);

/// Max-norm residuals of the four bosonic Bogoliubov relations.
struct RelationResiduals {
  double in_metric = 0.0;    // u*u - v^T conj(v) = 1
  double in_pairing = 0.0;   // u*v - v^T conj(u) = 0
  double out_metric = 0.0;   // u u* - v v* = 1
  double out_pairing = 0.0;  // u v^T - v u^T = 0

  double max() const;
};

RelationResiduals bogoliubov_residuals(const BogoliubovMap& map);

/// Pair operator of a valid map together with its integral kernel.
/// The kernel is the operator's matrix, symmetric whenever the Bogoliubov
/// relations hold, with operator norm strictly below 1/2.
struct PairOperator {
  ModeOperator op;
  Matrix kernel;
};

/// Production path: the closed finite-dimensional form -1/2 v conj(u)^(-1),
/// evaluated by a linear solve. Rejects maps whose relation residuals exceed
/// `tol`. The returned operator satisfies 2 O J u = -v J as antilinear maps.
PairOperator pair_operator(const BogoliubovMap& map, double tol = kRelationTol);

/// Cross-check path: assemble the operator from the eigendecomposition of
/// v^T conj(v), summing only over strictly positive eigenvalues (the polar
/// factor vanishes on the kernel, so no antiunitary completion is needed).
Matrix pair_operator_spectral(const BogoliubovMap& map, double tol = kRelationTol);

/// Max-norm of 2 O J u + v J, evaluated as antilinear operators.
double pair_relation_residual(const BogoliubovMap& map, const ModeOperator& pair_op);

}  // namespace bogofock
