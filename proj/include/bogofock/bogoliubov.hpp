#pragma once

#include <vector>

#include "bogofock/fock.hpp"
#include "bogofock/mode_operator.hpp"
#include "bogofock/types.hpp"

namespace bogofock {

/// Quasiparticle creation: create(u phi) + annihilate(v conj(phi)).
FockVector quasi_create(const BogoliubovMap& map, const Vector& phi, const FockVector& psi);

/// Quasiparticle annihilation: create(v conj(phi)) + annihilate(u phi).
FockVector quasi_annihilate(const BogoliubovMap& map, const Vector& phi, const FockVector& psi);

/// The transformed vacuum: even sector 2m carries sqrt((2m)!)/m! times the
/// m-th symmetric power of the pair kernel, odd sectors vanish, sector 0 is
/// pinned to 1 (the vector is intentionally not normalized). Built by
/// repeated application of the two-particle creation operator
/// 1/2 sum K(j,k) a+_j a+_k, rescaled by 2^m to match that normalization.
FockVector bogoliubov_vacuum(const BogoliubovMap& map, int nmax, double tol = kRelationTol);

/// Norms of the odd sectors n <= nmax - 1 of quasi_annihilate(phi, omega).
/// The top sector is excluded: the annihilation part pulls from sector n + 1,
/// which is unavailable there, so including it would report truncation noise.
std::vector<std::pair<int, double>> vacuum_annihilation_residuals(const BogoliubovMap& map,
                                                                  const FockVector& omega,
                                                                  const Vector& phi);

/// One-particle profiles of single quasiparticle creations on the vacuum:
/// column j equals (1 - contraction) u e_j where the contraction composes the
/// two antilinear halves of the pair operator. sigma_min > 0 certifies the
/// linear independence of the profiles at this truncation.
struct DressedModes {
  Matrix matrix;
  double sigma_min = 0.0;
  double contraction_norm = 0.0;  // strictly below 1 for valid maps
  double dual_path_gap = 0.0;     // agreement of the two equivalent formulas
};

DressedModes dressed_modes(const BogoliubovMap& map, double tol = kRelationTol);

/// The implementer applied to one creation word: quasi-creations of the list
/// entries applied right to left on the transformed vacuum. Truncation loss
/// is reported through the lossy flag.
FockVector implement(const BogoliubovMap& map, const FockVector& omega,
                     const std::vector<Vector>& creation_list);

/// Norm over sectors <= top only (negative top yields zero).
double guarded_norm(const FockVector& psi, int top);

/// Verifies both intertwining relations on a family of creation words,
/// computing each side independently: the creation side goes through the
/// implementer on the extended word (the word order is immaterial on the
/// symmetric domain), the annihilation side through the canonical
/// commutation relations on shortened words. Residuals are taken over the
/// truncation-exact sectors.
double intertwining_residual(const BogoliubovMap& map,
                             const std::vector<std::vector<Vector>>& family,
                             const std::vector<Vector>& phis, int nmax);

/// All creation words of unit vectors with the given degree (multisets,
/// one representative per occupation vector).
std::vector<std::vector<Vector>> occupation_words(int modes, int degree);

/// Conditioning of the Gram matrix of implemented occupation words at one
/// fixed degree; a nonsingular Gram witnesses injectivity at this degree.
struct GramWitness {
  int degree = 0;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  double cond = 0.0;
};

GramWitness implemented_gram(const BogoliubovMap& map, const FockVector& omega, int degree,
                             int nmax);

/// Inverse of the implementer on the span of finitely many implemented
/// words, realized as a linear solve against their Gram matrix. A singular
/// Gram is an explicit error, never a silent pseudo-inverse.
class ImplementerInverse {
 public:
  ImplementerInverse(const BogoliubovMap& map, std::vector<std::vector<Vector>> words, int nmax);

  FockVector apply(const FockVector& target) const;

 private:
  int modes_;
  int nmax_;
  std::vector<std::vector<Vector>> words_;
  std::vector<FockVector> implemented_;
  Matrix gram_inverse_;
};

}  // namespace bogofock
