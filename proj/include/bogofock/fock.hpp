#pragma once

#include <vector>

#include "bogofock/occupation.hpp"
#include "bogofock/types.hpp"

namespace bogofock {

/// State of the truncated bosonic Fock space: `modes` modes, particle
/// sectors 0..nmax, each stored as coefficients over the occupation basis.
/// `lossy` is set whenever a truncation dropped amplitude above nmax; it
/// propagates through arithmetic and operator application.
struct FockVector {
  int modes = 0;
  int nmax = 0;
  bool lossy = false;
  std::vector<Vector> sectors;  // sectors[n], size sector_dimension(modes, n)

  static FockVector zero(int modes, int nmax);

  Vector& sector(int n) { return sectors[static_cast<std::size_t>(n)]; }
  const Vector& sector(int n) const { return sectors[static_cast<std::size_t>(n)]; }

  /// Largest n with a nonzero sector, or -1 for the zero vector.
  int top_sector() const;
};

FockVector vacuum(int modes, int nmax);

/// Basis state |occ> with coefficient 1.
FockVector basis_state(const std::vector<int>& occ, int nmax);

FockVector operator+(const FockVector& a, const FockVector& b);
FockVector operator-(const FockVector& a, const FockVector& b);
FockVector operator*(const Complex& c, const FockVector& a);

/// <a, b>, conjugate-linear in the first argument.
Complex inner(const FockVector& a, const FockVector& b);
double norm(const FockVector& a);

/// Creation operator for the one-particle vector phi. Amplitude pushed
/// above nmax is dropped and flagged lossy.
FockVector create(const Vector& phi, const FockVector& psi);

/// Annihilation operator; adjoint of create wherever no truncation occurs.
FockVector annihilate(const Vector& phi, const FockVector& psi);

/// Max over probe states of the three commutator residuals
/// |([a(phi), a^+(psi)] - <phi,psi>)P|, |[a,a]P|, |[a^+,a^+]P|.
/// Probes must keep their top sector <= nmax - 2; otherwise the commutators
/// would report truncation noise and the probe is rejected.
double ccr_residual(const Vector& phi, const Vector& psi, const std::vector<FockVector>& probes);

/// Number operator (sum of per-mode creation*annihilation).
FockVector number_apply(const FockVector& psi);

/// One n-particle sector as a dense pointwise function on (1..modes)^n,
/// row-major with the first slot slowest.
struct PointwiseSector {
  int modes = 0;
  int particles = 0;
  Vector values;  // size modes^particles
};

std::int64_t pointwise_size(int modes, int particles);
Eigen::Index pointwise_index(const std::vector<int>& tuple, int modes);

/// Average over all slot permutations; an idempotent projection.
PointwiseSector symmetrize(const PointwiseSector& sector);

/// Pointwise view of one sector. The value of a basis state |occ> at any
/// compatible tuple is sqrt(prod_i occ_i! / n!).
PointwiseSector to_pointwise(const FockVector& psi, int n);

/// Inverse conversion; non-symmetric input is symmetrized first.
FockVector from_pointwise(const PointwiseSector& sector, int nmax);

}  // namespace bogofock
