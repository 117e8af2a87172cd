#pragma once

#include <cstdint>
#include <vector>

#include "bogofock/bogoliubov.hpp"
#include "bogofock/fock.hpp"
#include "bogofock/mode_operator.hpp"
#include "bogofock/types.hpp"

namespace bogofock {

/// Sign of the pairing terms. `minus` gives
///   H = sum h a+a - 1/2 sum (k a+a+ + conj(k) aa),
/// `plus` flips both pairing terms; either way H is self-adjoint and the
/// two choices are related by k -> -k, so all checks are covariant under
/// the flip.
enum class PairingSign { minus, plus };

struct QuadraticSpec {
  Matrix h;  // self-adjoint
  Matrix k;  // symmetric
  PairingSign sign = PairingSign::minus;
};

/// Shape and symmetry invariants; throws on violation.
void validate(const QuadraticSpec& spec);

/// Smallest eigenvalue of the doubled-space block matrix [[h, k], [conj(k),
/// conj(h)]]. The diagonalization gate requires it to be strictly positive.
double gate_margin(const QuadraticSpec& spec);

/// Apply the Hamiltonian through creation/annihilation operators.
FockVector apply_quadratic(const QuadraticSpec& spec, const FockVector& psi);

/// Matrix of H over the truncated basis, sector-major (particle number
/// ascending, occupation lexicographic within a sector). Couplings out of
/// the top sectors are dropped and reported lossy.
struct AssembledHamiltonian {
  Matrix matrix;
  bool lossy = false;
};

AssembledHamiltonian assemble_quadratic(const QuadraticSpec& spec, int modes, int nmax);

/// Second quantization of the one-particle operator e.
FockVector dgamma_apply(const Matrix& e, const FockVector& psi);

struct DiagonalizationResult {
  BogoliubovMap map;
  Matrix e;              // self-adjoint positive one-particle energy
  double c = 0.0;        // truncation normal-ordering constant (vacuum expectation)
  double c_drift = 0.0;  // |c(nmax) - c(nmax - 2)|, truncation-convergence indicator
};

/// Finite-dimensional symplectic diagonalization via the Cholesky
/// congruence of the doubled-space block matrix, gauge-fixed so that the
/// (u, v) pair is canonical (u Hermitian positive). Rejects specs failing
/// the positivity gate. The constant c is the ground-state-energy shift at
/// truncation, -<omega, H omega>/<omega, omega>.
DiagonalizationResult diagonalize(const QuadraticSpec& spec, int nmax);

/// Max over probe creation words (mode indices, degree <= nmax - 4) of
///   |(H + c) U psi - U dGamma(e) psi| / |U psi|,
/// with both norms restricted to the truncation-exact sectors.
double conjugation_check(const QuadraticSpec& spec, const DiagonalizationResult& result,
                         const std::vector<std::vector<int>>& probe_words, int nmax);

/// Deterministic valid Bogoliubov map: the exponential of a random
/// generator in the Lie algebra of the Bogoliubov group, scaled so that
/// |v| <= strength. strength 0 yields the identity map.
BogoliubovMap generate_bogoliubov(int modes, std::uint64_t seed, double strength);

}  // namespace bogofock
