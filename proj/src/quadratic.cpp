#include "bogofock/quadratic.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <unsupported/Eigen/MatrixFunctions>

namespace bogofock {

namespace {

double sign_factor(PairingSign sign) { return sign == PairingSign::minus ? -1.0 : 1.0; }

Eigen::Index truncated_dimension(int modes, int nmax) {
  Eigen::Index dim = 0;
  for (int n = 0; n <= nmax; ++n) dim += static_cast<Eigen::Index>(sector_dimension(modes, n));
  return dim;
}

Matrix doubled_block(const QuadraticSpec& spec) {
  const Eigen::Index m = spec.h.rows();
  Matrix block(2 * m, 2 * m);
  block.topLeftCorner(m, m) = spec.h;
  block.topRightCorner(m, m) = spec.k;
  block.bottomLeftCorner(m, m) = spec.k.conjugate();
  block.bottomRightCorner(m, m) = spec.h.conjugate();
  return block;
}

}  // namespace

void validate(const QuadraticSpec& spec) {
  if (spec.h.rows() != spec.h.cols() || spec.k.rows() != spec.k.cols() ||
      spec.h.rows() != spec.k.rows())
    throw std::invalid_argument("QuadraticSpec: h, k must be square with equal dimension");
  const double scale = std::max(1.0, std::max(spec.h.cwiseAbs().maxCoeff(), spec.k.cwiseAbs().maxCoeff()));
  if ((spec.h - spec.h.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("QuadraticSpec: h must be self-adjoint");
  if ((spec.k - spec.k.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("QuadraticSpec: k must be symmetric");
}

double gate_margin(const QuadraticSpec& spec) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(doubled_block(spec));
  if (eig.info() != Eigen::Success) throw std::runtime_error("gate_margin: eigensolver failed");
  return eig.eigenvalues().minCoeff();
}

FockVector apply_quadratic(const QuadraticSpec& spec, const FockVector& psi) {
  validate(spec);
  const int modes = static_cast<int>(spec.h.rows());
  if (modes != psi.modes) throw std::invalid_argument("apply_quadratic: mode count mismatch");
  const double sigma = sign_factor(spec.sign);
  FockVector out = FockVector::zero(psi.modes, psi.nmax);
  out.lossy = psi.lossy;
  for (int j = 0; j < modes; ++j) {
    const Vector ej = unit_vector(modes, j);
    // sum_k h_jk a+_j a_k
    out = out + create(ej, annihilate(spec.h.row(j).adjoint(), psi));
    // (sigma/2) (sum_k k_jk a+_j a+_k  +  sum_k conj(k_jk) a_j a_k)
    const Vector krow = spec.k.row(j).transpose();
    out = out + Complex(0.5 * sigma, 0.0) * create(ej, create(krow, psi));
    out = out + Complex(0.5 * sigma, 0.0) * annihilate(ej, annihilate(krow, psi));
  }
  if (spec.k.cwiseAbs().maxCoeff() > 0.0 && psi.sector(psi.nmax).cwiseAbs().maxCoeff() > 0.0)
    out.lossy = true;
  return out;
}

AssembledHamiltonian assemble_quadratic(const QuadraticSpec& spec, int modes, int nmax) {
  validate(spec);
  if (static_cast<int>(spec.h.rows()) != modes)
    throw std::invalid_argument("assemble_quadratic: mode count mismatch");
  const Eigen::Index dim = truncated_dimension(modes, nmax);
  AssembledHamiltonian out;
  out.matrix = Matrix::Zero(dim, dim);
  out.lossy = spec.k.cwiseAbs().maxCoeff() > 0.0;  // top-sector pair couplings are dropped
  Eigen::Index column = 0;
  for (int n = 0; n <= nmax; ++n) {
    const auto& basis = OccupationBasis::get(modes, n);
    for (Eigen::Index r = 0; r < basis.size(); ++r, ++column) {
      const FockVector image = apply_quadratic(spec, basis_state(basis.state(r), nmax));
      Eigen::Index row = 0;
      for (int t = 0; t <= nmax; ++t) {
        out.matrix.block(row, column, image.sector(t).size(), 1) = image.sector(t);
        row += image.sector(t).size();
      }
    }
  }
  return out;
}

FockVector dgamma_apply(const Matrix& e, const FockVector& psi) {
  const int modes = static_cast<int>(e.rows());
  if (modes != psi.modes) throw std::invalid_argument("dgamma_apply: mode count mismatch");
  FockVector out = FockVector::zero(psi.modes, psi.nmax);
  out.lossy = psi.lossy;
  for (int j = 0; j < modes; ++j)
    out = out + create(unit_vector(modes, j), annihilate(e.row(j).adjoint(), psi));
  return out;
}

DiagonalizationResult diagonalize(const QuadraticSpec& spec, int nmax) {
  validate(spec);
  const Eigen::Index m = spec.h.rows();
  QuadraticSpec standard = spec;  // pairing kernel in the +k a+a+ convention
  standard.k = sign_factor(spec.sign) * spec.k;
  standard.sign = PairingSign::plus;

  const Matrix block = doubled_block(standard);
  Eigen::SelfAdjointEigenSolver<Matrix> gate(block);
  if (gate.info() != Eigen::Success) throw std::runtime_error("diagonalize: eigensolver failed");
  const double margin = gate.eigenvalues().minCoeff();
  if (margin <= 1e-12 * std::max(1.0, gate.eigenvalues().cwiseAbs().maxCoeff()))
    throw std::runtime_error("diagonalize: positivity gate failed (block matrix not positive definite)");

  // Cholesky congruence: the Hermitian pencil L* S L has M positive and M
  // negative eigenvalues; positive pairs give the quasiparticle columns.
  const Matrix chol = Matrix(block.llt().matrixL());
  Matrix metric = Matrix::Zero(2 * m, 2 * m);
  metric.topLeftCorner(m, m) = Matrix::Identity(m, m);
  metric.bottomRightCorner(m, m) = -Matrix::Identity(m, m);
  Eigen::SelfAdjointEigenSolver<Matrix> pencil(Matrix(chol.adjoint() * metric * chol));
  if (pencil.info() != Eigen::Success) throw std::runtime_error("diagonalize: pencil eigensolver failed");

  Matrix u0(m, m), v0(m, m);
  RealVector energies(m);
  Eigen::Index column = 0;
  for (Eigen::Index i = 0; i < 2 * m; ++i) {
    const double lambda = pencil.eigenvalues()(i);
    if (lambda <= 0.0) continue;
    if (column >= m) throw std::runtime_error("diagonalize: signature mismatch in the pencil");
    const Vector x = (metric * (chol * pencil.eigenvectors().col(i))) / std::sqrt(lambda);
    u0.col(column) = x.head(m);
    v0.col(column) = -x.tail(m).conjugate();
    energies(column) = lambda;
    ++column;
  }
  if (column != m) throw std::runtime_error("diagonalize: signature mismatch in the pencil");

  // Gauge: rotate so u becomes Hermitian positive. This is deterministic,
  // basis independent under degenerate energies, and reduces k = 0 to the
  // identity map with e = h.
  Eigen::JacobiSVD<Matrix> svd(u0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Matrix polar_unitary = svd.matrixU() * svd.matrixV().adjoint();
  DiagonalizationResult result;
  result.map = make_map(Matrix(u0 * polar_unitary.adjoint()), Matrix(v0 * polar_unitary.transpose()));
  Matrix e = polar_unitary * energies.cast<Complex>().asDiagonal() * polar_unitary.adjoint();
  result.e = 0.5 * (e + e.adjoint());

  const auto constant_at = [&](int n) {
    const FockVector omega = bogoliubov_vacuum(result.map, n);
    return -(inner(omega, apply_quadratic(spec, omega)) / inner(omega, omega)).real();
  };
  result.c = constant_at(nmax);
  result.c_drift = nmax >= 4 ? std::abs(result.c - constant_at(nmax - 2)) : 0.0;
  return result;
}

double conjugation_check(const QuadraticSpec& spec, const DiagonalizationResult& result,
                         const std::vector<std::vector<int>>& probe_words, int nmax) {
  validate(spec);
  const int modes = static_cast<int>(spec.h.rows());
  const FockVector omega = bogoliubov_vacuum(result.map, nmax);
  double residual = 0.0;
  for (const auto& indices : probe_words) {
    const int degree = static_cast<int>(indices.size());
    if (degree > nmax - 4)
      throw std::invalid_argument("conjugation_check: probe degree must stay 4 below nmax");
    std::vector<Vector> word;
    word.reserve(indices.size());
    for (int idx : indices) {
      if (idx < 1 || idx > modes) throw std::invalid_argument("conjugation_check: mode index out of range");
      word.push_back(unit_vector(modes, idx - 1));
    }
    const FockVector implemented = implement(result.map, omega, word);
    const FockVector lhs = apply_quadratic(spec, implemented) + Complex(result.c, 0.0) * implemented;
    // dGamma(e) on a creation word replaces one slot at a time by e.slot.
    FockVector rhs = FockVector::zero(modes, nmax);
    for (std::size_t slot = 0; slot < word.size(); ++slot) {
      std::vector<Vector> rotated = word;
      rotated[slot] = result.e * word[slot];
      rhs = rhs + implement(result.map, omega, rotated);
    }
    const int guard = nmax - degree - 2;
    const double scale = guarded_norm(implemented, guard);
    if (scale == 0.0) throw std::runtime_error("conjugation_check: vanishing probe");
    residual = std::max(residual, guarded_norm(lhs - rhs, guard) / scale);
  }
  return residual;
}

BogoliubovMap generate_bogoliubov(int modes, std::uint64_t seed, double strength) {
  if (modes < 1) throw std::invalid_argument("generate_bogoliubov: modes >= 1 required");
  if (strength < 0.0) throw std::invalid_argument("generate_bogoliubov: strength >= 0 required");
  if (strength == 0.0) return identity_map(modes);
  std::mt19937_64 rng(seed);
  const auto uniform = [&rng]() {
    // 53-bit mantissa draw in [-1, 1); pinned by the mt19937_64 sequence.
    return 2.0 * (double(rng() >> 11) * 0x1p-53) - 1.0;
  };
  Matrix g1(modes, modes), g2(modes, modes);
  for (Eigen::Index r = 0; r < modes; ++r)
    for (Eigen::Index c = 0; c < modes; ++c) {
      g1(r, c) = Complex(uniform(), uniform());
      g2(r, c) = Complex(uniform(), uniform());
    }
  const Matrix anti = 0.5 * (g1 - g1.adjoint());      // anti-Hermitian block
  const Matrix pairing = 0.5 * (g2 + g2.transpose()); // symmetric block
  Matrix generator(2 * modes, 2 * modes);
  generator.topLeftCorner(modes, modes) = anti;
  generator.topRightCorner(modes, modes) = pairing;
  generator.bottomLeftCorner(modes, modes) = pairing.conjugate();
  generator.bottomRightCorner(modes, modes) = anti.conjugate();
  const double generator_norm = operator_norm(generator);
  if (generator_norm == 0.0) return identity_map(modes);
  // |v| <= exp(|X|) - 1, so scaling to log(1 + strength) bounds |v|.
  const double scale = std::log1p(strength) / generator_norm;
  const Matrix exponential = Matrix(scale * generator).exp();
  return make_map(Matrix(exponential.topLeftCorner(modes, modes)),
                  Matrix(exponential.topRightCorner(modes, modes)));
}

}  // namespace bogofock
