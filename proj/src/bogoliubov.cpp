#include "bogofock/bogoliubov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bogofock {

FockVector quasi_create(const BogoliubovMap& map, const Vector& phi, const FockVector& psi) {
  if (map.dim() != psi.modes) throw std::invalid_argument("quasi_create: mode count mismatch");
  return create(map.u.entries * phi, psi) + annihilate(map.v.entries * phi.conjugate(), psi);
}

FockVector quasi_annihilate(const BogoliubovMap& map, const Vector& phi, const FockVector& psi) {
  if (map.dim() != psi.modes) throw std::invalid_argument("quasi_annihilate: mode count mismatch");
  return create(map.v.entries * phi.conjugate(), psi) + annihilate(map.u.entries * phi, psi);
}

FockVector bogoliubov_vacuum(const BogoliubovMap& map, int nmax, double tol) {
  const PairOperator pair = pair_operator(map, tol);
  const int modes = static_cast<int>(map.dim());
  FockVector omega = vacuum(modes, nmax);
  FockVector term = omega;
  for (int m = 1; 2 * m <= nmax; ++m) {
    // Twice the two-particle pair creation, sum_{j,k} K(j,k) a+_j a+_k,
    // grouped per kernel row; the accumulated factor 2^m is exactly the
    // rescaling of the m-fold pair power to the vacuum normalization.
    FockVector doubled_pair = FockVector::zero(modes, nmax);
    for (int j = 0; j < modes; ++j) {
      const Vector row = pair.kernel.row(j).transpose();
      doubled_pair = doubled_pair + create(unit_vector(modes, j), create(row, term));
    }
    term = Complex(1.0 / double(m), 0.0) * doubled_pair;
    omega = omega + term;
  }
  omega.lossy = false;  // every kept sector is exact; nothing above nmax was requested
  return omega;
}

std::vector<std::pair<int, double>> vacuum_annihilation_residuals(const BogoliubovMap& map,
                                                                  const FockVector& omega,
                                                                  const Vector& phi) {
  const FockVector image = quasi_annihilate(map, phi, omega);
  std::vector<std::pair<int, double>> out;
  for (int n = 1; n <= omega.nmax - 1; n += 2) out.emplace_back(n, image.sector(n).norm());
  return out;
}

DressedModes dressed_modes(const BogoliubovMap& map, double tol) {
  const PairOperator pair = pair_operator(map, tol);
  const ModeOperator j = conjugation_j(map.dim());
  const ModeOperator half = compose(pair.op, j);           // antilinear
  const ModeOperator contraction = compose(half, half);    // linear again
  const Matrix direct = map.u.entries + 2.0 * compose(half, compose(map.v, j)).entries;
  const Matrix contracted =
      (Matrix::Identity(map.dim(), map.dim()) - 4.0 * contraction.entries) * map.u.entries;
  DressedModes out;
  out.matrix = contracted;
  out.dual_path_gap = (direct - contracted).cwiseAbs().maxCoeff();
  out.contraction_norm = operator_norm(Matrix(4.0 * contraction.entries));
  const auto svd = out.matrix.jacobiSvd();
  out.sigma_min = svd.singularValues()(svd.singularValues().size() - 1);
  return out;
}

FockVector implement(const BogoliubovMap& map, const FockVector& omega,
                     const std::vector<Vector>& creation_list) {
  FockVector out = omega;
  for (auto it = creation_list.rbegin(); it != creation_list.rend(); ++it)
    out = quasi_create(map, *it, out);
  return out;
}

double guarded_norm(const FockVector& psi, int top) {
  double sum = 0.0;
  for (int n = 0; n <= std::min(top, psi.nmax); ++n) sum += psi.sector(n).squaredNorm();
  return std::sqrt(sum);
}

double intertwining_residual(const BogoliubovMap& map,
                             const std::vector<std::vector<Vector>>& family,
                             const std::vector<Vector>& phis, int nmax) {
  const FockVector omega = bogoliubov_vacuum(map, nmax);
  double residual = 0.0;
  for (const auto& word : family) {
    const int degree = static_cast<int>(word.size());
    const int guard = nmax - degree - 1;
    if (guard < 0) throw std::invalid_argument("intertwining_residual: word too long for nmax");
    const FockVector base = implement(map, omega, word);
    for (const Vector& phi : phis) {
      // Creation side: the implementer on the extended word versus the
      // quasiparticle creation on the implemented word.
      std::vector<Vector> extended = word;
      extended.push_back(phi);
      const FockVector lhs_create = implement(map, omega, extended);
      const FockVector rhs_create = quasi_create(map, phi, base);
      residual = std::max(residual, guarded_norm(lhs_create - rhs_create, guard));
      // Annihilation side: commute a(phi) through the word (a Omega = 0).
      FockVector lhs_annihilate = FockVector::zero(omega.modes, nmax);
      for (std::size_t k = 0; k < word.size(); ++k) {
        std::vector<Vector> shortened;
        shortened.reserve(word.size() - 1);
        for (std::size_t l = 0; l < word.size(); ++l)
          if (l != k) shortened.push_back(word[l]);
        lhs_annihilate = lhs_annihilate + phi.dot(word[k]) * implement(map, omega, shortened);
      }
      const FockVector rhs_annihilate = quasi_annihilate(map, phi, base);
      residual = std::max(residual, guarded_norm(lhs_annihilate - rhs_annihilate, guard));
    }
  }
  return residual;
}

std::vector<std::vector<Vector>> occupation_words(int modes, int degree) {
  const auto& basis = OccupationBasis::get(modes, degree);
  std::vector<std::vector<Vector>> words;
  words.reserve(static_cast<std::size_t>(basis.size()));
  for (Eigen::Index r = 0; r < basis.size(); ++r) {
    std::vector<Vector> word;
    const auto& occ = basis.state(r);
    for (int j = 0; j < modes; ++j)
      for (int rep = 0; rep < occ[static_cast<std::size_t>(j)]; ++rep)
        word.push_back(unit_vector(modes, j));
    words.push_back(std::move(word));
  }
  return words;
}

GramWitness implemented_gram(const BogoliubovMap& map, const FockVector& omega, int degree,
                             int nmax) {
  const auto words = occupation_words(static_cast<int>(map.dim()), degree);
  std::vector<FockVector> implemented;
  implemented.reserve(words.size());
  for (const auto& word : words) implemented.push_back(implement(map, omega, word));
  Matrix gram(words.size(), words.size());
  for (std::size_t a = 0; a < words.size(); ++a)
    for (std::size_t b = 0; b < words.size(); ++b)
      gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
          inner(implemented[a], implemented[b]);
  const auto singular_values = gram.jacobiSvd().singularValues();
  GramWitness out;
  out.degree = degree;
  out.sigma_max = singular_values(0);
  out.sigma_min = singular_values(singular_values.size() - 1);
  out.cond = out.sigma_min > 0.0 ? out.sigma_max / out.sigma_min
                                 : std::numeric_limits<double>::infinity();
  (void)nmax;
  return out;
}

ImplementerInverse::ImplementerInverse(const BogoliubovMap& map,
                                       std::vector<std::vector<Vector>> words, int nmax)
    : modes_(static_cast<int>(map.dim())), nmax_(nmax), words_(std::move(words)) {
  const FockVector omega = bogoliubov_vacuum(map, nmax);
  implemented_.reserve(words_.size());
  for (const auto& word : words_) implemented_.push_back(implement(map, omega, word));
  const Eigen::Index size = static_cast<Eigen::Index>(words_.size());
  Matrix gram(size, size);
  for (Eigen::Index a = 0; a < size; ++a)
    for (Eigen::Index b = 0; b < size; ++b)
      gram(a, b) = inner(implemented_[static_cast<std::size_t>(a)],
                         implemented_[static_cast<std::size_t>(b)]);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
  if (eig.info() != Eigen::Success) throw std::runtime_error("ImplementerInverse: eigensolver failed");
  const double largest = eig.eigenvalues().cwiseAbs().maxCoeff();
  if (largest <= 0.0 || eig.eigenvalues().minCoeff() <= 1e-12 * largest)
    throw std::runtime_error("ImplementerInverse: singular Gram matrix");
  gram_inverse_ = eig.eigenvectors() *
                  eig.eigenvalues().cwiseInverse().asDiagonal().toDenseMatrix().cast<Complex>() *
                  eig.eigenvectors().adjoint();
}

FockVector ImplementerInverse::apply(const FockVector& target) const {
  const Eigen::Index size = static_cast<Eigen::Index>(words_.size());
  Vector projections(size);
  for (Eigen::Index a = 0; a < size; ++a)
    projections(a) = inner(implemented_[static_cast<std::size_t>(a)], target);
  const Vector coefficients = gram_inverse_ * projections;
  FockVector out = FockVector::zero(modes_, nmax_);
  for (Eigen::Index a = 0; a < size; ++a) {
    FockVector word_state = vacuum(modes_, nmax_);
    const auto& word = words_[static_cast<std::size_t>(a)];
    for (auto it = word.rbegin(); it != word.rend(); ++it) word_state = create(*it, word_state);
    out = out + coefficients(a) * word_state;
  }
  return out;
}

}  // namespace bogofock
