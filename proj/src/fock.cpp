#include "bogofock/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace bogofock {

namespace {

void check_compatible(const FockVector& a, const FockVector& b, const char* who) {
  if (a.modes != b.modes || a.nmax != b.nmax) throw std::invalid_argument(std::string(who) + ": truncation mismatch");
}

double occupation_weight(const std::vector<int>& occ, int n) {
  // sqrt(prod_i occ_i! / n!)
  double log_w = 0.0;
  for (int o : occ) log_w += std::lgamma(o + 1.0);
  log_w -= std::lgamma(n + 1.0);
  return std::exp(0.5 * log_w);
}

}  // namespace

FockVector FockVector::zero(int modes, int nmax) {
  if (modes < 1 || nmax < 0) throw std::invalid_argument("FockVector: modes >= 1, nmax >= 0 required");
  FockVector out;
  out.modes = modes;
  out.nmax = nmax;
  out.sectors.reserve(static_cast<std::size_t>(nmax) + 1);
  for (int n = 0; n <= nmax; ++n) out.sectors.emplace_back(Vector::Zero(sector_dimension(modes, n)));
  return out;
}

int FockVector::top_sector() const {
  for (int n = nmax; n >= 0; --n)
    if (sector(n).cwiseAbs().maxCoeff() > 0.0) return n;
  return -1;
}

FockVector vacuum(int modes, int nmax) {
  FockVector out = FockVector::zero(modes, nmax);
  out.sector(0)(0) = Complex(1.0, 0.0);
  return out;
}

FockVector basis_state(const std::vector<int>& occ, int nmax) {
  const int modes = static_cast<int>(occ.size());
  int n = 0;
  for (int o : occ) n += o;
  if (n > nmax) throw std::invalid_argument("basis_state: particle number exceeds nmax");
  FockVector out = FockVector::zero(modes, nmax);
  out.sector(n)(OccupationBasis::get(modes, n).rank(occ)) = Complex(1.0, 0.0);
  return out;
}

FockVector operator+(const FockVector& a, const FockVector& b) {
  check_compatible(a, b, "operator+");
  FockVector out = a;
  out.lossy = a.lossy || b.lossy;
  for (int n = 0; n <= a.nmax; ++n) out.sector(n) += b.sector(n);
  return out;
}

FockVector operator-(const FockVector& a, const FockVector& b) {
  check_compatible(a, b, "operator-");
  FockVector out = a;
  out.lossy = a.lossy || b.lossy;
  for (int n = 0; n <= a.nmax; ++n) out.sector(n) -= b.sector(n);
  return out;
}

FockVector operator*(const Complex& c, const FockVector& a) {
  FockVector out = a;
  for (auto& s : out.sectors) s *= c;
  return out;
}

Complex inner(const FockVector& a, const FockVector& b) {
  check_compatible(a, b, "inner");
  Complex out(0.0, 0.0);
  for (int n = 0; n <= a.nmax; ++n) out += a.sector(n).dot(b.sector(n));
  return out;
}

double norm(const FockVector& a) { return std::sqrt(std::abs(inner(a, a))); }

FockVector create(const Vector& phi, const FockVector& psi) {
  if (phi.size() != psi.modes) throw std::invalid_argument("create: phi dimension mismatch");
  FockVector out = FockVector::zero(psi.modes, psi.nmax);
  out.lossy = psi.lossy;
  for (int n = 0; n < psi.nmax; ++n) {
    const auto& basis_in = OccupationBasis::get(psi.modes, n);
    const auto& basis_out = OccupationBasis::get(psi.modes, n + 1);
    const Vector& in = psi.sector(n);
    Vector& target = out.sector(n + 1);
    for (Eigen::Index r = 0; r < in.size(); ++r) {
      const Complex c = in(r);
      if (c == Complex(0.0, 0.0)) continue;
      std::vector<int> occ = basis_in.state(r);
      for (int j = 0; j < psi.modes; ++j) {
        if (phi(j) == Complex(0.0, 0.0)) continue;
        occ[static_cast<std::size_t>(j)] += 1;
        target(basis_out.rank(occ)) += phi(j) * std::sqrt(double(occ[static_cast<std::size_t>(j)])) * c;
        occ[static_cast<std::size_t>(j)] -= 1;
      }
    }
  }
  if (psi.sector(psi.nmax).cwiseAbs().maxCoeff() > 0.0 && phi.cwiseAbs().maxCoeff() > 0.0) out.lossy = true;
  return out;
}

FockVector annihilate(const Vector& phi, const FockVector& psi) {
  if (phi.size() != psi.modes) throw std::invalid_argument("annihilate: phi dimension mismatch");
  FockVector out = FockVector::zero(psi.modes, psi.nmax);
  out.lossy = psi.lossy;
  for (int n = 1; n <= psi.nmax; ++n) {
    const auto& basis_in = OccupationBasis::get(psi.modes, n);
    const auto& basis_out = OccupationBasis::get(psi.modes, n - 1);
    const Vector& in = psi.sector(n);
    Vector& target = out.sector(n - 1);
    for (Eigen::Index r = 0; r < in.size(); ++r) {
      const Complex c = in(r);
      if (c == Complex(0.0, 0.0)) continue;
      std::vector<int> occ = basis_in.state(r);
      for (int j = 0; j < psi.modes; ++j) {
        if (occ[static_cast<std::size_t>(j)] == 0 || phi(j) == Complex(0.0, 0.0)) continue;
        const double amp = std::sqrt(double(occ[static_cast<std::size_t>(j)]));
        occ[static_cast<std::size_t>(j)] -= 1;
        target(basis_out.rank(occ)) += std::conj(phi(j)) * amp * c;
        occ[static_cast<std::size_t>(j)] += 1;
      }
    }
  }
  return out;
}

double ccr_residual(const Vector& phi, const Vector& psi, const std::vector<FockVector>& probes) {
  double residual = 0.0;
  for (const FockVector& probe : probes) {
    if (probe.top_sector() > probe.nmax - 2)
      throw std::invalid_argument("ccr_residual: probe occupies sectors above nmax - 2");
    const Complex pairing = phi.dot(psi);  // sum_j conj(phi_j) psi_j
    const FockVector commutator =
        annihilate(phi, create(psi, probe)) - create(psi, annihilate(phi, probe)) - pairing * probe;
    const FockVector ann_ann = annihilate(phi, annihilate(psi, probe)) - annihilate(psi, annihilate(phi, probe));
    const FockVector cre_cre = create(phi, create(psi, probe)) - create(psi, create(phi, probe));
    residual = std::max({residual, norm(commutator), norm(ann_ann), norm(cre_cre)});
  }
  return residual;
}

FockVector number_apply(const FockVector& psi) {
  FockVector out = psi;
  for (int n = 0; n <= psi.nmax; ++n) out.sector(n) *= Complex(double(n), 0.0);
  return out;
}

std::int64_t pointwise_size(int modes, int particles) {
  std::int64_t size = 1;
  for (int i = 0; i < particles; ++i) {
    size *= modes;
    if (size > kPointwiseCap) throw std::invalid_argument("pointwise array exceeds the size cap");
  }
  return size;
}

Eigen::Index pointwise_index(const std::vector<int>& tuple, int modes) {
  std::int64_t idx = 0;
  for (int j : tuple) idx = idx * modes + (j - 1);
  return static_cast<Eigen::Index>(idx);
}

namespace {

std::vector<int> decode_tuple(Eigen::Index idx, int modes, int particles) {
  std::vector<int> tuple(static_cast<std::size_t>(particles), 1);
  for (int i = particles - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<int>(idx % modes) + 1;
    idx /= modes;
  }
  return tuple;
}

}  // namespace

PointwiseSector symmetrize(const PointwiseSector& sector) {
  const int n = sector.particles;
  if (n <= 1) return sector;
  // The symmetrization of a tuple equals the average of the input over the
  // tuple's permutation orbit; accumulate orbit sums keyed by sorted tuple.
  std::map<std::vector<int>, std::pair<Complex, std::int64_t>> orbit;
  const Eigen::Index size = sector.values.size();
  for (Eigen::Index idx = 0; idx < size; ++idx) {
    std::vector<int> key = decode_tuple(idx, sector.modes, n);
    std::sort(key.begin(), key.end());
    auto& slot = orbit[key];
    slot.first += sector.values(idx);
    slot.second += 1;
  }
  PointwiseSector out = sector;
  for (Eigen::Index idx = 0; idx < size; ++idx) {
    std::vector<int> key = decode_tuple(idx, sector.modes, n);
    std::sort(key.begin(), key.end());
    const auto& slot = orbit[key];
    out.values(idx) = slot.first / double(slot.second);
  }
  return out;
}

PointwiseSector to_pointwise(const FockVector& psi, int n) {
  if (n < 0 || n > psi.nmax) throw std::invalid_argument("to_pointwise: sector out of range");
  PointwiseSector out;
  out.modes = psi.modes;
  out.particles = n;
  out.values = Vector::Zero(pointwise_size(psi.modes, n));
  const auto& basis = OccupationBasis::get(psi.modes, n);
  const Vector& coeffs = psi.sector(n);
  for (Eigen::Index idx = 0; idx < out.values.size(); ++idx) {
    std::vector<int> tuple = decode_tuple(idx, psi.modes, n);
    std::vector<int> occ(static_cast<std::size_t>(psi.modes), 0);
    for (int j : tuple) occ[static_cast<std::size_t>(j - 1)] += 1;
    const Complex c = coeffs(basis.rank(occ));
    if (c == Complex(0.0, 0.0)) continue;
    out.values(idx) = c * occupation_weight(occ, n);
  }
  return out;
}

FockVector from_pointwise(const PointwiseSector& sector, int nmax) {
  if (sector.particles > nmax) throw std::invalid_argument("from_pointwise: sector exceeds nmax");
  const PointwiseSector sym = symmetrize(sector);
  FockVector out = FockVector::zero(sector.modes, nmax);
  const auto& basis = OccupationBasis::get(sector.modes, sector.particles);
  Vector& coeffs = out.sector(sector.particles);
  for (Eigen::Index r = 0; r < basis.size(); ++r) {
    const std::vector<int>& occ = basis.state(r);
    // Read the value at the canonical non-decreasing tuple of this orbit.
    std::vector<int> tuple;
    tuple.reserve(static_cast<std::size_t>(sector.particles));
    for (int j = 0; j < sector.modes; ++j)
      for (int rep = 0; rep < occ[static_cast<std::size_t>(j)]; ++rep) tuple.push_back(j + 1);
    const Complex value =
        sector.particles == 0 ? sym.values(0) : sym.values(pointwise_index(tuple, sector.modes));
    coeffs(r) = value / occupation_weight(occ, sector.particles);
  }
  return out;
}

}  // namespace bogofock
