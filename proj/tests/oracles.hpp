#pragma once

// Test-only oracles: brute-force reference implementations kept independent
// of the production code paths they check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "bogofock/fock.hpp"
#include "bogofock/mode_operator.hpp"

namespace bogofock::oracle {

inline std::vector<int> decode_tuple(Eigen::Index idx, int modes, int slots) {
  std::vector<int> tuple(static_cast<std::size_t>(slots), 1);
  for (int i = slots - 1; i >= 0; --i) {
    tuple[static_cast<std::size_t>(i)] = static_cast<int>(idx % modes) + 1;
    idx /= modes;
  }
  return tuple;
}

inline Eigen::Index encode_tuple(const std::vector<int>& tuple, int modes) {
  Eigen::Index idx = 0;
  for (int j : tuple) idx = idx * modes + (j - 1);
  return idx;
}

// Creation straight from the defining pointwise formula:
// (a+(phi) Psi)(j_1..j_N) = N^{-1/2} sum_l phi_{j_l} Psi(.. without j_l ..)
inline PointwiseSector pointwise_create(const Vector& phi, const PointwiseSector& in) {
  PointwiseSector out;
  out.modes = in.modes;
  out.particles = in.particles + 1;
  out.values = Vector::Zero(pointwise_size(in.modes, out.particles));
  const int n = out.particles;
  for (Eigen::Index idx = 0; idx < out.values.size(); ++idx) {
    const std::vector<int> tuple = decode_tuple(idx, in.modes, n);
    Complex acc(0.0, 0.0);
    for (int l = 0; l < n; ++l) {
      std::vector<int> reduced;
      for (int s = 0; s < n; ++s)
        if (s != l) reduced.push_back(tuple[static_cast<std::size_t>(s)]);
      acc += phi(tuple[static_cast<std::size_t>(l)] - 1) * in.values(encode_tuple(reduced, in.modes));
    }
    out.values(idx) = acc / std::sqrt(double(n));
  }
  return out;
}

// (a(phi) Psi)(j_1..j_N) = sqrt(N+1) sum_j conj(phi_j) Psi(j_1..j_N, j)
inline PointwiseSector pointwise_annihilate(const Vector& phi, const PointwiseSector& in) {
  PointwiseSector out;
  out.modes = in.modes;
  out.particles = in.particles - 1;
  out.values = Vector::Zero(pointwise_size(in.modes, out.particles));
  for (Eigen::Index idx = 0; idx < out.values.size(); ++idx) {
    std::vector<int> tuple = decode_tuple(idx, in.modes, out.particles);
    tuple.push_back(1);
    Complex acc(0.0, 0.0);
    for (int j = 1; j <= in.modes; ++j) {
      tuple.back() = j;
      acc += std::conj(phi(j - 1)) * in.values(encode_tuple(tuple, in.modes));
    }
    out.values(idx) = std::sqrt(double(in.particles)) * acc;
  }
  return out;
}

// Symmetrization by explicit enumeration of all slot permutations.
inline PointwiseSector symmetrize_brute(const PointwiseSector& in) {
  PointwiseSector out = in;
  const int n = in.particles;
  if (n <= 1) return out;
  double permutations = 1.0;
  for (int i = 2; i <= n; ++i) permutations *= i;
  for (Eigen::Index idx = 0; idx < in.values.size(); ++idx) {
    const std::vector<int> tuple = decode_tuple(idx, in.modes, n);
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Complex acc(0.0, 0.0);
    do {
      std::vector<int> permuted(static_cast<std::size_t>(n));
      for (int s = 0; s < n; ++s)
        permuted[static_cast<std::size_t>(s)] = tuple[static_cast<std::size_t>(order[static_cast<std::size_t>(s)])];
      acc += in.values(encode_tuple(permuted, in.modes));
    } while (std::next_permutation(order.begin(), order.end()));
    out.values(idx) = acc / permutations;
  }
  return out;
}

// Dense matrix of a(phi) over the sector-major truncated basis, built from
// the elementary sqrt(n_j) rule.
inline Matrix annihilation_matrix(const Vector& phi, int modes, int nmax) {
  Eigen::Index dim = 0;
  std::vector<Eigen::Index> offsets;
  for (int n = 0; n <= nmax; ++n) {
    offsets.push_back(dim);
    dim += static_cast<Eigen::Index>(sector_dimension(modes, n));
  }
  Matrix out = Matrix::Zero(dim, dim);
  for (int n = 1; n <= nmax; ++n) {
    const auto& from = OccupationBasis::get(modes, n);
    const auto& to = OccupationBasis::get(modes, n - 1);
    for (Eigen::Index r = 0; r < from.size(); ++r) {
      std::vector<int> occ = from.state(r);
      for (int j = 0; j < modes; ++j) {
        if (occ[static_cast<std::size_t>(j)] == 0) continue;
        const double amp = std::sqrt(double(occ[static_cast<std::size_t>(j)]));
        occ[static_cast<std::size_t>(j)] -= 1;
        out(offsets[static_cast<std::size_t>(n - 1)] + to.rank(occ), offsets[static_cast<std::size_t>(n)] + r) +=
            std::conj(phi(j)) * amp;
        occ[static_cast<std::size_t>(j)] += 1;
      }
    }
  }
  return out;
}

// Transformed vacuum by solving the annihilation conditions sector by
// sector, sector 0 pinned to 1; independent of the pair kernel.
inline FockVector vacuum_recursion(const BogoliubovMap& map, int nmax) {
  const int modes = static_cast<int>(map.dim());
  FockVector omega = vacuum(modes, nmax);
  for (int m = 0; 2 * m + 2 <= nmax; ++m) {
    const auto& mid = OccupationBasis::get(modes, 2 * m + 1);
    const auto& top = OccupationBasis::get(modes, 2 * m + 2);
    Matrix lhs = Matrix::Zero(modes * mid.size(), top.size());
    Vector rhs = Vector::Zero(modes * mid.size());
    for (int j = 0; j < modes; ++j) {
      const Vector annihilated = map.u.entries * unit_vector(modes, j);
      const Vector created = map.v.entries * unit_vector(modes, j).conjugate();
      for (Eigen::Index r = 0; r < top.size(); ++r) {
        FockVector column = FockVector::zero(modes, nmax);
        column.sector(2 * m + 2)(r) = Complex(1.0, 0.0);
        lhs.block(j * mid.size(), r, mid.size(), 1) = annihilate(annihilated, column).sector(2 * m + 1);
      }
      FockVector low = FockVector::zero(modes, nmax);
      low.sector(2 * m) = omega.sector(2 * m);
      rhs.segment(j * mid.size(), mid.size()) = -create(created, low).sector(2 * m + 1);
    }
    omega.sector(2 * m + 2) = lhs.colPivHouseholderQr().solve(rhs);
  }
  return omega;
}

inline double partial_sum(int m, double exponent) {
  double sum = 0.0;
  for (int j = 1; j <= m; ++j) sum += 1.0 / std::pow(double(j), exponent);
  return sum;
}

}  // namespace bogofock::oracle
