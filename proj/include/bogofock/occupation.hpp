#pragma once

#include <cstdint>
#include <vector>

#include "bogofock/types.hpp"

namespace bogofock {

/// Number of occupation vectors (n_1..n_modes) with sum n.
std::int64_t sector_dimension(int modes, int n);

/// Occupation-number basis of one n-particle sector over `modes` modes,
/// enumerated in ascending lexicographic order of (n_1,...,n_modes).
/// The order is part of the serialization contract.
class OccupationBasis {
 public:
  OccupationBasis(int modes, int n);

  int modes() const { return modes_; }
  int particles() const { return n_; }
  Eigen::Index size() const { return static_cast<Eigen::Index>(states_.size()); }

  const std::vector<int>& state(Eigen::Index rank) const { return states_[static_cast<std::size_t>(rank)]; }

  /// Lexicographic rank of an occupation vector; occ must sum to particles().
  Eigen::Index rank(const std::vector<int>& occ) const;

  /// Shared per-(modes, n) instance.
  static const OccupationBasis& get(int modes, int n);

 private:
  int modes_;
  int n_;
  std::vector<std::vector<int>> states_;
};

}  // namespace bogofock
