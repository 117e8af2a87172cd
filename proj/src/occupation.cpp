#include "bogofock/occupation.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

namespace bogofock {

std::int64_t sector_dimension(int modes, int n) {
  if (modes < 1 || n < 0) throw std::invalid_argument("sector_dimension: modes >= 1, n >= 0 required");
  // C(n + modes - 1, modes - 1)
  std::int64_t result = 1;
  for (int i = 1; i <= modes - 1; ++i) {
    result = result * (n + i) / i;
  }
  return result;
}

OccupationBasis::OccupationBasis(int modes, int n) : modes_(modes), n_(n) {
  if (modes < 1 || n < 0) throw std::invalid_argument("OccupationBasis: modes >= 1, n >= 0 required");
  states_.reserve(static_cast<std::size_t>(sector_dimension(modes, n)));
  std::vector<int> occ(static_cast<std::size_t>(modes), 0);
  // Depth-first fill in ascending lexicographic order.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == modes - 1) {
      occ[static_cast<std::size_t>(pos)] = remaining;
      states_.push_back(occ);
      return;
    }
    for (int t = 0; t <= remaining; ++t) {
      occ[static_cast<std::size_t>(pos)] = t;
      self(self, pos + 1, remaining - t);
    }
  };
  fill(fill, 0, n);
}

Eigen::Index OccupationBasis::rank(const std::vector<int>& occ) const {
  if (static_cast<int>(occ.size()) != modes_) throw std::invalid_argument("rank: wrong occupation length");
  std::int64_t idx = 0;
  int remaining = n_;
  for (int i = 0; i < modes_ - 1; ++i) {
    const int ni = occ[static_cast<std::size_t>(i)];
    for (int t = 0; t < ni; ++t) idx += sector_dimension(modes_ - 1 - i, remaining - t);
    remaining -= ni;
  }
  if (remaining != occ[static_cast<std::size_t>(modes_ - 1)])
    throw std::invalid_argument("rank: occupation does not sum to the sector particle number");
  return static_cast<Eigen::Index>(idx);
}

const OccupationBasis& OccupationBasis::get(int modes, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, OccupationBasis> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({modes, n});
  if (it == cache.end()) it = cache.emplace(std::make_pair(modes, n), OccupationBasis(modes, n)).first;
  return it->second;
}

}  // namespace bogofock
