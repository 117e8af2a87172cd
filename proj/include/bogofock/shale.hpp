#pragma once

#include <functional>
#include <vector>

#include "bogofock/types.hpp"

namespace bogofock {

enum class Verdict { convergent, divergent, inconclusive };

const char* to_string(Verdict v);

/// Truncated Shale--Stinespring diagnostic: partial traces tr_M(v* v) over a
/// nested family of truncations. The verdict classifies the growth of the
/// partial sums; it is a diagnostic, never a proof.
struct ConvergenceProbe {
  std::vector<int> sizes;
  std::vector<double> partial_traces;  // non-decreasing for nested families
  Verdict verdict = Verdict::inconclusive;
  double rate_estimate = 0.0;  // observed ratio of successive increments
};

/// `v_family(M)` must return the M x M leading block of one fixed operator
/// family; `sizes` must be strictly ascending.
ConvergenceProbe shale_stinespring_probe(const std::function<Matrix(int)>& v_family,
                                         const std::vector<int>& sizes);

}  // namespace bogofock
