#include "bogofock/shale.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bogofock {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::convergent: return "convergent";
    case Verdict::divergent: return "divergent";
    default: return "inconclusive";
  }
}

ConvergenceProbe shale_stinespring_probe(const std::function<Matrix(int)>& v_family,
                                         const std::vector<int>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("shale_stinespring_probe: sizes must be non-empty");
  for (std::size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1]) throw std::invalid_argument("shale_stinespring_probe: sizes must be ascending");

  ConvergenceProbe probe;
  probe.sizes = sizes;
  probe.partial_traces.reserve(sizes.size());
  for (int m : sizes) {
    const Matrix v = v_family(m);
    if (v.rows() != m || v.cols() != m) throw std::invalid_argument("shale_stinespring_probe: family returned wrong size");
    probe.partial_traces.push_back(v.squaredNorm());  // tr(v* v)
  }

  const double scale = std::max(1.0, probe.partial_traces.back());
  const double zero_tol = 1e-14 * scale;
  std::vector<double> increments;
  for (std::size_t i = 1; i < probe.partial_traces.size(); ++i) {
    const double d = probe.partial_traces[i] - probe.partial_traces[i - 1];
    if (d < -1e-12 * scale) throw std::invalid_argument("shale_stinespring_probe: family is not nested");
    increments.push_back(std::max(d, 0.0));
  }

  const bool all_zero = std::all_of(increments.begin(), increments.end(),
                                    [&](double d) { return d <= zero_tol; });
  if (all_zero) {
    probe.verdict = Verdict::convergent;
    probe.rate_estimate = 0.0;
    return probe;
  }

  // Ratio test on successive increments with a fixed margin.
  constexpr double kMargin = 0.1;
  std::vector<double> ratios;
  bool vanished_then_grew = false;
  for (std::size_t i = 1; i < increments.size(); ++i) {
    if (increments[i - 1] <= zero_tol) {
      if (increments[i] > zero_tol) vanished_then_grew = true;
      continue;
    }
    ratios.push_back(increments[i] / increments[i - 1]);
  }
  if (ratios.empty() || vanished_then_grew) {
    probe.verdict = Verdict::inconclusive;
    probe.rate_estimate = 0.0;
    return probe;
  }
  const double r_max = *std::max_element(ratios.begin(), ratios.end());
  const double r_min = *std::min_element(ratios.begin(), ratios.end());
  probe.rate_estimate = r_max;
  if (r_max <= 1.0 - kMargin) {
    probe.verdict = Verdict::convergent;
  } else if (r_min >= 1.0 - kMargin) {
    probe.verdict = Verdict::divergent;
  } else {
    probe.verdict = Verdict::inconclusive;
  }
  return probe;
}

}  // namespace bogofock
