#pragma once

// Seeded generators for property trials. Every trial gets its own engine
// derived from (seed, trial), so trials are reproducible in isolation.

#include <algorithm>
#include <cstdint>
#include <random>

#include "fnorm/step_function.hpp"

namespace fnorm {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(trial + 0x5851f42d4c957f2dULL)));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

struct RandomStepOptions {
  int max_pieces = 6;
  double support_fraction = 1.0;  // support inside [0, fraction * T)
  double max_value = 2.0;
  bool nonnegative = true;
  double zero_probability = 0.2;  // chance that a piece is a gap
  int dyadic_bits = 10;           // breakpoints are multiples of T 2^-bits
};

/// Random step function with dyadic breakpoints, so sums of piece lengths
/// are exact and rearrangement comparisons can be exact.
inline StepFunction random_step(std::mt19937_64& rng, const MeasureDomain& domain,
                                const RandomStepOptions& opts = {}) {
  const int cells = 1 << opts.dyadic_bits;
  const int limit = std::max(1, static_cast<int>(opts.support_fraction * cells));
  const double unit = domain.horizon / cells;
  int pieces = uniform_int(rng, 1, opts.max_pieces);
  std::vector<int> cuts;
  for (int i = 0; i < pieces; ++i) cuts.push_back(uniform_int(rng, 1, limit));
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<double> breaks{0.0};
  std::vector<double> values;
  for (int c : cuts) {
    breaks.push_back(c * unit);
    double v = 0.0;
    if (uniform(rng, 0.0, 1.0) >= opts.zero_probability) {
      v = uniform(rng, 0.05, opts.max_value);
      if (!opts.nonnegative && uniform(rng, 0.0, 1.0) < 0.5) v = -v;
    }
    values.push_back(v);
  }
  StepFunction x = StepFunction::from_breaks(domain, std::move(breaks), std::move(values));
  if (x.is_zero()) {
    x = StepFunction::indicator(domain, 0.0, limit * unit, uniform(rng, 0.05, opts.max_value));
  }
  return x;
}

}  // namespace fnorm
