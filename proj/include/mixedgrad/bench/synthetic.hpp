#ifndef MIXEDGRAD_BENCH_SYNTHETIC_HPP
#define MIXEDGRAD_BENCH_SYNTHETIC_HPP

#include "mixedgrad/losses.hpp"

#include <cstdint>

namespace mixedgrad::bench {

struct SyntheticParams {
  std::uint64_t seed = 0;
  Index n = 200;
  Index d = 20;
  double noise_sd = 0.0;
  LossKind loss = LossKind::least_squares;
  double radius = 1.0;
};

struct SyntheticProblem {
  ProblemInstance instance;
  Vector planted;  // norm R/2
};

/// Rows are standard normal draws scaled to unit norm. Least-squares labels
/// are <w_planted, x> + noise; logistic labels are the sign of that (0 -> +1).
/// Deterministic per seed (std::mt19937_64 + std::normal_distribution).
SyntheticProblem gen_synthetic(const SyntheticParams& params);

}  // namespace mixedgrad::bench

#endif
