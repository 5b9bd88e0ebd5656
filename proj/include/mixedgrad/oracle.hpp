#ifndef MIXEDGRAD_ORACLE_HPP
#define MIXEDGRAD_ORACLE_HPP

#include "mixedgrad/losses.hpp"

#include <cstdint>

namespace mixedgrad {

/// Exact tallies of oracle use. Each oracle invocation bumps one counter by 1.
struct OracleCounters {
  std::uint64_t stochastic_calls = 0;
  std::uint64_t full_calls = 0;

  friend bool operator==(const OracleCounters&, const OracleCounters&) = default;
};

/// Uniform index sampler on SplitMix64 (Steele, Lea & Flood 2014): the state
/// advances by the 64-bit golden-ratio increment and each output is a fixed
/// mix of the state, so sequences are identical on every platform. Bounded
/// draws use Lemire's multiply-shift with rejection, also portable.
class SeededSampler {
 public:
  explicit SeededSampler(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64();

  /// Uniform on {0, ..., n-1}; n must be positive.
  std::uint64_t next_below(std::uint64_t n);

  /// Uniform on [0, 1) with 53 random bits.
  double next_unit();

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

/// Stochastic oracle: draws i uniformly with replacement and counts one call.
/// The index grants access to g_i through loss_value / loss_grad.
Index sample_loss(SeededSampler& sampler, OracleCounters& counters, Index n);

/// Full gradient oracle: grad G(w), counting one call.
Vector full_grad(const ProblemInstance& instance, const Vector& w, OracleCounters& counters);

}  // namespace mixedgrad

#endif
