#include "mixedgrad/oracle.hpp"

namespace mixedgrad {

namespace {
__extension__ using u128 = unsigned __int128;
}  // namespace

std::uint64_t SeededSampler::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t SeededSampler::next_below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_below: empty range");
  u128 product = static_cast<u128>(next_u64()) * n;
  auto low = static_cast<std::uint64_t>(product);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      product = static_cast<u128>(next_u64()) * n;
      low = static_cast<std::uint64_t>(product);
    }
  }
  return static_cast<std::uint64_t>(product >> 64);
}

double SeededSampler::next_unit() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

Index sample_loss(SeededSampler& sampler, OracleCounters& counters, Index n) {
  if (n < 1) throw std::invalid_argument("sample_loss: n must be at least 1");
  const auto i = static_cast<Index>(sampler.next_below(static_cast<std::uint64_t>(n)));
  ++counters.stochastic_calls;
  return i;
}

Vector full_grad(const ProblemInstance& instance, const Vector& w, OracleCounters& counters) {
  Vector g = objective_gradient(instance, w);
  ++counters.full_calls;
  return g;
}

}  // namespace mixedgrad
