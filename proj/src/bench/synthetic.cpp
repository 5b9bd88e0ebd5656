#include "mixedgrad/bench/synthetic.hpp"

#include <cmath>
#include <random>

namespace mixedgrad::bench {

SyntheticProblem gen_synthetic(const SyntheticParams& params) {
  if (params.n < 1 || params.d < 1) throw std::invalid_argument("gen_synthetic: n, d >= 1");
  if (!(params.noise_sd >= 0.0)) throw std::invalid_argument("gen_synthetic: noise_sd >= 0");
  if (!(params.radius > 0.0)) throw std::invalid_argument("gen_synthetic: radius > 0");

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  Dataset data;
  data.features.resize(params.n, params.d);
  for (Index i = 0; i < params.n; ++i) {
    double sq = 0.0;
    do {
      for (Index j = 0; j < params.d; ++j) data.features(i, j) = normal(rng);
      sq = data.features.row(i).squaredNorm();
    } while (sq == 0.0);
    data.features.row(i) /= std::sqrt(sq);
  }

  Vector planted(params.d);
  for (Index j = 0; j < params.d; ++j) planted[j] = normal(rng);
  planted *= 0.5 * params.radius / planted.norm();

  data.labels.resize(params.n);
  for (Index i = 0; i < params.n; ++i) {
    const double noise = params.noise_sd > 0.0 ? params.noise_sd * normal(rng) : 0.0;
    const double value = data.features.row(i).dot(planted) + noise;
    data.labels[i] =
        params.loss == LossKind::least_squares ? value : (value >= 0.0 ? 1.0 : -1.0);
  }

  SyntheticProblem out{make_instance(std::move(data), params.loss, params.radius),
                       std::move(planted)};
  return out;
}

}  // namespace mixedgrad::bench
