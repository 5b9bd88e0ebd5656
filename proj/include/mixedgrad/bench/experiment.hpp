#ifndef MIXEDGRAD_BENCH_EXPERIMENT_HPP
#define MIXEDGRAD_BENCH_EXPERIMENT_HPP

#include "mixedgrad/baselines.hpp"
#include "mixedgrad/bench/reference.hpp"
#include "mixedgrad/bench/synthetic.hpp"
#include "mixedgrad/bench/trace_csv.hpp"
#include "mixedgrad/mixed_grad.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mixedgrad::bench {

struct CsvSource {
  std::filesystem::path path;
  LossKind loss = LossKind::least_squares;
  double radius = 1.0;
};

/// `name[:key=val,...]`, e.g. `mixedgrad:t1=50,lambda1=0.0625` or `sgd:c=0.5`.
struct SolverSpec {
  std::string name;
  std::map<std::string, std::string> options;
};

SolverSpec parse_solver_spec(std::string_view text);

/// MixedGrad settings shared by every mixedgrad solver unless overridden.
struct MixedGradDefaults {
  int epochs = 6;
  std::uint64_t t1 = 10;
  double gamma = 2.0;
  bool theory_mode = false;
  double failure_prob = 0.011108996538242306;  // e^-4.5
};

struct ExperimentSpec {
  std::variant<SyntheticParams, CsvSource> source;
  std::vector<SolverSpec> solvers;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir;
  double reference_tolerance = 1e-10;
  MixedGradDefaults mixed;

  /// At least one solver and seed, tolerance in (0, 1e-6].
  void validate() const;
};

using SolverConfig = std::variant<MixedGradConfig, BaselineConfig>;

/// Resolves a solver spec against an instance. Throws std::invalid_argument
/// for unknown solvers or options.
SolverConfig build_solver(const SolverSpec& spec, const ExperimentSpec& experiment,
                          const ProblemInstance& instance);

ProblemInstance load_instance(const ExperimentSpec& spec);

struct ExperimentResult {
  ReferenceOptimum reference;
  std::vector<SummaryRow> rows;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_file;
};

/// Certifies the reference optimum, then runs every (solver, seed) pair with
/// fresh counters, writing one trace CSV per run and a final summary CSV.
/// Divergent runs get a `diverged` trace row and the experiment continues.
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace mixedgrad::bench

#endif
