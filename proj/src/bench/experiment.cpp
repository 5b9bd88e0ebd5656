#include "mixedgrad/bench/experiment.hpp"

#include "mixedgrad/dataset_io.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace mixedgrad::bench {

namespace {

class OptionReader {
 public:
  explicit OptionReader(const SolverSpec& spec) : spec_(spec) {}

  double real(const std::string& key, double fallback) {
    const auto it = take(key);
    return it ? parse_real(key, *it) : fallback;
  }

  std::uint64_t count(const std::string& key, std::uint64_t fallback) {
    const auto it = take(key);
    if (!it) return fallback;
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(*it, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != it->size()) bad(key, *it);
    return v;
  }

  bool flag(const std::string& key, bool fallback) {
    const auto it = take(key);
    if (!it) return fallback;
    if (*it == "1" || *it == "true") return true;
    if (*it == "0" || *it == "false") return false;
    bad(key, *it);
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto it = take(key);
    return it ? *it : fallback;
  }

  void finish() const {
    for (const auto& [key, value] : spec_.options) {
      if (!seen_.count(key)) {
        throw std::invalid_argument("solver '" + spec_.name + "': unknown option '" + key + "'");
      }
    }
  }

 private:
  const std::string* take(const std::string& key) {
    seen_.insert(key);
    const auto it = spec_.options.find(key);
    return it == spec_.options.end() ? nullptr : &it->second;
  }

  double parse_real(const std::string& key, const std::string& value) const {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) bad(key, value);
    return v;
  }

  [[noreturn]] void bad(const std::string& key, const std::string& value) const {
    throw std::invalid_argument("solver '" + spec_.name + "': bad value '" + value + "' for " +
                                key);
  }

  const SolverSpec& spec_;
  std::set<std::string> seen_;
};

MixedGradConfig build_mixed(OptionReader& opts, const ExperimentSpec& experiment,
                            const ProblemInstance& instance) {
  const auto& defaults = experiment.mixed;
  const bool theory = opts.flag("theory", defaults.theory_mode);
  const int epochs = static_cast<int>(opts.count("epochs", static_cast<std::uint64_t>(defaults.epochs)));
  MixedGradConfig c;
  if (theory) {
    c = theory_params(instance.smoothness, instance.radius,
                      opts.real("delta", defaults.failure_prob), epochs);
    c.step_from_inner_iters = true;
    c.t1 = opts.count("t1", c.t1);
    c.gamma = opts.real("gamma", c.gamma);
  } else {
    c = practical_params(instance.smoothness, instance.radius, epochs,
                         opts.count("t1", defaults.t1));
    c.gamma = opts.real("gamma", defaults.gamma);
  }
  c.eta1 = opts.real("eta1", c.eta1);
  c.delta1 = opts.real("delta1", c.delta1);
  c.lambda1 = opts.real("lambda1", c.lambda1);
  c.checkpoint_stride = opts.count("stride", c.checkpoint_stride);
  c.validate();
  return c;
}

BaselineConfig build_baseline(OptionReader& opts, BaselineMethod method,
                              const ExperimentSpec& experiment, const ProblemInstance& instance) {
  BaselineConfig c;
  if (method == BaselineMethod::sgd) {
    // Same stochastic budget as the default MixedGrad schedule.
    MixedGradConfig budget = practical_params(instance.smoothness, instance.radius,
                                              experiment.mixed.epochs, experiment.mixed.t1);
    budget.gamma = experiment.mixed.gamma;
    c = sgd_defaults(instance, opts.count("iterations", scheduled_stochastic_calls(budget)));
    const std::string rule = opts.text("rule", "inv_sqrt");
    if (rule == "inv_sqrt") {
      c.step_rule = StepRule::inv_sqrt_t;
    } else if (rule == "const") {
      c.step_rule = StepRule::constant;
    } else {
      throw std::invalid_argument("sgd: rule must be inv_sqrt or const");
    }
    c.averaging = opts.flag("averaging", c.averaging);
  } else {
    c = method == BaselineMethod::gd ? gd_defaults(opts.count("iterations", 100))
                                     : nag_defaults(opts.count("iterations", 100));
  }
  c.step_scale = opts.real("c", c.step_scale);
  const auto points = opts.count("checkpoints", 20);
  if (points < 1) throw std::invalid_argument("checkpoints must be at least 1");
  c.checkpoints = log_spaced_checkpoints(1, c.iterations, static_cast<int>(points));
  c.validate();
  return c;
}

}  // namespace

SolverSpec parse_solver_spec(std::string_view text) {
  SolverSpec spec;
  const auto colon = text.find(':');
  spec.name = std::string(text.substr(0, colon));
  if (spec.name.empty()) throw std::invalid_argument("solver spec has no name");
  if (colon == std::string_view::npos) return spec;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw std::invalid_argument("solver option '" + std::string(item) + "' is not key=val");
    }
    spec.options[std::string(item.substr(0, eq))] = std::string(item.substr(eq + 1));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return spec;
}

void ExperimentSpec::validate() const {
  if (solvers.empty()) throw std::invalid_argument("experiment needs at least one solver");
  if (seeds.empty()) throw std::invalid_argument("experiment needs at least one seed");
  if (!(reference_tolerance > 0.0) || reference_tolerance > 1e-6) {
    throw std::invalid_argument("reference tolerance must lie in (0, 1e-6]");
  }
}

SolverConfig build_solver(const SolverSpec& spec, const ExperimentSpec& experiment,
                          const ProblemInstance& instance) {
  OptionReader opts(spec);
  SolverConfig config;
  if (spec.name == "mixedgrad") {
    config = build_mixed(opts, experiment, instance);
  } else if (spec.name == "sgd") {
    config = build_baseline(opts, BaselineMethod::sgd, experiment, instance);
  } else if (spec.name == "gd") {
    config = build_baseline(opts, BaselineMethod::gd, experiment, instance);
  } else if (spec.name == "nag") {
    config = build_baseline(opts, BaselineMethod::nag, experiment, instance);
  } else {
    throw std::invalid_argument("unknown solver '" + spec.name + "'");
  }
  opts.finish();
  return config;
}

ProblemInstance load_instance(const ExperimentSpec& spec) {
  if (const auto* synthetic = std::get_if<SyntheticParams>(&spec.source)) {
    return gen_synthetic(*synthetic).instance;
  }
  const auto& csv = std::get<CsvSource>(spec.source);
  return make_instance(read_dataset_csv(csv.path), csv.loss, csv.radius);
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  const ProblemInstance instance = load_instance(spec);

  // Every solver is resolved before any run starts.
  std::vector<SolverConfig> configs;
  for (const auto& s : spec.solvers) configs.push_back(build_solver(s, spec, instance));

  ExperimentResult result;
  result.reference = compute_reference_optimum(instance, spec.reference_tolerance);
  std::filesystem::create_directories(spec.output_dir);

  for (std::size_t k = 0; k < configs.size(); ++k) {
    const std::string& name = spec.solvers[k].name;
    for (const auto seed : spec.seeds) {
      OracleCounters counters;
      RunTrace trace;
      trace.solver = name;
      trace.seed = seed;
      trace.reference_objective = result.reference.objective;

      const auto start = std::chrono::steady_clock::now();
      try {
        if (const auto* mixed = std::get_if<MixedGradConfig>(&configs[k])) {
          run_mixed_grad_into(instance, *mixed, seed, counters, trace);
        } else {
          const auto& base = std::get<BaselineConfig>(configs[k]);
          switch (base.method) {
            case BaselineMethod::sgd:
              run_sgd(instance, base, seed, counters, trace);
              break;
            case BaselineMethod::gd:
              run_gd(instance, base, counters, trace);
              break;
            case BaselineMethod::nag:
              run_nag(instance, base, counters, trace);
              break;
          }
        }
      } catch (const DivergenceError&) {
        trace.record(trace.records.empty() ? 0 : trace.records.back().epoch,
                     trace.records.empty() ? 0 : trace.records.back().step, counters,
                     std::numeric_limits<double>::quiet_NaN(), status::kDiverged);
      }
      const auto stop = std::chrono::steady_clock::now();

      SummaryRow row;
      row.solver = name;
      row.seed = seed;
      row.final_error = trace.records.empty() ? std::numeric_limits<double>::quiet_NaN()
                                              : trace.records.back().error;
      row.stoch_calls = counters.stochastic_calls;
      row.full_calls = counters.full_calls;
      row.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      result.rows.push_back(row);

      const auto file = spec.output_dir / ("trace_" + std::to_string(k) + "_" + name + "_seed" +
                                           std::to_string(seed) + ".csv");
      write_trace_csv(file, trace);
      result.trace_files.push_back(file);
    }
  }

  result.summary_file = spec.output_dir / "summary.csv";
  write_summary_csv(result.summary_file, result.rows);
  return result;
}

}  // namespace mixedgrad::bench
