// bench: synthetic data generation, experiment runs and slope fits.
//
//   bench gen --seed 7 --n 200 --d 20 --loss ls --out data.csv
//   bench run --seed 1 --seed 2 --solver mixedgrad:t1=50 --solver sgd --out results/
//   bench fit --trace results/trace_0_mixedgrad_seed1.csv --status epoch_end

#include "mixedgrad/bench/experiment.hpp"
#include "mixedgrad/bench/slope.hpp"
#include "mixedgrad/dataset_io.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iomanip>
#include <iostream>

namespace mb = mixedgrad::bench;

namespace {

struct DataFlags {
  std::uint64_t seed = 0;
  mixedgrad::Index n = 200;
  mixedgrad::Index d = 20;
  double noise = 0.0;
  std::string loss = "ls";
  double radius = 1.0;
};

void add_data_flags(CLI::App* cmd, DataFlags& f, const std::string& seed_flag) {
  cmd->add_option(seed_flag, f.seed, "data generator seed");
  cmd->add_option("--n", f.n, "number of examples")->check(CLI::PositiveNumber);
  cmd->add_option("--d", f.d, "number of features")->check(CLI::PositiveNumber);
  cmd->add_option("--noise", f.noise, "label noise standard deviation")->check(CLI::NonNegativeNumber);
  cmd->add_option("--loss", f.loss, "loss kind")->check(CLI::IsMember({"ls", "logistic"}));
  cmd->add_option("--radius", f.radius, "domain radius R")->check(CLI::PositiveNumber);
}

mb::SyntheticParams to_params(const DataFlags& f) {
  mb::SyntheticParams p;
  p.seed = f.seed;
  p.n = f.n;
  p.d = f.d;
  p.noise_sd = f.noise;
  p.loss = mixedgrad::parse_loss_kind(f.loss);
  p.radius = f.radius;
  return p;
}

int cmd_gen(const DataFlags& flags, const std::string& out) {
  const auto problem = mb::gen_synthetic(to_params(flags));
  if (out.empty()) {
    mixedgrad::write_dataset_csv(std::cout, problem.instance.data);
  } else {
    mixedgrad::write_dataset_csv(std::filesystem::path(out), problem.instance.data);
  }
  std::cerr << "n=" << problem.instance.size() << " d=" << problem.instance.dim()
            << " beta=" << problem.instance.smoothness << '\n';
  return 0;
}

int cmd_run(mb::ExperimentSpec spec) {
  const auto result = mb::run_experiment(spec);
  std::cout << "reference G*=" << std::setprecision(12) << result.reference.objective
            << " residual=" << result.reference.residual << '\n';
  for (const auto& row : result.rows) {
    std::cout << row.solver << " seed=" << row.seed << " final_error=" << row.final_error
              << " stoch_calls=" << row.stoch_calls << " full_calls=" << row.full_calls
              << " wall_ms=" << row.wall_ms << '\n';
  }
  std::cout << "summary: " << result.summary_file.string() << '\n';
  return 0;
}

int cmd_fit(const std::string& path, const std::string& x_name, const std::string& error_name,
            std::size_t skip_head, const std::string& status_filter) {
  const auto traces = mb::read_trace_csv(std::filesystem::path(path));
  const auto x = mb::parse_trace_field(x_name);
  const auto e = mb::parse_trace_field(error_name);
  for (const auto& trace : traces) {
    std::vector<mixedgrad::TraceRecord> records =
        status_filter.empty() ? trace.records : trace.with_status(status_filter);
    const auto fit = mb::fit_slope(records, x, e, skip_head);
    std::cout << trace.solver << " seed=" << trace.seed << std::setprecision(6)
              << " slope=" << fit.slope << " intercept=" << fit.intercept
              << " r2=" << fit.r_squared << " points=" << fit.used << " clipped=" << fit.clipped
              << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MixedGrad benchmark harness"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "write a synthetic dataset as CSV");
  DataFlags gen_flags;
  std::string gen_out;
  add_data_flags(gen, gen_flags, "--seed");
  gen->add_option("--out", gen_out, "output CSV (stdout when omitted)");

  auto* run = app.add_subcommand("run", "run solvers and write trace/summary CSVs");
  DataFlags run_flags;
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> solvers;
  std::string data_path;
  std::string out_dir = "bench_out";
  mb::MixedGradDefaults mixed;
  double ref_tol = 1e-10;
  add_data_flags(run, run_flags, "--data-seed");
  run->add_option("--data", data_path, "dataset CSV instead of synthetic data");
  run->add_option("--seed", seeds, "solver seed (repeatable)");
  run->add_option("--solver", solvers, "name[:key=val,...] (repeatable)");
  run->add_option("--epochs", mixed.epochs, "MixedGrad epochs m")->check(CLI::PositiveNumber);
  run->add_option("--t1", mixed.t1, "MixedGrad first-epoch iterations")->check(CLI::PositiveNumber);
  run->add_option("--gamma", mixed.gamma, "MixedGrad shrink factor");
  run->add_flag("--theory-mode", mixed.theory_mode, "derive MixedGrad constants from beta, R, delta");
  run->add_option("--delta", mixed.failure_prob, "failure probability for theory mode");
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--ref-tol", ref_tol, "reference optimum tolerance");

  auto* fit = app.add_subcommand("fit", "log-log slope of a trace CSV");
  std::string trace_path;
  std::string x_field = "stoch_calls";
  std::string error_field = "error";
  std::size_t skip_head = 0;
  std::string status_filter;
  fit->add_option("--trace", trace_path, "trace CSV")->required();
  fit->add_option("--x", x_field, "x column");
  fit->add_option("--error", error_field, "error column");
  fit->add_option("--skip-head", skip_head, "leading points to drop");
  fit->add_option("--status", status_filter, "only rows with this status");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen(gen_flags, gen_out);
    if (run->parsed()) {
      mb::ExperimentSpec spec;
      if (data_path.empty()) {
        spec.source = to_params(run_flags);
      } else {
        spec.source = mb::CsvSource{data_path, mixedgrad::parse_loss_kind(run_flags.loss),
                                    run_flags.radius};
      }
      for (const auto& s : solvers) spec.solvers.push_back(mb::parse_solver_spec(s));
      spec.seeds = seeds.empty() ? std::vector<std::uint64_t>{0} : seeds;
      spec.output_dir = out_dir;
      spec.reference_tolerance = ref_tol;
      spec.mixed = mixed;
      return cmd_run(std::move(spec));
    }
    return cmd_fit(trace_path, x_field, error_field, skip_head, status_filter);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 1;
  }
}
