#include "cli/app.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <tuple>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cli/csv_output.hpp"
#include "cli/day_scenario.hpp"
#include "cli/scenario_file.hpp"
#include "ictmc/error.hpp"
#include "ictmc/horizon.hpp"
#include "ictmc/measures.hpp"

namespace ictmc::cli {

namespace {

constexpr double kReferenceEpsilon = 1e-13;

struct Options {
  std::string config_path;
  std::vector<std::string> builtin;
  std::string band = "wide";
  double gamma = 0.97;
  double patience = 4.0;
  double mu = 0.2;
  double eps_step = 1e-7;
  double eps_total = 3e-2;
  bool no_detection = false;
  bool integral_average = false;
  bool reference = false;
  std::string out_path = "series.csv";
  std::string emit_dir;
  std::string dump_config;
  int jobs = 1;
  std::string ledger = "reset";

  bool eps_step_given = false;
  bool eps_total_given = false;
};

struct Job {
  std::string label;
  ScenarioFile scenario;
  std::filesystem::path csv_path;
};

struct JobOutcome {
  int code = kOk;
  std::string summary;
  std::string message;
};

std::filesystem::path output_for(const std::filesystem::path& base, const std::string& label,
                                 bool several) {
  if (!several) return base;
  auto name = base.stem().string() + "_" + label + base.extension().string();
  return base.parent_path() / name;
}

JobOutcome execute(const Job& job, const Options& opt) {
  JobOutcome outcome;
  try {
    const ScenarioConfig& config = job.scenario.config;
    const auto p0 = job.scenario.initial_distribution();

    const auto start = std::chrono::steady_clock::now();
    const LedgerPolicy policy =
        opt.ledger == "additive" ? LedgerPolicy::additive : LedgerPolicy::reset_on_detection;
    const HorizonResult result = solve_horizon(config, p0, policy);
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    const MeasureSeries series = compute_measures(config, result);

    std::optional<ReferenceColumns> ref_columns;
    if (opt.reference) {
      ScenarioConfig ref_config = config;
      ref_config.epsilon_step = kReferenceEpsilon;
      ref_config.epsilon_total = static_cast<double>(config.steps.size()) * kReferenceEpsilon;
      ref_config.detection_enabled = false;
      const HorizonResult ref = solve_horizon(ref_config, p0);
      const MeasureSeries ref_series = compute_measures(ref_config, ref);
      ReferenceColumns cols;
      cols.expected_state = ref_series.expected_state;
      cols.relative_es_error = relative_error_series(series, ref_series);
      for (std::size_t j = 0; j < ref.distributions.size(); ++j)
        cols.max_abs_error.push_back(
            max_abs_difference(result.distributions[j].p, ref.distributions[j].p));
      ref_columns = std::move(cols);
    }

    std::ofstream csv(job.csv_path);
    if (!csv) throw std::runtime_error("cannot write " + job.csv_path.string());
    write_series_csv(csv, series, result.consumed_after_step,
                     ref_columns ? &*ref_columns : nullptr);

    if (!opt.emit_dir.empty()) {
      const std::filesystem::path dir =
          std::filesystem::path(opt.emit_dir) / (job.label.empty() ? "." : job.label);
      std::filesystem::create_directories(dir);
      for (std::size_t j = 0; j < result.distributions.size(); ++j) {
        std::ostringstream name;
        name << "step_" << std::setw(4) << std::setfill('0') << j + 1 << ".csv";
        write_distribution_csv(dir / name.str(), result.distributions[j]);
      }
    }

    std::int64_t total_mvm = 0;
    for (const auto& s : result.step_results) total_mvm += s.mvm_count;
    std::ostringstream summary;
    if (!job.label.empty()) summary << "label=" << job.label << ' ';
    summary << "steps=" << config.steps.size() << " total_mvm=" << total_mvm
            << " max_p_tail=" << format_number(max_tail_probability(result.distributions))
            << " consumed=" << format_number(result.ledger_final.consumed)
            << " epsilon_total=" << format_number(config.epsilon_total)
            << " wall_ms=" << format_number(std::round(wall_ms * 1000.0) / 1000.0);
    if (ref_columns) {
      double worst = 0.0;
      for (double e : ref_columns->max_abs_error) worst = std::max(worst, e);
      summary << " max_abs_error=" << format_number(worst);
    }
    summary << " out=" << job.csv_path.string();
    outcome.summary = summary.str();
  } catch (const std::invalid_argument& e) {
    outcome = {kInfeasible, {}, std::string("infeasible scenario: ") + e.what()};
  } catch (const NumericalError& e) {
    outcome = {kNumericalFailure, {}, std::string("numerical failure: ") + e.what()};
  } catch (const std::exception& e) {
    outcome = {kNumericalFailure, {}, std::string("error: ") + e.what()};
  }
  return outcome;
}

// Applies command line overrides and the epsilon_total floor.
void finalize(ScenarioConfig& config, const Options& opt, std::ostream& err) {
  if (opt.no_detection) config.detection_enabled = false;
  if (opt.eps_step_given) config.epsilon_step = opt.eps_step;
  if (opt.eps_total_given) config.epsilon_total = opt.eps_total;
  const double floor = static_cast<double>(config.steps.size()) * config.epsilon_step;
  if (!opt.eps_total_given && opt.config_path.empty() && !config.detection_enabled)
    config.epsilon_total = floor;
  if (config.epsilon_total < floor) {
    err << "warning: epsilon_total " << format_number(config.epsilon_total)
        << " is below steps * epsilon_step = " << format_number(floor)
        << "; using the truncation budget only, steady-state detection gets no slack\n";
    config.epsilon_total = floor;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Transient solver for call-center queues with balking and abandonment"};
  app.set_version_flag("--version", "ictmc 0.1.0");

  auto* config_opt = app.add_option("--config", opt.config_path, "Scenario file (JSON or key: value lines)");
  auto* builtin_opt =
      app.add_option("--builtin", opt.builtin,
                     "Built-in day scenario: 54, 150, 390, 1200, 3300 or S+Q (repeatable)")
          ->delimiter(',');
  config_opt->excludes(builtin_opt);
  app.add_option("--band", opt.band, "Load band of built-in scenarios")
      ->check(CLI::IsMember({"wide", "narrow"}));
  app.add_option("--gamma", opt.gamma, "Probability that a delayed arrival joins the queue");
  app.add_option("--patience", opt.patience, "Mean patience time in minutes");
  app.add_option("--mu", opt.mu, "Service rate per server, per minute");
  auto* eps_step_opt = app.add_option("--eps-step", opt.eps_step, "Per-step truncation error bound");
  auto* eps_total_opt = app.add_option("--eps-total", opt.eps_total, "Global error bound");
  app.add_flag("--no-detection", opt.no_detection, "Disable steady-state detection");
  app.add_flag("--integral-average", opt.integral_average,
               "Average the arrival sinusoid over each step instead of using the midpoint");
  app.add_flag("--reference", opt.reference,
               "Also run an epsilon_step = 1e-13 pass without detection and add error columns");
  app.add_option("--out", opt.out_path, "CSV output path");
  app.add_option("--emit-distributions", opt.emit_dir,
                 "Directory for per-step distribution files");
  app.add_option("--dump-config", opt.dump_config, "Write the resolved scenario as JSON");
  app.add_option("--ledger", opt.ledger,
                 "Error booking after a detection: reset (bound replaces the running error) "
                 "or additive (strict sum of all charges)")
      ->check(CLI::IsMember({"reset", "additive"}));
  app.add_option("--jobs", opt.jobs, "Parallel workers for several built-in scenarios")
      ->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << app.version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }
  opt.eps_step_given = eps_step_opt->count() > 0;
  opt.eps_total_given = eps_total_opt->count() > 0;

  std::vector<Job> jobs;
  try {
    if (!opt.config_path.empty()) {
      Job job;
      job.scenario = load_scenario(opt.config_path);
      finalize(job.scenario.config, opt, err);
      job.csv_path = opt.out_path;
      jobs.push_back(std::move(job));
    } else {
      if (opt.builtin.empty()) {
        err << "error: one of --config or --builtin is required\n";
        return kParseError;
      }
      for (const auto& label : opt.builtin) {
        DayScenarioOptions o;
        std::tie(o.servers, o.queue_capacity) = parse_size_label(label);
        o.band = parse_band(opt.band);
        o.gamma = opt.gamma;
        o.patience_mean = opt.patience;
        o.mu = opt.mu;
        o.epsilon_step = opt.eps_step;
        o.epsilon_total = opt.eps_total;
        o.detection = !opt.no_detection;
        o.integral_average = opt.integral_average;
        Job job;
        job.label = label;
        job.scenario.config = generate_day_scenario(o);
        finalize(job.scenario.config, opt, err);
        job.csv_path = output_for(opt.out_path, label, opt.builtin.size() > 1);
        jobs.push_back(std::move(job));
      }
    }
  } catch (const ConfigError& e) {
    err << "error: " << (opt.config_path.empty() ? "" : opt.config_path + ": ") << e.what()
        << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  }

  if (!opt.dump_config.empty()) {
    std::ofstream dump(opt.dump_config);
    dump << serialize_scenario(jobs.front().scenario);
    if (!dump) {
      err << "error: cannot write " << opt.dump_config << '\n';
      return kParseError;
    }
  }

  std::vector<JobOutcome> outcomes(jobs.size());
  const std::size_t workers =
      std::min<std::size_t>(jobs.size(), static_cast<std::size_t>(std::max(1, opt.jobs)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) outcomes[i] = execute(jobs[i], opt);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < jobs.size(); i = next++) outcomes[i] = execute(jobs[i], opt);
      });
    }
    for (auto& t : pool) t.join();
  }

  int code = kOk;
  for (const auto& o : outcomes) {
    if (o.code != kOk) {
      err << "error: " << o.message << '\n';
      code = std::max(code, o.code);
    } else {
      out << o.summary << '\n';
    }
  }
  return code;
}

}  // namespace ictmc::cli
