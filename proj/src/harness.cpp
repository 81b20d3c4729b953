#include "specmil/harness.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "specmil/rng.hpp"
#include "specmil/schemes.hpp"

namespace specmil {

namespace {

struct LadderRun {
  SchemeConfig config;
  std::uint64_t expected_randoms = 0;
};

struct PathOutcome {
  std::vector<double> errors;   // per ladder run, NaN when failed
  std::vector<double> seconds;  // per ladder run
};

PathOutcome run_path(const ProblemSpec& problem, const SchemeRunner& reference,
                     const std::vector<SchemeRunner>& runners,
                     const std::vector<LadderRun>& ladder, std::uint64_t seed,
                     std::size_t fine_steps) {
  const MasterPath path(seed, fine_steps, reference.noise(), problem.horizon);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  PathOutcome outcome{std::vector<double>(runners.size(), nan),
                      std::vector<double>(runners.size(), 0.0)};

  std::optional<SpectralField> ref;
  try {
    ref = reference.run(path).final_state;
  } catch (const NonFiniteState&) {
    return outcome;
  }
  const BasisPtr& target = reference.context().basis();

  for (std::size_t r = 0; r < runners.size(); ++r) {
    const auto start = std::chrono::steady_clock::now();
    try {
      const RunResult result = runners[r].run(path);
      if (result.random_variables != ladder[r].expected_randoms) {
        throw std::logic_error("random-variable count mismatch: run consumed " +
                               std::to_string(result.random_variables) + ", expected " +
                               std::to_string(ladder[r].expected_randoms));
      }
      outcome.errors[r] = h_distance(zero_pad(result.final_state, target), *ref);
    } catch (const NonFiniteState&) {
      // recorded as a failed path
    }
    outcome.seconds[r] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return outcome;
}

std::string format_real(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

}  // namespace

std::vector<const ConvergenceRow*> ConvergenceReport::rows_for(SchemeKind scheme) const {
  std::vector<const ConvergenceRow*> out;
  for (const auto& row : rows) {
    if (row.scheme == scheme) out.push_back(&row);
  }
  return out;
}

std::size_t master_steps(const ExperimentConfig& config, const ProblemSpec& problem) {
  std::size_t steps = config.ref_m;
  for (SchemeKind kind : config.schemes) {
    for (std::size_t n : config.ladder) steps = std::lcm(steps, problem.time_steps(kind, n));
  }
  return steps;
}

ConvergenceReport estimate_rms_error(const ExperimentConfig& config) {
  return estimate_rms_error(config, config.resolve_problem());
}

ConvergenceReport estimate_rms_error(const ExperimentConfig& config, const ProblemSpec& problem) {
  config.validate(problem);

  ConvergenceReport report;
  report.problem = problem.name;
  report.rng_algorithm = std::string(NormalGenerator::algorithm);
  report.seed = config.seed;
  report.paths = config.paths;
  report.metric = config.metric;
  report.ref_n = config.ref_n;
  report.ref_m = config.ref_m;
  report.ref_k = config.ref_k;
  report.master_steps = master_steps(config, problem);
  report.floor = 0.0;

  const SchemeRunner reference(problem,
                               {SchemeKind::milstein, config.ref_n, config.ref_m, config.ref_k});
  std::vector<LadderRun> ladder;
  std::vector<SchemeRunner> runners;
  for (SchemeKind kind : config.schemes) {
    for (std::size_t n : config.ladder) {
      const SchemeConfig sc = SchemeConfig::recommended(problem, kind, n);
      runners.emplace_back(problem, sc);
      ladder.push_back({sc, count_random_variables(sc.steps, runners.back().noise())});
    }
  }

  const std::size_t paths = config.paths;
  std::vector<PathOutcome> outcomes(paths);
  const std::size_t workers = std::min(config.threads, paths);
  auto work = [&](std::size_t first) {
    for (std::size_t p = first; p < paths; p += workers) {
      outcomes[p] = run_path(problem, reference, runners, ladder, derive_seed(config.seed, p),
                             report.master_steps);
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (std::size_t r = 0; r < ladder.size(); ++r) {
    ConvergenceRow row;
    row.scheme = ladder[r].config.kind;
    row.modes = ladder[r].config.modes;
    row.steps = ladder[r].config.steps;
    row.noise_modes = ladder[r].config.noise_modes;
    row.random_variables = ladder[r].expected_randoms;
    double sum_sq = 0.0;
    double sum_quad = 0.0;
    std::size_t ok = 0;
    for (std::size_t p = 0; p < paths; ++p) {
      const double e = outcomes[p].errors[r];
      row.path_errors.push_back(e);
      row.wall_seconds += outcomes[p].seconds[r];
      if (std::isnan(e)) {
        ++row.failed_paths;
        continue;
      }
      ++ok;
      sum_sq += e * e;
      sum_quad += e * e * e * e;
    }
    if (ok == 0) {
      row.rms_error = std::numeric_limits<double>::quiet_NaN();
      row.stderr_rms = std::numeric_limits<double>::quiet_NaN();
    } else {
      const double n = static_cast<double>(ok);
      const double mean_sq = sum_sq / n;
      row.rms_error = std::sqrt(mean_sq);
      if (ok < 2) {
        row.stderr_rms = std::numeric_limits<double>::quiet_NaN();  // undefined for one path
      } else if (row.rms_error > 0.0) {
        const double var = std::max(0.0, (sum_quad - n * mean_sq * mean_sq) / (n - 1.0));
        // delta method: se(sqrt(m)) = se(m) / (2 sqrt(m))
        row.stderr_rms = std::sqrt(var / n) / (2.0 * row.rms_error);
      }
    }
    report.rows.push_back(std::move(row));
  }

  for (SchemeKind kind : config.schemes) {
    if (config.ladder.size() < 2) continue;
    try {
      report.slopes[kind] = fit_slopes(report, kind);
    } catch (const std::invalid_argument&) {
      // too few usable points; slopes stay absent
    }
  }
  return report;
}

double fit_loglog_slope(std::span<const double> xs, std::span<const double> errors, double floor) {
  if (xs.size() != errors.size()) throw std::invalid_argument("fit_loglog_slope: size mismatch");
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = errors[i];
    if (!(e > 0.0) || !std::isfinite(e) || e < 10.0 * floor) continue;
    if (!(xs[i] > 0.0)) throw std::invalid_argument("fit_loglog_slope: abscissa must be positive");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(e));
  }
  if (lx.size() < 2) throw std::invalid_argument("fit_loglog_slope: fewer than two usable points");
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_loglog_slope: abscissae are all equal");
  return sxy / sxx;
}

SlopeFit fit_slopes(const ConvergenceReport& report, SchemeKind scheme) {
  std::vector<double> n, rv, err;
  for (const ConvergenceRow* row : report.rows_for(scheme)) {
    n.push_back(static_cast<double>(row->modes));
    rv.push_back(static_cast<double>(row->random_variables));
    err.push_back(row->rms_error);
  }
  SlopeFit fit;
  fit.vs_modes = fit_loglog_slope(n, err, report.floor);
  fit.vs_random_variables = fit_loglog_slope(rv, err, report.floor);
  for (double e : err) {
    if (e > 0.0 && std::isfinite(e) && e >= 10.0 * report.floor) ++fit.points;
  }
  return fit;
}

void write_csv(const ConvergenceReport& report, std::ostream& out) {
  out << "scheme,N,M,K,random_variables,rms_error,stderr,failed_paths,wall_seconds\n";
  for (const auto& row : report.rows) {
    out << to_string(row.scheme) << ',' << row.modes << ',' << row.steps << ','
        << row.noise_modes << ',' << row.random_variables << ',' << format_real(row.rms_error)
        << ',' << format_real(row.stderr_rms) << ',' << row.failed_paths << ',' << std::fixed
        << std::setprecision(6) << row.wall_seconds << std::defaultfloat << '\n';
  }
}

std::string metadata_json(const ConvergenceReport& report) {
  nlohmann::ordered_json meta;
  meta["problem"] = report.problem;
  meta["rng"] = report.rng_algorithm;
  meta["seed"] = report.seed;
  meta["paths"] = report.paths;
  meta["metric"] = std::string(to_string(report.metric));
  meta["reference"] = {{"N", report.ref_n}, {"M", report.ref_m}, {"K", report.ref_k}};
  meta["master_steps"] = report.master_steps;
  meta["floor"] = report.floor;
  nlohmann::ordered_json slopes = nlohmann::ordered_json::object();
  for (const auto& [kind, fit] : report.slopes) {
    slopes[std::string(to_string(kind))] = {{"vs_N", fit.vs_modes},
                                            {"vs_random_variables", fit.vs_random_variables},
                                            {"points", fit.points}};
  }
  meta["slopes"] = slopes;
  return meta.dump(2) + "\n";
}

void emit_csv(const ConvergenceReport& report, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV to " + path.string());
  write_csv(report, out);
  if (!out) throw std::runtime_error("write failed for " + path.string());
  std::ofstream meta(path.string() + ".meta");
  if (!meta) throw std::runtime_error("cannot write metadata next to " + path.string());
  meta << metadata_json(report);
}

}  // namespace specmil
