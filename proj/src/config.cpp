#include "specmil/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specmil {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    const auto end = comma == std::string_view::npos ? s.size() : comma;
    std::string item = trim(s.substr(start, end - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw std::invalid_argument("config: key '" + key + "' expects a number, got '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::invalid_argument("config: key '" + key + "' expects a real number, got '" + text +
                                "'");
  }
  return value;
}

std::map<SchemeKind, int> parse_coupling(const std::string& text) {
  std::map<SchemeKind, int> out;
  for (const std::string& item : split_list(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw std::invalid_argument("config: coupling entry '" + item + "' must be scheme:exponent");
    }
    out[parse_scheme(trim(item.substr(0, colon)))] =
        parse_number<int>("coupling", trim(item.substr(colon + 1)));
  }
  return out;
}

}  // namespace

std::string_view to_string(ErrorMetric metric) {
  return metric == ErrorMetric::rms ? "rms" : "pathwise";
}

ErrorMetric parse_metric(std::string_view name) {
  if (name == "rms") return ErrorMetric::rms;
  if (name == "pathwise") return ErrorMetric::pathwise;
  throw std::invalid_argument("unknown error metric '" + std::string(name) +
                              "' (expected rms or pathwise)");
}

ProblemSpec ExperimentConfig::resolve_problem() const {
  ProblemSpec spec = preset(problem);
  for (const auto& [kind, exponent] : coupling) spec.step_exponent[kind] = exponent;
  if (noise_family) spec.noise_family = *noise_family;
  if (noise_exponent) spec.noise_rule.exponent = *noise_exponent;
  if (noise_scale) spec.noise_rule.scale = *noise_scale;
  if (advection) spec.advection_form = *advection;
  return spec;
}

void ExperimentConfig::validate() const { validate(resolve_problem()); }

void ExperimentConfig::validate(const ProblemSpec& spec) const {
  if (schemes.empty()) throw std::invalid_argument("config: no schemes given");
  if (ref_n == 0 || ref_m == 0 || ref_k == 0) {
    throw std::invalid_argument("config: reference resolution must be positive");
  }
  if (paths == 0) throw std::invalid_argument("config: paths must be positive");
  if (threads == 0) throw std::invalid_argument("config: threads must be positive");
  if (metric == ErrorMetric::pathwise && paths != 1) {
    throw std::invalid_argument("config: pathwise metric requires paths = 1");
  }
  (void)spec.noise(ref_k);
  for (SchemeKind kind : schemes) {
    if (!spec.supports(kind)) {
      throw std::invalid_argument("config: scheme '" + std::string(to_string(kind)) +
                                  "' is not available for problem '" + spec.name + "'");
    }
    for (std::size_t n : ladder) {
      if (n == 0 || n > ref_n) {
        throw std::invalid_argument("config: ladder N=" + std::to_string(n) +
                                    " must lie in [1, ref_n]");
      }
      if (spec.noise_modes(n) > ref_k) {
        throw std::invalid_argument("config: ladder K=" + std::to_string(spec.noise_modes(n)) +
                                    " exceeds ref_k");
      }
      (void)spec.time_steps(kind, n);
    }
  }
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(number) +
                                  ": expected key = value");
    }
    const std::string key = trim(body.substr(0, eq));
    const std::string value = trim(body.substr(eq + 1));

    if (key == "problem") {
      config.problem = value;
    } else if (key == "schemes") {
      config.schemes.clear();
      for (const auto& s : split_list(value)) config.schemes.push_back(parse_scheme(s));
    } else if (key == "ladder") {
      config.ladder.clear();
      for (const auto& s : split_list(value)) {
        config.ladder.push_back(parse_number<std::size_t>(key, s));
      }
    } else if (key == "ref_n") {
      config.ref_n = parse_number<std::size_t>(key, value);
    } else if (key == "ref_m") {
      config.ref_m = parse_number<std::size_t>(key, value);
    } else if (key == "ref_k") {
      config.ref_k = parse_number<std::size_t>(key, value);
    } else if (key == "paths") {
      config.paths = parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      config.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "out") {
      config.out = value;
    } else if (key == "threads") {
      config.threads = parse_number<std::size_t>(key, value);
    } else if (key == "metric") {
      config.metric = parse_metric(value);
    } else if (key == "coupling") {
      config.coupling = parse_coupling(value);
    } else if (key == "noise_family") {
      config.noise_family = parse_noise_family(value);
    } else if (key == "noise_exponent") {
      config.noise_exponent = parse_real(key, value);
    } else if (key == "noise_scale") {
      config.noise_scale = parse_real(key, value);
    } else if (key == "advection") {
      config.advection = parse_advection_form(value);
    } else {
      throw std::invalid_argument("config line " + std::to_string(number) + ": unknown key '" +
                                  key + "'");
    }
  }
  (void)preset(config.problem);
  return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path.string());
  return parse_config(in);
}

void write_config(const ExperimentConfig& config, std::ostream& out) {
  auto join = [](const auto& items, auto&& fmt) {
    std::string s;
    for (const auto& item : items) {
      if (!s.empty()) s += ",";
      s += fmt(item);
    }
    return s;
  };
  out << "problem = " << config.problem << '\n';
  out << "schemes = "
      << join(config.schemes, [](SchemeKind k) { return std::string(to_string(k)); }) << '\n';
  out << "ladder = " << join(config.ladder, [](std::size_t n) { return std::to_string(n); })
      << '\n';
  out << "ref_n = " << config.ref_n << '\n';
  out << "ref_m = " << config.ref_m << '\n';
  out << "ref_k = " << config.ref_k << '\n';
  out << "paths = " << config.paths << '\n';
  out << "seed = " << config.seed << '\n';
  if (!config.out.empty()) out << "out = " << config.out << '\n';
  out << "threads = " << config.threads << '\n';
  out << "metric = " << to_string(config.metric) << '\n';
  if (!config.coupling.empty()) {
    out << "coupling = " << join(config.coupling, [](const auto& kv) {
      return std::string(to_string(kv.first)) + ":" + std::to_string(kv.second);
    }) << '\n';
  }
  if (config.noise_family) out << "noise_family = " << to_string(*config.noise_family) << '\n';
  if (config.noise_exponent) out << "noise_exponent = " << *config.noise_exponent << '\n';
  if (config.noise_scale) out << "noise_scale = " << *config.noise_scale << '\n';
  if (config.advection) out << "advection = " << to_string(*config.advection) << '\n';
}

}  // namespace specmil
