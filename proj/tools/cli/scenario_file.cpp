#include "cli/scenario_file.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli/day_scenario.hpp"

namespace ictmc::cli {

using nlohmann::json;

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

class Reader {
 public:
  Reader(const json& root, std::string_view text) : root_(root), text_(text) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    std::string where;
    const auto pos = text_.find(key);
    if (!key.empty() && pos != std::string_view::npos)
      where = "line " + std::to_string(line_of_offset(text_, pos)) + ": ";
    throw ConfigError(where + (key.empty() ? "" : "'" + key + "': ") + what);
  }

  [[nodiscard]] bool has(const std::string& key) const { return root_.contains(key); }

  [[nodiscard]] const json& at(const std::string& key) const {
    if (!root_.contains(key)) fail(key, "missing required key");
    return root_.at(key);
  }

  [[nodiscard]] double number(const std::string& key, const json& value) const {
    if (!value.is_number()) fail(key, "expected a number");
    return value.get<double>();
  }
  [[nodiscard]] double number(const std::string& key) const { return number(key, at(key)); }

  [[nodiscard]] int integer(const std::string& key, const json& value) const {
    if (!value.is_number_integer()) fail(key, "expected an integer");
    return value.get<int>();
  }

  /// Scalar broadcast to `count` entries, or a list of exactly `count`.
  template <class T, class Get>
  std::vector<T> per_step(const std::string& key, std::size_t count, Get get) const {
    const json& value = at(key);
    if (!value.is_array()) return std::vector<T>(count, get(key, value));
    if (value.size() != count)
      fail(key, "list has " + std::to_string(value.size()) + " entries, expected " +
                    std::to_string(count));
    std::vector<T> out;
    out.reserve(count);
    for (const auto& item : value) out.push_back(get(key, item));
    return out;
  }

 private:
  const json& root_;
  std::string_view text_;
};

// Drops a trailing `# comment` that is not inside a JSON string.
std::string_view strip_comment(std::string_view value) {
  bool quoted = false;
  for (std::size_t i = 0; i < value.size(); ++i) {
    if (value[i] == '\\' && quoted) {
      ++i;
    } else if (value[i] == '"') {
      quoted = !quoted;
    } else if (value[i] == '#' && !quoted) {
      return value.substr(0, i);
    }
  }
  return value;
}

json parse_key_value_lines(std::string_view text) {
  json root = json::object();
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find('\n', start), text.size());
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;

    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;
    const auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key: value'");
    std::string key(line.substr(first, colon - first));
    key.erase(key.find_last_not_of(" \t") + 1);
    const std::string value(strip_comment(line.substr(colon + 1)));
    try {
      root[key] = json::parse(value);
    } catch (const json::parse_error&) {
      // Bare words such as `on` or `empty` are taken as strings.
      auto word = value;
      word.erase(0, word.find_first_not_of(" \t"));
      word.erase(word.find_last_not_of(" \t\r") + 1);
      if (word.empty() || word.find_first_of("{}[]\",") != std::string::npos)
        throw ConfigError("line " + std::to_string(line_no) + ": cannot parse value for '" +
                          key + "'");
      root[key] = word;
    }
  }
  return root;
}

}  // namespace

ProbabilityVector ScenarioFile::initial_distribution() const {
  const auto length = static_cast<std::size_t>(config.max_state()) + 1;
  if (!initial_state) return ProbabilityVector::point_mass(length, 0);
  if (initial_state->size() != length)
    throw std::invalid_argument("initial_state must have n + 1 = " + std::to_string(length) +
                                " entries");
  return ProbabilityVector(*initial_state);
}

ScenarioFile parse_scenario(std::string_view text) {
  json root;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    try {
      root = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ConfigError("line " + std::to_string(line_of_offset(text, e.byte == 0 ? 0 : e.byte - 1)) +
                        ": " + e.what());
    }
  } else {
    root = parse_key_value_lines(text);
  }
  if (!root.is_object()) throw ConfigError("line 1: scenario must be an object");

  const Reader in(root, text);
  ScenarioFile out;
  ScenarioConfig& c = out.config;

  c.step_length = in.number("step_minutes");
  if (!(c.step_length > 0.0)) in.fail("step_minutes", "must be positive");

  // Step count from the horizon, or from whichever list is present.
  std::size_t count = 0;
  const json* lambda_list = nullptr;
  if (in.has("arrival")) {
    const json& arrival = in.at("arrival");
    if (!arrival.is_object()) in.fail("arrival", "expected an object");
    if (arrival.contains("lambda_per_min")) lambda_list = &arrival.at("lambda_per_min");
  } else if (in.has("lambda_per_min")) {
    lambda_list = &in.at("lambda_per_min");
  }
  if (in.has("horizon_minutes")) {
    c.horizon = in.number("horizon_minutes");
    const double ratio = c.horizon / c.step_length;
    const double rounded = std::round(ratio);
    if (!(rounded >= 1.0) || std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
      in.fail("horizon_minutes", "must be a positive multiple of step_minutes");
    count = static_cast<std::size_t>(rounded);
  } else if (lambda_list != nullptr && lambda_list->is_array()) {
    count = lambda_list->size();
    c.horizon = static_cast<double>(count) * c.step_length;
  } else {
    in.fail("horizon_minutes", "missing required key");
  }
  if (count == 0) in.fail("horizon_minutes", "scenario has no steps");

  const auto get_int = [&](const std::string& k, const json& v) { return in.integer(k, v); };
  const auto get_num = [&](const std::string& k, const json& v) { return in.number(k, v); };
  const auto servers = in.per_step<int>("servers", count, get_int);
  const auto mu = in.per_step<double>("mu_per_min", count, get_num);

  c.gamma = in.number("gamma");
  if (in.has("eta_per_min")) {
    c.eta = in.number("eta_per_min");
  } else {
    const json& patience = in.at("patience_mean_minutes");
    if (patience.is_null()) {
      c.eta = 0.0;
    } else {
      const double mean = in.number("patience_mean_minutes", patience);
      if (!(mean > 0.0)) in.fail("patience_mean_minutes", "must be positive (or null for none)");
      c.eta = 1.0 / mean;
    }
  }
  c.queue_capacity = in.integer("queue_capacity", in.at("queue_capacity"));
  c.epsilon_step = in.number("epsilon_step");
  c.epsilon_total = in.has("epsilon_total") ? in.number("epsilon_total")
                                            : static_cast<double>(count) * c.epsilon_step;

  if (in.has("detection")) {
    const json& d = in.at("detection");
    if (d.is_boolean()) {
      c.detection_enabled = d.get<bool>();
    } else if (d.is_string() && (d == "on" || d == "off")) {
      c.detection_enabled = d == "on";
    } else {
      in.fail("detection", "expected on/off");
    }
  }

  std::vector<double> lambda;
  if (lambda_list != nullptr) {
    if (!lambda_list->is_array() || lambda_list->size() != count)
      in.fail("lambda_per_min", "expected a list with one rate per step (" +
                                    std::to_string(count) + ")");
    for (const auto& v : *lambda_list) lambda.push_back(in.number("lambda_per_min", v));
  } else {
    if (!in.has("arrival")) in.fail("arrival", "missing required key");
    const json& arrival = in.at("arrival");
    if (!arrival.contains("sinusoidal") || !arrival.at("sinusoidal").is_object())
      in.fail("arrival", "expected lambda_per_min or sinusoidal");
    const Reader sin_in(arrival.at("sinusoidal"), text);
    LoadBand band;
    band.base = sin_in.number("base");
    band.amplitude = sin_in.number("amplitude");
    band.cycles = sin_in.has("cycles") ? sin_in.number("cycles") : 1.5;
    for (std::size_t j = 0; j < count; ++j) {
      lambda.push_back(band_arrival_rate(band, servers[j] * mu[j], c.horizon,
                                         static_cast<double>(j) * c.step_length, c.step_length,
                                         false));
    }
  }

  c.steps.resize(count);
  for (std::size_t j = 0; j < count; ++j) c.steps[j] = {lambda[j], mu[j], servers[j]};

  if (in.has("initial_state")) {
    const json& init = in.at("initial_state");
    if (init.is_string()) {
      if (init != "empty") in.fail("initial_state", "expected \"empty\" or a list");
    } else if (init.is_array()) {
      std::vector<double> p;
      for (const auto& v : init) p.push_back(in.number("initial_state", v));
      out.initial_state = std::move(p);
    } else {
      in.fail("initial_state", "expected \"empty\" or a list");
    }
  }
  return out;
}

ScenarioFile load_scenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open scenario file " + path.string());
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return parse_scenario(buffer.str());
}

std::string serialize_scenario(const ScenarioFile& scenario) {
  const ScenarioConfig& c = scenario.config;
  json root;
  root["horizon_minutes"] = c.horizon;
  root["step_minutes"] = c.step_length;

  json servers = json::array();
  json mu = json::array();
  json lambda = json::array();
  for (const auto& s : c.steps) {
    servers.push_back(s.servers);
    mu.push_back(s.mu);
    lambda.push_back(s.lambda);
  }
  const auto uniform = [](const json& list) {
    return std::all_of(list.begin(), list.end(), [&](const json& v) { return v == list.front(); });
  };
  root["servers"] = uniform(servers) ? servers.front() : servers;
  root["mu_per_min"] = uniform(mu) ? mu.front() : mu;
  root["gamma"] = c.gamma;
  root["eta_per_min"] = c.eta;
  root["queue_capacity"] = c.queue_capacity;
  root["epsilon_step"] = c.epsilon_step;
  root["epsilon_total"] = c.epsilon_total;
  root["detection"] = c.detection_enabled ? "on" : "off";
  root["arrival"] = {{"lambda_per_min", lambda}};
  if (scenario.initial_state) {
    root["initial_state"] = *scenario.initial_state;
  } else {
    root["initial_state"] = "empty";
  }
  return root.dump(2) + "\n";
}

}  // namespace ictmc::cli
