#include "mgrit/cli/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "mgrit/errors.hpp"

namespace mgrit::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Errors from the value parsers carry no key; set_value adds it.
struct BadValue {
  std::string expected;
};

double parse_real(std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw BadValue{"a finite real number"};
  }
  return out;
}

template <class Int>
Int parse_int(std::string_view v) {
  Int out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) throw BadValue{"an integer"};
  return out;
}

bool parse_bool(std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw BadValue{"true or false"};
}

std::vector<std::size_t> parse_list(std::string_view v) {
  std::vector<std::size_t> out;
  while (true) {
    const auto comma = v.find(',');
    const auto item = trim(v.substr(0, comma));
    if (item.empty()) throw BadValue{"a comma-separated list of integers"};
    out.push_back(parse_int<std::size_t>(item));
    if (comma == std::string_view::npos) break;
    v.remove_prefix(comma + 1);
  }
  return out;
}

std::string parse_choice(std::string_view v, std::initializer_list<std::string_view> choices) {
  for (auto c : choices) {
    if (v == c) return std::string(v);
  }
  std::string expected = "one of";
  for (auto c : choices) expected += " " + std::string(c);
  throw BadValue{expected};
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

struct Field {
  std::string_view key;
  std::function<void(RunConfig&, std::string_view)> set;
  std::function<std::string(const RunConfig&)> get;
};

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"problem",
       [](RunConfig& c, std::string_view v) { c.problem = parse_choice(v, {"dahlquist", "heat1d", "heat2d"}); },
       [](const RunConfig& c) { return c.problem; }},
      {"lambda", [](RunConfig& c, std::string_view v) { c.lambda = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.lambda); }},
      {"a",
       [](RunConfig& c, std::string_view v) {
         c.a = parse_real(v);
         if (!(c.a > 0.0)) throw BadValue{"a positive real number"};
       },
       [](const RunConfig& c) { return format_real(c.a); }},
      {"nx", [](RunConfig& c, std::string_view v) { c.nx = parse_int<std::size_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.nx); }},
      {"ny", [](RunConfig& c, std::string_view v) { c.ny = parse_int<std::size_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.ny); }},
      {"t_start", [](RunConfig& c, std::string_view v) { c.t_start = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.t_start); }},
      {"t_stop", [](RunConfig& c, std::string_view v) { c.t_stop = parse_real(v); },
       [](const RunConfig& c) { return format_real(c.t_stop); }},
      {"nt", [](RunConfig& c, std::string_view v) { c.nt = parse_int<std::size_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.nt); }},
      {"levels", [](RunConfig& c, std::string_view v) { c.levels = parse_int<std::size_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.levels); }},
      {"coarsening", [](RunConfig& c, std::string_view v) { c.coarsening = parse_list(v); },
       [](const RunConfig& c) { return format_list(c.coarsening); }},
      {"cycle_type", [](RunConfig& c, std::string_view v) { c.cycle_type = parse_choice(v, {"V", "F"}); },
       [](const RunConfig& c) { return c.cycle_type; }},
      {"cf_iter",
       [](RunConfig& c, std::string_view v) {
         c.cf_iter = parse_int<int>(v);
         if (c.cf_iter < 0) throw BadValue{"a non-negative integer"};
       },
       [](const RunConfig& c) { return std::to_string(c.cf_iter); }},
      {"nested_iteration", [](RunConfig& c, std::string_view v) { c.nested_iteration = parse_bool(v); },
       [](const RunConfig& c) { return format_bool(c.nested_iteration); }},
      {"tol",
       [](RunConfig& c, std::string_view v) {
         c.tol = parse_real(v);
         if (!(c.tol > 0.0)) throw BadValue{"a positive real number"};
       },
       [](const RunConfig& c) { return format_real(c.tol); }},
      {"max_iter",
       [](RunConfig& c, std::string_view v) {
         c.max_iter = parse_int<int>(v);
         if (c.max_iter < 1) throw BadValue{"a positive integer"};
       },
       [](const RunConfig& c) { return std::to_string(c.max_iter); }},
      {"seed", [](RunConfig& c, std::string_view v) { c.seed = parse_int<std::uint64_t>(v); },
       [](const RunConfig& c) { return std::to_string(c.seed); }},
      {"workers_time",
       [](RunConfig& c, std::string_view v) {
         c.workers_time = parse_int<int>(v);
         if (c.workers_time < 1) throw BadValue{"a positive integer"};
       },
       [](const RunConfig& c) { return std::to_string(c.workers_time); }},
      {"workers_space",
       [](RunConfig& c, std::string_view v) {
         c.workers_space = parse_int<int>(v);
         if (c.workers_space < 1) throw BadValue{"a positive integer"};
       },
       [](const RunConfig& c) { return std::to_string(c.workers_space); }},
      {"transport", [](RunConfig& c, std::string_view v) { c.transport = parse_choice(v, {"threads", "mpi"}); },
       [](const RunConfig& c) { return c.transport; }},
      {"output_dir",
       [](RunConfig& c, std::string_view v) {
         if (v.empty()) throw BadValue{"a directory path"};
         c.output_dir = std::string(v);
       },
       [](const RunConfig& c) { return c.output_dir; }},
      {"trace", [](RunConfig& c, std::string_view v) { c.trace = parse_bool(v); },
       [](const RunConfig& c) { return format_bool(c.trace); }},
      {"spatial_coarsening", [](RunConfig& c, std::string_view v) { c.spatial_coarsening = parse_bool(v); },
       [](const RunConfig& c) { return format_bool(c.spatial_coarsening); }},
      {"nx_levels",
       [](RunConfig& c, std::string_view v) { c.nx_levels = v.empty() ? std::vector<std::size_t>{} : parse_list(v); },
       [](const RunConfig& c) { return format_list(c.nx_levels); }},
      {"skip_first_f_relax", [](RunConfig& c, std::string_view v) { c.skip_first_f_relax = parse_bool(v); },
       [](const RunConfig& c) { return format_bool(c.skip_first_f_relax); }},
  };
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return &f;
  }
  return nullptr;
}

}  // namespace

void set_value(RunConfig& config, std::string_view key, std::string_view value) {
  const Field* field = find_field(key);
  if (!field) throw ConfigError("unknown key '" + std::string(key) + "'");
  try {
    field->set(config, trim(value));
  } catch (const BadValue& bad) {
    throw ConfigError("key '" + std::string(key) + "': expected " + bad.expected + ", got '" +
                      std::string(trim(value)) + "'");
  }
}

void apply_override(RunConfig& config, std::string_view assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
  }
  set_value(config, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig parse_config(std::string_view text, std::string_view source) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    lines.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  std::size_t first = 0;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]) == "[config]") first = i + 1;
  }

  RunConfig config;
  for (std::size_t i = first; i < lines.size(); ++i) {
    auto line = lines[i];
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = std::string(source) + ":" + std::to_string(i + 1) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(where + "expected 'key = value', got '" + std::string(line) + "'");
    }
    try {
      set_value(config, trim(line.substr(0, eq)), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str(), path);
}

void validate(const RunConfig& c) {
  if (c.nt < 2) throw ConfigError("key 'nt': need at least 2 time points");
  if (!(c.t_start < c.t_stop)) throw ConfigError("keys 't_start', 't_stop': need t_start < t_stop");
  if (c.levels < 1) throw ConfigError("key 'levels': need at least 1 level");
  if (c.coarsening.empty()) throw ConfigError("key 'coarsening': empty");
  if (c.levels > 1 && c.coarsening.size() != 1 && c.coarsening.size() != c.levels - 1) {
    throw ConfigError("key 'coarsening': expected 1 or " + std::to_string(c.levels - 1) +
                      " factors, got " + std::to_string(c.coarsening.size()));
  }
  for (auto m : c.coarsening) {
    if (m < 2) throw ConfigError("key 'coarsening': factors must be at least 2");
  }
  if (c.problem != "dahlquist" && c.nx < 3) throw ConfigError("key 'nx': need at least 3 points");
  if (c.problem == "heat2d" && c.ny < 3) throw ConfigError("key 'ny': need at least 3 points");
  if (c.spatial_coarsening) {
    if (c.problem != "heat1d") {
      throw ConfigError("key 'spatial_coarsening': only supported for problem = heat1d");
    }
    if (c.nx_levels.size() != c.levels) {
      throw ConfigError("key 'nx_levels': expected " + std::to_string(c.levels) + " entries, got " +
                        std::to_string(c.nx_levels.size()));
    }
    if (c.nx_levels.front() != c.nx) {
      throw ConfigError("key 'nx_levels': first entry must equal nx = " + std::to_string(c.nx));
    }
    for (std::size_t l = 0; l + 1 < c.nx_levels.size(); ++l) {
      const auto fine = c.nx_levels[l];
      const auto coarse = c.nx_levels[l + 1];
      if (coarse < 3 || fine != 2 * coarse - 1) {
        throw ConfigError("key 'nx_levels': " + std::to_string(fine) + " -> " + std::to_string(coarse) +
                          " is not a nested halving (need fine = 2 coarse - 1)");
      }
    }
  }
}

std::string format_config(const RunConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += std::string(f.key) + " = " + f.get(config) + "\n";
  }
  return out;
}

}  // namespace mgrit::cli
