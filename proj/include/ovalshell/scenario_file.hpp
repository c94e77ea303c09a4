#pragma once

// Scenario files: line-oriented, INI-style sections with `key = value`.
//
//   [pipe]               outer_diameter_mm, wall_thickness_mm, length_mm
//   [material]           youngs_modulus_mpa, poissons_ratio, yield_stress_mpa
//   [loading]            mode = imposed | restrained
//                        imposed:    bending_strain_ue
//                        restrained: target_stress_mpa, restraint_force_n (optional)
//   [loading.station]    x_mm, force_n           (imposed only, repeatable)
//   [report]             x_mm = comma-separated evaluation points (optional)
//   [numerics]           n_max, tail_tol, fd_nodes (optional)
//
// `#` starts a comment. Unknown sections or keys are rejected.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ovalshell/core.hpp"
#include "ovalshell/harmonics.hpp"
#include "ovalshell/oracle.hpp"

namespace ovalshell {

enum class LoadingMode { Imposed, Restrained };

struct Numerics {
  int n_max = kDefaultNMax;
  double tail_tol = kDefaultTailTol;
  int fd_nodes = kDefaultFdNodes;
};

struct Scenario {
  double outer_diameter_mm = 0.0;
  double wall_thickness_mm = 0.0;
  double length_mm = 0.0;
  double youngs_modulus_mpa = 0.0;
  double poissons_ratio = 0.0;
  double yield_stress_mpa = 0.0;
  LoadingMode mode = LoadingMode::Restrained;
  std::vector<OvalisationStation> stations;  // imposed
  double bending_strain_ue = 0.0;            // imposed
  double target_stress_mpa = 0.0;            // restrained
  std::optional<double> restraint_force_n;   // restrained
  std::vector<double> report_x_mm;
  Numerics numerics;

  PipeSection pipe() const { return build_pipe(outer_diameter_mm, wall_thickness_mm, length_mm); }
  Material material() const {
    return make_material(youngs_modulus_mpa, poissons_ratio, yield_stress_mpa);
  }
};

namespace detail {

inline std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

inline std::string located(std::string_view source, int line, std::string_view what) {
  return std::string(source) + ":" + std::to_string(line) + ": " + std::string(what);
}

inline double parse_number(const std::string& text, std::string_view source, int line,
                           std::string_view key) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end && std::isfinite(value), ErrorCode::ParseError,
          located(source, line, "key '" + std::string(key) + "' expects a number, got '" + text +
                                    "'"));
  return value;
}

inline int parse_integer(const std::string& text, std::string_view source, int line,
                         std::string_view key) {
  int value = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc() && ptr == end, ErrorCode::ParseError,
          located(source, line, "key '" + std::string(key) + "' expects an integer, got '" + text +
                                    "'"));
  return value;
}

struct Entry {
  std::string value;
  int line;
};

using Section = std::map<std::string, Entry>;

inline const std::map<std::string, std::vector<std::string>>& schema() {
  static const std::map<std::string, std::vector<std::string>> keys{
      {"pipe", {"outer_diameter_mm", "wall_thickness_mm", "length_mm"}},
      {"material", {"youngs_modulus_mpa", "poissons_ratio", "yield_stress_mpa"}},
      {"loading", {"mode", "bending_strain_ue", "target_stress_mpa", "restraint_force_n"}},
      {"loading.station", {"x_mm", "force_n"}},
      {"report", {"x_mm"}},
      {"numerics", {"n_max", "tail_tol", "fd_nodes"}},
  };
  return keys;
}

}  // namespace detail

/// Parses and validates a scenario. ParseError carries `source:line`;
/// ValidationError names the violated constraint.
inline Scenario parse_scenario(std::istream& in, std::string_view source = "<scenario>") {
  using namespace detail;
  std::map<std::string, Section> sections;
  std::vector<Section> stations;
  Section* current = nullptr;
  std::string current_name;
  std::string raw;
  int line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(std::string_view(raw).substr(0, hash));
    if (line.empty()) continue;
    if (line.front() == '[') {
      require(line.back() == ']', ErrorCode::ParseError,
              located(source, line_no, "unterminated section header"));
      current_name = trim(std::string_view(line).substr(1, line.size() - 2));
      require(schema().contains(current_name), ErrorCode::ParseError,
              located(source, line_no, "unknown section [" + current_name + "]"));
      if (current_name == "loading.station") {
        current = &stations.emplace_back();
      } else {
        require(!sections.contains(current_name), ErrorCode::ParseError,
                located(source, line_no, "duplicate section [" + current_name + "]"));
        current = &sections[current_name];
      }
      continue;
    }
    const auto eq = line.find('=');
    require(eq != std::string::npos, ErrorCode::ParseError,
            located(source, line_no, "expected 'key = value'"));
    require(current != nullptr, ErrorCode::ParseError,
            located(source, line_no, "key outside of any section"));
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    const auto& allowed = schema().at(current_name);
    require(std::find(allowed.begin(), allowed.end(), key) != allowed.end(), ErrorCode::ParseError,
            located(source, line_no, "unknown key '" + key + "' in [" + current_name + "]"));
    require(!value.empty(), ErrorCode::ParseError,
            located(source, line_no, "key '" + key + "' has no value"));
    require(!current->contains(key), ErrorCode::ParseError,
            located(source, line_no, "duplicate key '" + key + "'"));
    (*current)[key] = Entry{value, line_no};
  }

  auto required = [&](const std::string& section, const std::string& key) -> const Entry& {
    const auto it = sections.find(section);
    require(it != sections.end(), ErrorCode::ValidationError,
            "missing section [" + section + "]");
    const auto kt = it->second.find(key);
    require(kt != it->second.end(), ErrorCode::ValidationError,
            "missing key '" + key + "' in [" + section + "]");
    return kt->second;
  };
  auto number = [&](const std::string& section, const std::string& key) {
    const auto& e = required(section, key);
    return parse_number(e.value, source, e.line, key);
  };
  auto optional_entry = [&](const std::string& section,
                            const std::string& key) -> const Entry* {
    const auto it = sections.find(section);
    if (it == sections.end()) return nullptr;
    const auto kt = it->second.find(key);
    return kt == it->second.end() ? nullptr : &kt->second;
  };

  Scenario sc;
  sc.outer_diameter_mm = number("pipe", "outer_diameter_mm");
  sc.wall_thickness_mm = number("pipe", "wall_thickness_mm");
  sc.length_mm = number("pipe", "length_mm");
  sc.youngs_modulus_mpa = number("material", "youngs_modulus_mpa");
  sc.poissons_ratio = number("material", "poissons_ratio");
  sc.yield_stress_mpa = number("material", "yield_stress_mpa");

  const std::string mode = required("loading", "mode").value;
  const bool has_imposed_keys = optional_entry("loading", "bending_strain_ue") || !stations.empty();
  const bool has_restrained_keys = optional_entry("loading", "target_stress_mpa") ||
                                   optional_entry("loading", "restraint_force_n");
  require(!(has_imposed_keys && has_restrained_keys), ErrorCode::ValidationError,
          "exactly one loading mode is allowed, found keys for both imposed and restrained");
  if (mode == "imposed") {
    sc.mode = LoadingMode::Imposed;
    sc.bending_strain_ue = number("loading", "bending_strain_ue");
    require(!stations.empty(), ErrorCode::ValidationError,
            "imposed loading needs at least one [loading.station]");
    for (const auto& st : stations) {
      auto field = [&](const std::string& key) {
        const auto it = st.find(key);
        require(it != st.end(), ErrorCode::ValidationError,
                "missing key '" + key + "' in [loading.station]");
        return parse_number(it->second.value, source, it->second.line, key);
      };
      sc.stations.push_back(OvalisationStation{field("x_mm"), field("force_n")});
    }
  } else if (mode == "restrained") {
    sc.mode = LoadingMode::Restrained;
    sc.target_stress_mpa = number("loading", "target_stress_mpa");
    if (const auto* e = optional_entry("loading", "restraint_force_n")) {
      sc.restraint_force_n = parse_number(e->value, source, e->line, "restraint_force_n");
    }
  } else {
    throw Error(ErrorCode::ValidationError,
                "loading mode must be 'imposed' or 'restrained', got '" + mode + "'");
  }

  if (const auto* e = optional_entry("report", "x_mm")) {
    std::stringstream list(e->value);
    std::string item;
    while (std::getline(list, item, ',')) {
      sc.report_x_mm.push_back(parse_number(trim(item), source, e->line, "x_mm"));
    }
  }
  if (const auto* e = optional_entry("numerics", "n_max")) {
    sc.numerics.n_max = parse_integer(e->value, source, e->line, "n_max");
  }
  if (const auto* e = optional_entry("numerics", "tail_tol")) {
    sc.numerics.tail_tol = parse_number(e->value, source, e->line, "tail_tol");
  }
  if (const auto* e = optional_entry("numerics", "fd_nodes")) {
    sc.numerics.fd_nodes = parse_integer(e->value, source, e->line, "fd_nodes");
  }
  return sc;
}

/// Checks every invariant of the resolved scenario; throws ValidationError.
inline void validate(const Scenario& sc) {
  try {
    (void)sc.pipe();
    (void)sc.material();
  } catch (const Error& e) {
    throw Error(ErrorCode::ValidationError, e.what());
  }
  require(is_valid_harmonic(sc.numerics.n_max), ErrorCode::ValidationError,
          "numerics.n_max must be even and >= 2");
  require(sc.numerics.tail_tol > 0.0, ErrorCode::ValidationError,
          "numerics.tail_tol must be positive");
  require(sc.numerics.fd_nodes >= kMinFdNodes, ErrorCode::ValidationError,
          "numerics.fd_nodes must be >= " + std::to_string(kMinFdNodes));
  if (sc.mode == LoadingMode::Imposed) {
    require(!sc.stations.empty(), ErrorCode::ValidationError, "imposed loading needs stations");
    for (const auto& st : sc.stations) {
      require(st.force < 0.0, ErrorCode::ValidationError,
              "imposed station forces must be inward (negative)");
    }
    require(sc.bending_strain_ue >= 0.0, ErrorCode::ValidationError,
            "bending_strain_ue must be non-negative");
  } else {
    require(std::abs(sc.target_stress_mpa) <= sc.yield_stress_mpa, ErrorCode::ValidationError,
            "target_stress_mpa must not exceed yield_stress_mpa");
    if (sc.restraint_force_n) {
      require(*sc.restraint_force_n >= 0.0, ErrorCode::ValidationError,
              "restraint_force_n must be outward (non-negative)");
    }
  }
}

inline Scenario load_scenario(std::istream& in, std::string_view source = "<scenario>") {
  auto sc = parse_scenario(in, source);
  validate(sc);
  return sc;
}

inline Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open scenario file " + path);
  return load_scenario(in, path);
}

/// Names accepted by set_scalar (bare or section-qualified).
inline bool set_scalar(Scenario& sc, std::string_view name, double value) {
  const auto dot = name.rfind('.');
  const std::string_view key = dot == std::string_view::npos ? name : name.substr(dot + 1);
  if (key == "outer_diameter_mm") sc.outer_diameter_mm = value;
  else if (key == "wall_thickness_mm") sc.wall_thickness_mm = value;
  else if (key == "length_mm") sc.length_mm = value;
  else if (key == "youngs_modulus_mpa") sc.youngs_modulus_mpa = value;
  else if (key == "poissons_ratio") sc.poissons_ratio = value;
  else if (key == "yield_stress_mpa") sc.yield_stress_mpa = value;
  else if (key == "bending_strain_ue") sc.bending_strain_ue = value;
  else if (key == "target_stress_mpa") sc.target_stress_mpa = value;
  else if (key == "restraint_force_n") sc.restraint_force_n = value;
  else return false;
  return true;
}

namespace detail {
// Shortest text that parses back to the same double.
inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}
}  // namespace detail

/// Writes the resolved scenario back in the file format.
inline void write_scenario(std::ostream& out, const Scenario& sc) {
  using detail::format_number;
  out << "[pipe]\n"
      << "outer_diameter_mm = " << format_number(sc.outer_diameter_mm) << '\n'
      << "wall_thickness_mm = " << format_number(sc.wall_thickness_mm) << '\n'
      << "length_mm = " << format_number(sc.length_mm) << '\n'
      << "[material]\n"
      << "youngs_modulus_mpa = " << format_number(sc.youngs_modulus_mpa) << '\n'
      << "poissons_ratio = " << format_number(sc.poissons_ratio) << '\n'
      << "yield_stress_mpa = " << format_number(sc.yield_stress_mpa) << '\n'
      << "[loading]\n";
  if (sc.mode == LoadingMode::Imposed) {
    out << "mode = imposed\n"
        << "bending_strain_ue = " << format_number(sc.bending_strain_ue) << '\n';
    for (const auto& st : sc.stations) {
      out << "[loading.station]\n"
          << "x_mm = " << format_number(st.x0) << '\n'
          << "force_n = " << format_number(st.force) << '\n';
    }
  } else {
    out << "mode = restrained\n"
        << "target_stress_mpa = " << format_number(sc.target_stress_mpa) << '\n';
    if (sc.restraint_force_n) {
      out << "restraint_force_n = " << format_number(*sc.restraint_force_n) << '\n';
    }
  }
  if (!sc.report_x_mm.empty()) {
    out << "[report]\nx_mm = ";
    for (std::size_t i = 0; i < sc.report_x_mm.size(); ++i) {
      out << (i ? ", " : "") << format_number(sc.report_x_mm[i]);
    }
    out << '\n';
  }
  out << "[numerics]\n"
      << "n_max = " << sc.numerics.n_max << '\n'
      << "tail_tol = " << format_number(sc.numerics.tail_tol) << '\n'
      << "fd_nodes = " << sc.numerics.fd_nodes << '\n';
}

}  // namespace ovalshell
