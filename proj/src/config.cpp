#include "cmm/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "cmm/error.hpp"

namespace cmm {

namespace {

constexpr double two_pi = constants::two_pi;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto item = trim(s.substr(0, comma));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry, std::less<>>;

double parse_number(const std::string& key, const Entry& e) {
  const std::string_view v = e.value;
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key, e.line, "expected a plain number, got '" + e.value + "'");
  }
  return out;
}

int parse_int(const std::string& key, const Entry& e) {
  const double v = parse_number(key, e);
  if (v != std::floor(v) || v < 0 || v > 1e7) {
    throw ConfigError(key, e.line, "expected a non-negative integer");
  }
  return static_cast<int>(v);
}

bool parse_bool(const std::string& key, const Entry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw ConfigError(key, e.line, "expected true or false");
}

// Plain (absolute) [system] keys and the field they set, in rad/s for _hz keys.
struct FieldKey {
  const char* key;
  double PhysicalParams::*field;
};

constexpr FieldKey hz_fields[] = {
    {"omega_c_hz", &PhysicalParams::omega_c},   {"omega_m1_hz", &PhysicalParams::omega_m1},
    {"omega_m2_hz", &PhysicalParams::omega_m2}, {"omega_b_hz", &PhysicalParams::omega_b},
    {"omega_drive_hz", &PhysicalParams::omega_drive}, {"delta_b_hz", &PhysicalParams::delta_B},
    {"kappa_c_hz", &PhysicalParams::kappa_c},   {"kappa_m1_hz", &PhysicalParams::kappa_m1},
    {"kappa_m2_hz", &PhysicalParams::kappa_m2}, {"gamma_b_hz", &PhysicalParams::gamma_b},
    {"g1_hz", &PhysicalParams::g1},             {"g2_hz", &PhysicalParams::g2},
    {"J_hz", &PhysicalParams::J},               {"G0_hz", &PhysicalParams::G0},
};

// Mode frequencies that can be given as absolute, relative-to-drive, or
// normalized detunings.
struct DetunedMode {
  const char* tag;  // c, m1, m2
  double PhysicalParams::*field;
};

constexpr DetunedMode detuned_modes[] = {
    {"c", &PhysicalParams::omega_c},
    {"m1", &PhysicalParams::omega_m1},
    {"m2", &PhysicalParams::omega_m2},
};

const std::set<std::string, std::less<>>& known_system_keys() {
  static const std::set<std::string, std::less<>> keys = [] {
    std::set<std::string, std::less<>> k;
    for (const auto& f : hz_fields) k.insert(f.key);
    for (const auto& m : detuned_modes) {
      k.insert(std::string("delta_") + m.tag + "_hz");
      k.insert(std::string("delta_") + m.tag + "_over_omega_b");
    }
    k.insert("delta_b_over_omega_b");
    k.insert("J_over_g1");
    k.insert("drive_amplitude_hz");
    k.insert("G_direct_hz");
    k.insert("temperature_k");
    return k;
  }();
  return keys;
}

// Base names that denote a frequency; seeing one without `_hz` is a unit error.
bool looks_like_bare_frequency(std::string_view key) {
  static const char* bases[] = {"omega_c", "omega_m1", "omega_m2", "omega_b", "omega_drive",
                                "delta_b", "delta_c", "delta_m1", "delta_m2", "kappa_c",
                                "kappa_m1", "kappa_m2", "gamma_b", "g1", "g2", "J", "G0",
                                "drive_amplitude", "G_direct", "temperature"};
  for (const char* b : bases) {
    const std::string_view base(b);
    if (key.substr(0, base.size()) == base) return true;
  }
  return false;
}

void require_one_of(const Section& sys, std::initializer_list<std::string> keys,
                    std::vector<std::string>& missing) {
  int present = 0;
  int line = 0;
  for (const auto& k : keys) {
    if (auto it = sys.find(k); it != sys.end()) {
      ++present;
      line = it->second.line;
    }
  }
  std::string joined;
  for (const auto& k : keys) joined += (joined.empty() ? "" : " | ") + k;
  if (present == 0) missing.push_back(joined);
  if (present > 1) throw ConfigError(joined, line, "give exactly one of these keys");
}

PhysicalParams build_params(const Section& sys) {
  const auto& known = known_system_keys();
  for (const auto& [key, e] : sys) {
    if (known.contains(key)) continue;
    if (looks_like_bare_frequency(key)) {
      throw ConfigError(key, e.line,
                        "unit ambiguity: frequency keys need an explicit _hz suffix "
                        "(temperature uses _k)");
    }
    throw ConfigError(key, e.line, "unknown key in [system]");
  }

  std::vector<std::string> missing;
  for (const auto& f : hz_fields) {
    const std::string k = f.key;
    if (k == "J_hz") {
      require_one_of(sys, {"J_hz", "J_over_g1"}, missing);
    } else if (k == "delta_b_hz") {
      require_one_of(sys, {"delta_b_hz", "delta_b_over_omega_b"}, missing);
    } else if (k == "omega_c_hz" || k == "omega_m1_hz" || k == "omega_m2_hz") {
      const std::string tag = k.substr(6, k.size() - 9);
      require_one_of(sys, {k, "delta_" + tag + "_hz", "delta_" + tag + "_over_omega_b"}, missing);
    } else if (!sys.contains(k)) {
      missing.push_back(k);
    }
  }
  require_one_of(sys, {"drive_amplitude_hz", "G_direct_hz"}, missing);
  if (!sys.contains("temperature_k")) missing.push_back("temperature_k");
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError(list, 0, "missing required key(s) in [system]");
  }

  PhysicalParams p;
  // Absolute values first; relative forms depend on omega_drive, omega_b, g1.
  for (const auto& f : hz_fields) {
    if (auto it = sys.find(f.key); it != sys.end()) p.*f.field = two_pi * parse_number(f.key, it->second);
  }
  if (auto it = sys.find("drive_amplitude_hz"); it != sys.end()) {
    p.drive_amplitude = two_pi * parse_number(it->first, it->second);
  }
  if (auto it = sys.find("G_direct_hz"); it != sys.end()) {
    p.G_direct = two_pi * parse_number(it->first, it->second);
  }
  p.temperature = parse_number("temperature_k", sys.at("temperature_k"));
  for (const auto& [key, e] : sys) {
    const bool relative = key.starts_with("delta_") || key == "J_over_g1";
    if (relative && key != "delta_b_hz") apply_parameter(p, key, parse_number(key, e));
  }
  try {
    p.validate();
  } catch (const ConfigError& err) {
    // Point at the offending line when the field maps onto a single key.
    const std::string hz = err.field() == "temperature" ? "temperature_k" : err.field() + "_hz";
    const auto it = sys.find(hz);
    throw ConfigError(err.field(), it == sys.end() ? 0 : it->second.line,
                      "invalid value: " + std::string(err.what()));
  }
  return p;
}

Provenance build_provenance(const Section& sec) {
  Provenance prov;
  const auto& known = known_system_keys();
  for (const auto& [key, e] : sec) {
    if (key == "published" || key == "assumed") {
      auto& list = key == "published" ? prov.published : prov.assumed;
      for (auto& item : split_list(e.value)) {
        if (!known.contains(item)) {
          throw ConfigError(key, e.line, "'" + item + "' is not a [system] key");
        }
        list.push_back(std::move(item));
      }
    } else if (key == "notes") {
      std::string_view rest = e.value;
      while (!rest.empty()) {
        const auto semi = rest.find(';');
        const auto note = trim(rest.substr(0, semi));
        if (!note.empty()) prov.notes.emplace_back(note);
        if (semi == std::string_view::npos) break;
        rest.remove_prefix(semi + 1);
      }
    } else {
      throw ConfigError(key, e.line, "unknown key in [provenance]");
    }
  }
  return prov;
}

SweepSpec build_sweep(const Section& sec, const PhysicalParams& params, const Provenance& prov,
                      const std::string& source) {
  static const std::set<std::string, std::less<>> keys = {
      "name", "parameter", "start", "stop", "count", "outputs", "barnett_pair",
      "outer_parameter", "outer_values"};
  for (const auto& [key, e] : sec) {
    if (!keys.contains(key)) throw ConfigError(key, e.line, "unknown key in [sweep]");
  }
  std::vector<std::string> missing;
  for (const char* k : {"parameter", "start", "stop", "count", "outputs"}) {
    if (!sec.contains(k)) missing.emplace_back(k);
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw ConfigError(list, 0, "missing required key(s) in [sweep]");
  }

  SweepSpec s;
  s.base = source;
  s.params = params;
  s.provenance = prov;
  s.name = sec.contains("name") ? sec.at("name").value
                                : std::filesystem::path(source).stem().string();
  const Entry& param = sec.at("parameter");
  if (!is_parameter(param.value)) {
    throw ConfigError("parameter", param.line, "unknown sweep parameter '" + param.value + "'");
  }
  s.axis.parameter = param.value;
  s.axis.start = parse_number("start", sec.at("start"));
  s.axis.stop = parse_number("stop", sec.at("stop"));
  s.axis.count = parse_int("count", sec.at("count"));
  if (s.axis.count < 2) throw ConfigError("count", sec.at("count").line, "count must be >= 2");

  const Entry& outs = sec.at("outputs");
  for (const auto& name : split_list(outs.value)) {
    if (name == "stability") continue;  // always reported
    try {
      s.outputs.push_back(parse_measure(name));
    } catch (const ConfigError& e) {
      throw ConfigError("outputs", outs.line, e.what());
    }
  }
  if (s.outputs.empty()) throw ConfigError("outputs", outs.line, "no measures requested");
  if (auto it = sec.find("barnett_pair"); it != sec.end()) {
    s.barnett_pair = parse_bool(it->first, it->second);
  }

  const bool has_outer = sec.contains("outer_parameter");
  if (has_outer != sec.contains("outer_values")) {
    throw ConfigError("outer_parameter", 0, "outer_parameter and outer_values go together");
  }
  if (has_outer) {
    OuterAxis outer;
    const Entry& op = sec.at("outer_parameter");
    if (!is_parameter(op.value)) {
      throw ConfigError("outer_parameter", op.line, "unknown sweep parameter '" + op.value + "'");
    }
    outer.parameter = op.value;
    const Entry& ov = sec.at("outer_values");
    for (const auto& item : split_list(ov.value)) outer.values.push_back(parse_number("outer_values", {item, ov.line}));
    if (outer.values.empty()) throw ConfigError("outer_values", ov.line, "empty list");
    s.outer = std::move(outer);
  }
  s.validate();
  return s;
}

WignerSettings build_wigner(const Section& sec) {
  WignerSettings w;
  for (const auto& [key, e] : sec) {
    if (key == "modes") {
      for (const auto& m : split_list(e.value)) {
        try {
          w.modes.push_back(parse_mode(m));
        } catch (const ConfigError& err) {
          throw ConfigError(key, e.line, err.what());
        }
      }
    } else if (key == "half_range_sigmas") {
      w.half_range_sigmas = parse_number(key, e);
      if (!(w.half_range_sigmas > 0)) throw ConfigError(key, e.line, "must be > 0");
    } else if (key == "resolution") {
      w.resolution = parse_int(key, e);
      if (w.resolution < 2) throw ConfigError(key, e.line, "must be >= 2");
    } else {
      throw ConfigError(key, e.line, "unknown key in [wigner]");
    }
  }
  return w;
}

}  // namespace

std::vector<std::string> Provenance::banner() const {
  std::vector<std::string> out;
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ", ") + x;
    return s.empty() ? std::string("(none)") : s;
  };
  out.push_back("published values: " + join(published));
  out.push_back("assumed values:   " + join(assumed));
  for (const auto& n : notes) out.push_back("note: " + n);
  return out;
}

MeasureRequest parse_measure(std::string_view name) {
  MeasureRequest r;
  r.name = std::string(name);
  if (name.size() < 3 || name[1] != '_') {
    throw ConfigError("outputs", 0, "unknown measure '" + r.name + "'");
  }
  switch (name[0]) {
    case 'E': r.kind = MeasureKind::bipartite; break;
    case 'R': r.kind = MeasureKind::tripartite; break;
    case 'V': r.kind = MeasureKind::squeezing; break;
    default: throw ConfigError("outputs", 0, "unknown measure '" + r.name + "'");
  }
  std::string_view rest = name.substr(2);
  while (!rest.empty()) {
    std::size_t len = (rest[0] == 'm') ? 2 : 1;
    if (len > rest.size()) throw ConfigError("outputs", 0, "bad mode list in '" + r.name + "'");
    r.modes.push_back(parse_mode(rest.substr(0, len)));
    rest.remove_prefix(len);
  }
  const std::size_t want = r.kind == MeasureKind::bipartite ? 2 : r.kind == MeasureKind::tripartite ? 3 : 1;
  if (r.modes.size() != want) {
    throw ConfigError("outputs", 0, "'" + r.name + "' needs " + std::to_string(want) + " mode(s)");
  }
  for (std::size_t i = 0; i < r.modes.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (r.modes[i] == r.modes[j]) throw ConfigError("outputs", 0, "repeated mode in '" + r.name + "'");
    }
  }
  return r;
}

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(count);
  for (int i = 0; i < count; ++i) {
    v[i] = (i == count - 1) ? stop : start + (stop - start) * i / (count - 1);
  }
  return v;
}

void SweepSpec::validate() const {
  if (axis.count < 2) throw ConfigError("count", 0, "count must be >= 2");
  if (!is_parameter(axis.parameter)) throw ConfigError("parameter", 0, "unknown sweep parameter");
  if (outer && (!is_parameter(outer->parameter) || outer->values.empty())) {
    throw ConfigError("outer_parameter", 0, "invalid outer axis");
  }
  if (outputs.empty()) throw ConfigError("outputs", 0, "no measures requested");
  params.validate();
}

std::size_t SweepSpec::point_count() const {
  return static_cast<std::size_t>(axis.count) * (outer ? outer->values.size() : 1);
}

bool is_parameter(std::string_view name) { return known_system_keys().contains(name); }

void apply_parameter(PhysicalParams& p, std::string_view name, double value) {
  for (const auto& f : hz_fields) {
    if (name == f.key) {
      p.*f.field = two_pi * value;
      return;
    }
  }
  for (const auto& m : detuned_modes) {
    const std::string tag = m.tag;
    if (name == "delta_" + tag + "_hz") {
      p.*m.field = p.omega_drive + two_pi * value;
      return;
    }
    if (name == "delta_" + tag + "_over_omega_b") {
      p.*m.field = p.omega_drive + value * p.omega_b;
      return;
    }
  }
  if (name == "delta_b_over_omega_b") {
    p.delta_B = value * p.omega_b;
  } else if (name == "J_over_g1") {
    p.J = value * p.g1;
  } else if (name == "drive_amplitude_hz") {
    p.drive_amplitude = two_pi * value;
    p.G_direct.reset();
  } else if (name == "G_direct_hz") {
    p.G_direct = two_pi * value;
    p.drive_amplitude.reset();
  } else if (name == "temperature_k") {
    p.temperature = value;
  } else {
    throw ConfigError(std::string(name), 0, "unknown parameter");
  }
}

Config parse_config(std::string_view text, const std::string& source) {
  std::map<std::string, Section, std::less<>> sections;
  static const std::set<std::string, std::less<>> known_sections = {"system", "sweep", "wigner",
                                                                    "provenance"};
  Section* current = nullptr;
  int line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    // ';' also separates notes, so it only starts a comment at the line start.
    if (line.empty() || line.front() == ';') continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("", line_no, "malformed section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!known_sections.contains(name)) throw ConfigError(name, line_no, "unknown section");
      if (sections.contains(name)) throw ConfigError(name, line_no, "duplicate section");
      current = &sections[name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("", line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("", line_no, "empty key");
    if (!current) throw ConfigError(key, line_no, "key outside of any section");
    if (current->contains(key)) {
      throw ConfigError(key, line_no,
                        "duplicate key (first given on line " +
                            std::to_string(current->at(key).line) + ")");
    }
    (*current)[key] = Entry{value, line_no};
  }

  Config cfg;
  cfg.source = source;
  cfg.params = build_params(sections["system"]);
  if (auto it = sections.find("provenance"); it != sections.end()) {
    cfg.provenance = build_provenance(it->second);
  }
  if (auto it = sections.find("wigner"); it != sections.end()) cfg.wigner = build_wigner(it->second);
  if (auto it = sections.find("sweep"); it != sections.end()) {
    cfg.sweep = build_sweep(it->second, cfg.params, cfg.provenance, source);
  }
  return cfg;
}

Config load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), 0, "cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

}  // namespace cmm
