#include "wavelab/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "wavelab/errors.hpp"

namespace wavelab {
namespace {

struct Entry {
  std::string value;
  int line = 0;
};

using Table = std::map<std::string, Entry>;

struct Document {
  std::map<std::string, Table> sections;
  std::vector<Table> bumps;
};

std::string trim(std::string_view s) {
  auto b = s.begin();
  auto e = s.end();
  while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
  while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
  return std::string(b, e);
}

std::string unquote(std::string v) {
  if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') || (v.front() == '\'' && v.back() == '\'')))
    return v.substr(1, v.size() - 2);
  return v;
}

Document read_document(std::string_view text) {
  Document doc;
  Table* current = &doc.sections["scenario"];
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with("[[")) {
      if (!line.ends_with("]]")) throw ParseError(line_no, "unterminated table header '" + line + "'");
      const std::string name = trim(line.substr(2, line.size() - 4));
      if (name != "bump") throw ParseError(line_no, "unknown repeated table '" + name + "'");
      doc.bumps.emplace_back();
      current = &doc.bumps.back();
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header '" + line + "'");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name != "data" && name != "grid" && name != "scenario" && name != "thresholds")
        throw ParseError(line_no, "unknown section '" + name + "'");
      current = &doc.sections[name];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = unquote(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + key + "'");
    (*current)[key] = Entry{value, line_no};
  }
  return doc;
}

double to_number(const Entry& e, const std::string& key) {
  const std::string& s = e.value;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw ParseError(e.line, "'" + key + "' expects a number, got '" + s + "'");
  return v;
}

std::vector<double> to_list(const Entry& e, const std::string& key) {
  std::vector<double> out;
  std::string s = e.value;
  if (s.size() >= 2 && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(to_number(Entry{trim(item), e.line}, key));
  return out;
}

// Where an override key lands when no section is given.
std::string default_section(const std::string& key) {
  if (key == "mode" || key == "h" || key == "cfl" || key == "T") return "grid";
  if (key == "epsilon" || key == "sigma_samples" || key == "theta_samples") return "data";
  return "scenario";
}

void apply_override(Document& doc, const std::string& entry) {
  const auto eq = entry.find('=');
  if (eq == std::string::npos) throw ParseError(0, "override '" + entry + "' is not key=value");
  std::string key = trim(entry.substr(0, eq));
  const std::string value = trim(entry.substr(eq + 1));
  std::string section;
  if (auto dot = key.find('.'); dot != std::string::npos) {
    section = key.substr(0, dot);
    key = key.substr(dot + 1);
  } else {
    section = default_section(key);
  }
  if (section != "data" && section != "grid" && section != "scenario" && section != "thresholds")
    throw ParseError(0, "override names unknown section '" + section + "'");
  doc.sections[section][key] = Entry{value, 0};
}

Bump read_bump(const Table& t, int index, int& component, char& kind) {
  const std::string where = "bump[" + std::to_string(index) + "]";
  auto need = [&](const char* key) -> const Entry& {
    auto it = t.find(key);
    if (it == t.end()) throw ValidationError(where + "." + key, "missing required key");
    return it->second;
  };
  for (const auto& [key, entry] : t) {
    if (key != "component" && key != "kind" && key != "center" && key != "radius" && key != "amplitude")
      throw ParseError(entry.line, "unknown bump key '" + key + "'");
  }
  const double comp = to_number(need("component"), "component");
  if (comp != 1.0 && comp != 2.0) throw ValidationError(where + ".component", "must be 1 or 2");
  component = static_cast<int>(comp) - 1;
  const std::string k = need("kind").value;
  if (k != "f" && k != "g") throw ValidationError(where + ".kind", "must be 'f' or 'g'");
  kind = k[0];
  Bump b;
  const auto c = to_list(need("center"), "center");
  if (c.size() != 2) throw ValidationError(where + ".center", "expects two coordinates");
  b.center = {c[0], c[1]};
  b.radius = to_number(need("radius"), "radius");
  if (!(b.radius > 0.0) || !std::isfinite(b.radius))
    throw ValidationError(where + ".radius", "must be positive and finite");
  b.amplitude = to_number(need("amplitude"), "amplitude");
  if (!std::isfinite(b.amplitude)) throw ValidationError(where + ".amplitude", "must be finite");
  return b;
}

}  // namespace

std::string_view to_string(SolverMode mode) {
  return mode == SolverMode::radial ? "radial" : "cartesian-2d";
}

double ScenarioConfig::option(const std::string& key, double fallback) const {
  auto it = options.find(key);
  return it == options.end() ? fallback : it->second;
}

double ScenarioConfig::threshold(const std::string& key, double fallback) const {
  auto it = thresholds.find(key);
  return it == thresholds.end() ? fallback : it->second;
}

ScenarioConfig parse_scenario(std::string_view text, const std::vector<std::string>& overrides) {
  Document doc = read_document(text);
  for (const auto& o : overrides) apply_override(doc, o);

  ScenarioConfig cfg;
  const Table& scenario = doc.sections["scenario"];
  const Table& grid = doc.sections["grid"];
  const Table& data = doc.sections["data"];

  for (const auto& [key, entry] : scenario) {
    if (key == "name")
      cfg.scenario = entry.value;
    else if (key == "out")
      cfg.output_dir = entry.value;
    else
      cfg.options[key] = to_number(entry, key);
  }
  for (const auto& [key, entry] : doc.sections["thresholds"]) cfg.thresholds[key] = to_number(entry, key);

  for (const auto& [key, entry] : grid) {
    if (key != "mode" && key != "h" && key != "cfl" && key != "T")
      throw ParseError(entry.line, "unknown [grid] key '" + key + "'");
  }
  for (const auto& [key, entry] : data) {
    if (key != "epsilon" && key != "sigma_samples" && key != "theta_samples")
      throw ParseError(entry.line, "unknown [data] key '" + key + "'");
  }

  if (auto it = grid.find("mode"); it != grid.end()) {
    if (it->second.value == "radial")
      cfg.mode = SolverMode::radial;
    else if (it->second.value == "cartesian-2d")
      cfg.mode = SolverMode::cartesian2d;
    else
      throw ValidationError("mode", "expected 'cartesian-2d' or 'radial', got '" + it->second.value + "'");
  }
  if (auto it = data.find("epsilon"); it != data.end()) cfg.epsilons = to_list(it->second, "epsilon");
  if (auto it = data.find("sigma_samples"); it != data.end())
    cfg.sigma_samples = to_list(it->second, "sigma_samples");
  if (auto it = data.find("theta_samples"); it != data.end())
    cfg.theta_samples = to_list(it->second, "theta_samples");

  for (std::size_t i = 0; i < doc.bumps.size(); ++i) {
    int component = 0;
    char kind = 'f';
    const Bump b = read_bump(doc.bumps[i], static_cast<int>(i), component, kind);
    (kind == 'f' ? cfg.data.f : cfg.data.g)[component].push_back(b);
  }

  if (cfg.epsilons.empty()) throw ValidationError("epsilon", "at least one value required");
  for (double e : cfg.epsilons)
    if (!(e > 0.0) || !std::isfinite(e)) throw ValidationError("epsilon", "values must be positive");
  cfg.data.epsilon = cfg.epsilons.front();
  for (double s : cfg.sigma_samples)
    if (!std::isfinite(s)) throw ValidationError("sigma_samples", "values must be finite");
  for (double t : cfg.theta_samples)
    if (!std::isfinite(t)) throw ValidationError("theta_samples", "values must be finite");

  const double r0 = cfg.data.support_radius();
  if (cfg.mode == SolverMode::radial && !cfg.data.all_centered())
    throw ValidationError("mode", "radial solver mode requires every bump centered at the origin");

  if (auto it = grid.find("T"); it != grid.end()) cfg.T = to_number(it->second, "T");
  if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ValidationError("T", "must be positive");
  if (auto it = grid.find("cfl"); it != grid.end()) cfg.cfl = to_number(it->second, "cfl");
  const double max_cfl = cfg.mode == SolverMode::radial ? kMaxCflRadial : kMaxCflCartesian;
  if (!(cfg.cfl > 0.0) || cfg.cfl > max_cfl)
    throw ValidationError("cfl", "must lie in (0, " + std::to_string(max_cfl) + "]");
  if (auto it = grid.find("h"); it != grid.end()) {
    cfg.h = to_number(it->second, "h");
  } else {
    cfg.h = (r0 > 0.0 ? r0 : 1.0) / kDefaultCellsPerRadius;
  }
  if (!(cfg.h > 0.0) || !std::isfinite(cfg.h)) throw ValidationError("h", "must be positive");
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str(), overrides);
}

}  // namespace wavelab
