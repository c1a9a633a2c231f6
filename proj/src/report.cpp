#include "wavelab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace wavelab {

namespace {

Assertion make(std::string name, double value, double lower, double upper, std::string note) {
  Assertion a{std::move(name), value, lower, upper, false, std::move(note)};
  a.pass = value >= lower && value <= upper;
  return a;
}

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void write_row(std::ostream& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out << ',';
    out << format_double(v);
    first = false;
  }
  out << '\n';
}

// JSON has no infinities; open bounds are omitted and NaN becomes null.
nlohmann::json number(double x) {
  if (std::isnan(x)) return nullptr;
  return x;
}

}  // namespace

Assertion assert_at_most(std::string name, double value, double upper, std::string note) {
  return make(std::move(name), value, -std::numeric_limits<double>::infinity(), upper, std::move(note));
}

Assertion assert_at_least(std::string name, double value, double lower, std::string note) {
  return make(std::move(name), value, lower, std::numeric_limits<double>::infinity(), std::move(note));
}

Assertion assert_within(std::string name, double value, double lower, double upper, std::string note) {
  return make(std::move(name), value, lower, upper, std::move(note));
}

bool ScenarioReport::passed() const {
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

const Assertion& ScenarioReport::at(const std::string& name) const {
  for (const auto& a : assertions)
    if (a.name == name) return a;
  throw std::out_of_range("no assertion named '" + name + "'");
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_radiation_csv(const std::filesystem::path& path, const RadiationTable& table) {
  auto out = open_out(path);
  out << "sigma,theta,F1,dF1,F2,dF2\n";
  for (std::size_t i = 0; i < table.sigma.size(); ++i)
    for (std::size_t k = 0; k < table.theta.size(); ++k) {
      const std::size_t c = table.index(i, k);
      write_row(out, {table.sigma[i], table.theta[k], table.F[0][c], table.dF[0][c], table.F[1][c], table.dF[1][c]});
    }
}

void write_energy_csv(const std::filesystem::path& path, const EnergyTrace& trace) {
  auto out = open_out(path);
  out << "t,E1sq,E2sq,diff,sum,dissipation,cum_dissipation\n";
  for (const auto& r : trace.records)
    write_row(out, {r.t, r.e1sq, r.e2sq, r.e1sq - r.e2sq, r.e1sq + r.e2sq, r.dissipation, r.cum_dissipation});
}

void write_profile_csv(const std::filesystem::path& path, const ProfileTrace& trace) {
  auto out = open_out(path);
  out << "t,V1,V2,K1,K2,rho\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& s : trace.samples) {
    if (s.has_k)
      write_row(out, {s.t, s.v1, s.v2, s.k1, s.k2, s.rho});
    else
      write_row(out, {s.t, s.v1, s.v2, nan, nan, nan});
  }
}

void write_mestimates_csv(const std::filesystem::path& path, const std::vector<MEstimate>& rows) {
  auto out = open_out(path);
  out << "sigma,theta,eps,m_direct,m_corrected,m_leading,residual\n";
  for (const auto& m : rows)
    write_row(out, {m.sigma, m.theta, m.epsilon, m.m_direct, m.m_corrected, m.m_leading, m.residual});
}

void write_table_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

void write_summary(const std::filesystem::path& dir, const ScenarioReport& report) {
  nlohmann::json assertions = nlohmann::json::array();
  for (const auto& a : report.assertions) {
    nlohmann::json j;
    j["name"] = a.name;
    j["value"] = number(a.value);
    if (std::isfinite(a.lower)) j["lower"] = a.lower;
    if (std::isfinite(a.upper)) j["upper"] = a.upper;
    j["pass"] = a.pass;
    if (!a.note.empty()) j["note"] = a.note;
    assertions.push_back(std::move(j));
  }
  nlohmann::json summary;
  summary["scenario"] = report.scenario;
  summary["pass"] = report.passed();
  summary["assertions"] = std::move(assertions);
  summary["values"] = report.values;
  auto out = open_out(dir / "summary.json");
  out << summary.dump(2) << '\n';

  nlohmann::json runtimes(report.runtimes);
  auto rt = open_out(dir / "runtimes.json");
  rt << runtimes.dump(2) << '\n';
}

}  // namespace wavelab
