#include "imd/io.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace imd::io {
namespace {

using nlohmann::ordered_json;

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json gamma_json(const phase::GammaPoint& p) {
  return {{"J", p.J},           {"h", p.h},         {"m1", p.m1},     {"m2", p.m2},
          {"lambda1", p.lambda1}, {"lambda2", p.lambda2}, {"rho1", p.rho1}, {"rho2", p.rho2}};
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const exact::MonomerLaw& law) {
  out << "k,S,log_weight,probability\n";
  for (int k = 0; k <= law.max_dimers(); ++k) {
    out << k << ',' << law.monomers(k) << ',' << format_real(law.log_weights()[k]) << ','
        << format_real(law.probabilities()[k]) << '\n';
  }
}

void write_csv(std::ostream& out, const limits::ScaledLaw& law) {
  out << "S,position,probability\n";
  const auto atoms = law.atoms();
  // Atoms run from the fewest monomers upward, in steps of two.
  const int first_S = law.N() % 2;
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    out << first_S + 2 * static_cast<int>(i) << ',' << format_real(atoms[i].position) << ','
        << format_real(atoms[i].probability) << '\n';
  }
}

void write_csv(std::ostream& out, std::span<const phase::GammaPoint> points) {
  out << "J,h,m1,m2,lambda1,lambda2,rho1,rho2\n";
  for (const auto& p : points) {
    out << format_real(p.J) << ',' << format_real(p.h) << ',' << format_real(p.m1) << ','
        << format_real(p.m2) << ',' << format_real(p.lambda1) << ',' << format_real(p.lambda2)
        << ',' << format_real(p.rho1) << ',' << format_real(p.rho2) << '\n';
  }
}

void write_csv(std::ostream& out, const limits::ConvergenceStudy& study) {
  out << "N,ks,flag\n";
  for (const auto& r : study.rows) {
    out << r.N << ',' << format_real(r.ks) << ',' << (r.decreased ? 1 : 0) << '\n';
  }
}

PhaseSample phase_sample(const phase::PhaseReport& report, const ModelParams& params) {
  return {params.h(), params.J(), phase::to_string(report.regime), report.maximizers.front(),
          report.maximizers.back()};
}

void write_csv(std::ostream& out, const phase::PhaseReport& report, const ModelParams& params) {
  const PhaseSample row = phase_sample(report, params);
  write_csv(out, std::span<const PhaseSample>(&row, 1));
}

void write_csv(std::ostream& out, std::span<const PhaseSample> samples) {
  out << "h,J,regime,m1,m2\n";
  for (const auto& s : samples) {
    out << format_real(s.h) << ',' << format_real(s.J) << ',' << s.regime << ','
        << format_real(s.m1) << ',' << format_real(s.m2) << '\n';
  }
}

std::string to_json(const exact::MonomerLaw& law) {
  ordered_json j;
  j["N"] = law.N();
  j["h"] = law.params().h();
  j["J"] = law.params().J();
  j["log_Z"] = law.log_Z();
  auto& rows = j["atoms"] = ordered_json::array();
  for (int k = 0; k <= law.max_dimers(); ++k) {
    rows.push_back({{"k", k},
                    {"S", law.monomers(k)},
                    {"log_weight", law.log_weights()[k]},
                    {"probability", law.probabilities()[k]}});
  }
  return dump(j);
}

std::string to_json(const limits::ScaledLaw& law) {
  ordered_json j;
  j["N"] = law.N();
  j["h"] = law.params().h();
  j["J"] = law.params().J();
  j["eta"] = law.eta();
  j["u"] = law.u();
  auto& rows = j["atoms"] = ordered_json::array();
  for (const auto& a : law.atoms()) {
    rows.push_back({{"position", a.position}, {"probability", a.probability}});
  }
  return dump(j);
}

std::string to_json(std::span<const phase::GammaPoint> points) {
  ordered_json j;
  auto& rows = j["gamma"] = ordered_json::array();
  for (const auto& p : points) rows.push_back(gamma_json(p));
  return dump(j);
}

std::string to_json(const limits::ConvergenceStudy& study) {
  ordered_json j;
  auto& rows = j["rows"] = ordered_json::array();
  for (const auto& r : study.rows) {
    rows.push_back({{"N", r.N}, {"ks", r.ks}, {"flag", r.decreased}});
  }
  j["inversions"] = study.inversions;
  j["trend_ok"] = study.trend_ok;
  return dump(j);
}

std::string to_json(const phase::CriticalPoint& point) {
  ordered_json j{{"h_c", point.h_c},
                 {"J_c", point.J_c},
                 {"m_c", point.m_c},
                 {"lambda_c", point.lambda_c}};
  return dump(j);
}

std::string to_json(const phase::PhaseReport& report, const ModelParams& params) {
  ordered_json j;
  j["h"] = params.h();
  j["J"] = params.J();
  j["regime"] = phase::to_string(report.regime);
  j["maximizers"] = report.maximizers;
  auto& pts = j["stationary_points"] = ordered_json::array();
  for (const auto& sp : report.stationary_points) {
    pts.push_back({{"m", sp.m},
                   {"kind", phase::to_string(sp.kind)},
                   {"value", sp.value},
                   {"second_derivative", sp.second_derivative},
                   {"order", sp.order}});
  }
  return dump(j);
}

std::string to_json(std::span<const PhaseSample> samples) {
  ordered_json j;
  auto& rows = j["phase"] = ordered_json::array();
  for (const auto& s : samples) {
    // JSON has no NaN; ambiguous points get nulls.
    auto real = [](double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
    rows.push_back(
        {{"h", s.h}, {"J", s.J}, {"regime", s.regime}, {"m1", real(s.m1)}, {"m2", real(s.m2)}});
  }
  return dump(j);
}

}  // namespace imd::io
