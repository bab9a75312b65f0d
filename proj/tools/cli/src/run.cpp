#include "imd/cli/run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "json.hpp"

#include "imd/error.hpp"
#include "imd/exact.hpp"
#include "imd/io.hpp"
#include "imd/laplace.hpp"
#include "imd/limits.hpp"
#include "imd/phase.hpp"
#include "imd/thermo.hpp"

namespace imd::cli {
namespace {

struct VerificationFailed {};

// Runs body(i) for i in [0, count) on up to thread_count() workers. Results
// must be written to per-index slots so output order does not depend on
// scheduling. The first exception is rethrown after all workers join.
template <class Body>
void parallel_for(std::size_t count, Body body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto work = [&] {
    for (std::size_t i; !failed && (i = next++) < count;) {
      try {
        body(i);
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
      }
    }
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::vector<double> linspace(double lo, double hi, int steps) {
  if (steps == 1) return {lo};
  std::vector<double> v(steps);
  for (int i = 0; i < steps; ++i) v[i] = lo + (hi - lo) * i / (steps - 1);
  return v;
}

Format format_of(const RunConfig& cfg) {
  return cfg.format.value_or(default_format(cfg.command).value_or(Format::Csv));
}

void phase_command(const RunConfig& cfg, std::ostream& out) {
  const Format fmt = format_of(cfg);
  if (!cfg.sweep) {
    const ModelParams params(cfg.h, cfg.J);
    const auto report = phase::classify(params);
    if (fmt == Format::Json) {
      out << io::to_json(report, params);
    } else {
      io::write_csv(out, report, params);
    }
    return;
  }
  const auto hs = linspace(cfg.sweep->hmin, cfg.sweep->hmax, cfg.sweep->hsteps);
  const auto Js = linspace(cfg.sweep->jmin, cfg.sweep->jmax, cfg.sweep->jsteps);
  std::vector<io::PhaseSample> rows(hs.size() * Js.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const ModelParams params(hs[i % hs.size()], Js[i / hs.size()]);
    try {
      rows[i] = io::phase_sample(phase::classify(params), params);
    } catch (const phase::NearDegenerateError&) {
      rows[i] = {params.h(), params.J(), "ambiguous", std::nan(""), std::nan("")};
    }
  });
  if (fmt == Format::Json) {
    out << io::to_json(rows);
  } else {
    io::write_csv(out, rows);
  }
}

void critical_command(const RunConfig& cfg, std::ostream& out) {
  const auto cp = phase::find_critical_point();
  if (format_of(cfg) == Format::Json) {
    out << io::to_json(cp);
  } else {
    out << "h_c,J_c,m_c,lambda_c\n"
        << io::format_real(cp.h_c) << ',' << io::format_real(cp.J_c) << ','
        << io::format_real(cp.m_c) << ',' << io::format_real(cp.lambda_c) << '\n';
  }
}

void gamma_command(const RunConfig& cfg, std::ostream& out) {
  const auto Js = linspace(cfg.gamma_jmin, cfg.gamma_jmax, cfg.gamma_steps);
  std::vector<phase::GammaPoint> points(Js.size());
  parallel_for(Js.size(), [&](std::size_t i) { points[i] = phase::gamma_point(Js[i]); });
  if (format_of(cfg) == Format::Json) {
    out << io::to_json(points);
  } else {
    io::write_csv(out, points);
  }
}

void dist_command(const RunConfig& cfg, std::ostream& out) {
  const exact::MonomerLaw law(cfg.N_list.front(), ModelParams(cfg.h, cfg.J));
  const bool json = format_of(cfg) == Format::Json;
  if (cfg.eta) {
    const limits::ScaledLaw scaled(law, *cfg.eta, *cfg.u);
    if (json) {
      out << io::to_json(scaled);
    } else {
      io::write_csv(out, scaled);
    }
  } else if (json) {
    out << io::to_json(law);
  } else {
    io::write_csv(out, law);
  }
}

struct LaplaceRow {
  int N;
  double log_Z_exact;
  double log_Z_representation;
  laplace::LaplaceResult result;
};

void laplace_command(const RunConfig& cfg, std::ostream& out) {
  const auto family = laplace::psi_family(cfg.h);
  std::vector<LaplaceRow> rows(cfg.N_list.size());
  parallel_for(rows.size(), [&](std::size_t i) {
    const int N = cfg.N_list[i];
    const auto r = laplace::laplace_approx(family, N);
    rows[i] = {N, exact::log_partition(N, ModelParams(cfg.h, 0.0)),
               0.5 * std::log(N / (2.0 * std::numbers::pi)) + r.log_integral_quadrature, r};
  });
  if (format_of(cfg) == Format::Json) {
    nlohmann::ordered_json j;
    j["h"] = cfg.h;
    auto& arr = j["rows"] = nlohmann::ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"N", r.N},
                     {"log_Z_exact", r.log_Z_exact},
                     {"log_Z_representation", r.log_Z_representation},
                     {"log_quadrature", r.result.log_integral_quadrature},
                     {"log_asymptote", r.result.log_asymptote},
                     {"ratio", std::exp(r.result.log_ratio())}});
    }
    out << j.dump(2) << '\n';
    return;
  }
  out << "N,log_Z_exact,log_Z_representation,log_quadrature,log_asymptote,ratio\n";
  for (const auto& r : rows) {
    out << r.N << ',' << io::format_real(r.log_Z_exact) << ','
        << io::format_real(r.log_Z_representation) << ','
        << io::format_real(r.result.log_integral_quadrature) << ','
        << io::format_real(r.result.log_asymptote) << ','
        << io::format_real(std::exp(r.result.log_ratio())) << '\n';
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void verify_command(const RunConfig& cfg, std::ostream& out) {
  std::vector<verify::CriterionResult> results;
  bool ok = true;
  for (int id : verify::criteria_in(cfg.suite)) {
    results.push_back(verify::run_criterion(id));
    ok &= results.back().passed;
  }
  if (!cfg.format) {
    for (const auto& r : results) {
      out << verify::format_line(r) << '\n';
      for (const auto& line : r.lines) out << "        " << line << '\n';
    }
    out << (ok ? "all criteria passed" : "verification FAILED") << '\n';
  } else if (*cfg.format == Format::Json) {
    nlohmann::ordered_json j;
    j["suite"] = verify::to_string(cfg.suite);
    j["passed"] = ok;
    auto& arr = j["criteria"] = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      arr.push_back({{"id", r.id},
                     {"name", r.name},
                     {"passed", r.passed},
                     {"seconds", r.seconds},
                     {"time_limit", r.time_limit},
                     {"summary", r.summary},
                     {"details", r.lines}});
    }
    out << j.dump(2) << '\n';
  } else {
    out << "id,name,passed,seconds,time_limit,summary\n";
    for (const auto& r : results) {
      out << r.id << ',' << csv_quote(r.name) << ',' << (r.passed ? 1 : 0) << ','
          << io::format_real(r.seconds) << ',' << io::format_real(r.time_limit) << ','
          << csv_quote(r.summary) << '\n';
    }
  }
  if (!ok) throw VerificationFailed{};
}

}  // namespace

unsigned thread_count() {
  const char* env = std::getenv("IMD_THREADS");
  if (env == nullptr || *env == '\0') return std::max(1u, std::thread::hardware_concurrency());
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw UsageError{std::string("IMD_THREADS must be a positive integer, got '") + env + "'"};
  }
  return static_cast<unsigned>(n);
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output, std::ios::out | std::ios::trunc);
    if (!file) {
      err << "error: cannot write '" << cfg.output << "'\n";
      return kExitIo;
    }
  }
  std::ostream& sink = cfg.output.empty() ? out : file;
  // Buffered so that a failed run leaves no partial table behind.
  std::ostringstream buffer;
  int status = kExitOk;
  try {
    thread_count();
    switch (cfg.command) {
      case Command::Phase: phase_command(cfg, buffer); break;
      case Command::Critical: critical_command(cfg, buffer); break;
      case Command::Gamma: gamma_command(cfg, buffer); break;
      case Command::Dist: dist_command(cfg, buffer); break;
      case Command::Laplace: laplace_command(cfg, buffer); break;
      case Command::Verify: verify_command(cfg, buffer); break;
    }
  } catch (const VerificationFailed&) {
    status = kExitVerification;
  } catch (const UsageError& e) {
    err << "error: " << e.message << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  sink << buffer.str();
  sink.flush();
  if (!sink) {
    err << "error: failed writing output\n";
    return kExitIo;
  }
  return status;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const Parsed parsed = parse_args(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == 0 ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  return run(*parsed.config, out, err);
}

}  // namespace imd::cli
