#include "imd/cli/config.hpp"

#include <cmath>
#include <map>

#include "CLI11.hpp"

namespace imd::cli {
namespace {

void require_finite(double v, const char* flag) {
  if (!std::isfinite(v)) throw UsageError{std::string(flag) + " must be finite"};
}

}  // namespace

std::optional<Format> default_format(Command command) {
  switch (command) {
    case Command::Phase:
    case Command::Critical: return Format::Json;
    case Command::Gamma:
    case Command::Dist:
    case Command::Laplace: return Format::Csv;
    case Command::Verify: return std::nullopt;
  }
  return std::nullopt;
}

Parsed parse_args(int argc, const char* const* argv) {
  RunConfig cfg;
  Sweep sweep;
  std::string format;
  std::string suite = "all";

  CLI::App app{"Numerics for the mean-field imitative monomer-dimer model", "imd"};
  // --h is the field, so help is long-form only (inherited by subcommands).
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("-o,--output", cfg.output, "Write results to this file instead of stdout");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));

  auto* phase = app.add_subcommand("phase", "Classify (h, J), or sweep a grid of points");
  phase->add_option("--h", cfg.h, "External field");
  phase->add_option("--J", cfg.J, "Imitative coupling, >= 0");
  std::vector<CLI::Option*> sweep_flags{
      phase->add_option("--hmin", sweep.hmin), phase->add_option("--hmax", sweep.hmax),
      phase->add_option("--hsteps", sweep.hsteps)->check(CLI::PositiveNumber),
      phase->add_option("--jmin", sweep.jmin), phase->add_option("--jmax", sweep.jmax),
      phase->add_option("--jsteps", sweep.jsteps)->check(CLI::PositiveNumber)};

  auto* critical = app.add_subcommand("critical", "Critical point of the coexistence curve");

  auto* gamma = app.add_subcommand("gamma", "Trace the coexistence curve h = gamma(J)");
  gamma->add_option("--jmin", cfg.gamma_jmin, "Smallest coupling (> J_c)");
  gamma->add_option("--jmax", cfg.gamma_jmax, "Largest coupling");
  gamma->add_option("--steps", cfg.gamma_steps, "Number of couplings")->check(CLI::PositiveNumber);

  auto* dist = app.add_subcommand("dist", "Exact law of the monomer count");
  int dist_N = 0;
  double eta = 0.0, u = 0.0;
  dist->add_option("--N", dist_N, "Number of vertices")->required()->check(CLI::PositiveNumber);
  dist->add_option("--h", cfg.h, "External field");
  dist->add_option("--J", cfg.J, "Imitative coupling, >= 0");
  auto* eta_opt = dist->add_option("--eta", eta, "Rescale (S_N - N u) / N^eta");
  auto* u_opt = dist->add_option("--u", u, "Centring density");

  auto* laplace = app.add_subcommand("laplace", "Gaussian representation against its asymptote");
  laplace->add_option("--N", cfg.N_list, "Exponents n (repeatable)")
      ->required()
      ->check(CLI::PositiveNumber);
  laplace->add_option("--h", cfg.h, "External field");

  auto* verify = app.add_subcommand("verify", "Run the reproduction criteria");
  verify->add_option("--suite", suite, "Criteria group")
      ->check(CLI::IsMember({"thermo", "exact", "laplace", "limits", "all"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {std::nullopt, out.str() + err.str(), code == 0 ? 0 : 64};
  }

  try {
    const std::map<CLI::App*, Command> commands{
        {phase, Command::Phase},     {critical, Command::Critical}, {gamma, Command::Gamma},
        {dist, Command::Dist},       {laplace, Command::Laplace},   {verify, Command::Verify}};
    cfg.command = commands.at(app.get_subcommands().front());

    require_finite(cfg.h, "--h");
    require_finite(cfg.J, "--J");
    if (cfg.command == Command::Phase) {
      bool any = false;
      for (auto* f : sweep_flags) any |= f->count() > 0;
      if (any) {
        for (double v : {sweep.hmin, sweep.hmax, sweep.jmin, sweep.jmax}) require_finite(v, "sweep bounds");
        if (sweep.hmin > sweep.hmax || sweep.jmin > sweep.jmax) {
          throw UsageError{"sweep bounds must satisfy min <= max"};
        }
        cfg.sweep = sweep;
      }
    }
    if (cfg.command == Command::Gamma) {
      require_finite(cfg.gamma_jmin, "--jmin");
      require_finite(cfg.gamma_jmax, "--jmax");
      if (cfg.gamma_jmin > cfg.gamma_jmax) throw UsageError{"--jmin must not exceed --jmax"};
    }
    if (cfg.command == Command::Dist) {
      cfg.N_list = {dist_N};
      if (eta_opt->count() > 0 || u_opt->count() > 0) {
        require_finite(eta, "--eta");
        require_finite(u, "--u");
        cfg.eta = eta;
        cfg.u = u;
      }
    }
    if (!format.empty()) cfg.format = format == "csv" ? Format::Csv : Format::Json;
    cfg.suite = *verify::parse_suite(suite);
  } catch (const UsageError& e) {
    return {std::nullopt, "error: " + e.message + "\n", 64};
  }
  return {cfg, "", 0};
}

}  // namespace imd::cli
