#include "blockade/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "blockade/dressed.hpp"
#include "blockade/errors.hpp"
#include "blockade/io.hpp"
#include "blockade/steady_state.hpp"
#include "blockade/sweep.hpp"
#include "blockade/validation.hpp"

namespace blockade {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParamFlags {
  std::optional<double> delta, J, omegaD, g, omegaP, phiZ, gammaGE, gammaSE, gammaGS;
  std::optional<int> fockCutoff;
  std::string config;

  void attach(CLI::App& app) {
    app.add_option("--delta", delta, "detuning Delta");
    app.add_option("--J", J, "dipole-dipole coupling");
    app.add_option("--omega-d", omegaD, "drive Rabi frequency on s<->e");
    app.add_option("--g", g, "atom-cavity coupling");
    app.add_option("--omega-p", omegaP, "pump Rabi frequency on g<->e");
    app.add_option("--phi-z", phiZ, "placement phase between the atoms, radians in [0, 2pi)");
    app.add_option("--gamma-ge", gammaGE, "e->g decay rate");
    app.add_option("--gamma-se", gammaSE, "e->s decay rate");
    app.add_option("--gamma-gs", gammaGS, "s->g decay rate");
    app.add_option("--fock-cutoff", fockCutoff, "largest photon number kept (>= 2)");
    app.add_option("--config", config, "key=value parameter file; flags override it");
  }

  // defaults < config file < flags
  SystemParams resolve() const {
    SystemParams p;
    if (!config.empty()) {
      std::ifstream f(config);
      if (!f) throw UsageError("cannot read config file " + config);
      try {
        apply_config(p, parse_config(f));
      } catch (const std::exception& e) {
        throw UsageError(config + ": " + e.what());
      }
    }
    auto set = [](double& dst, const std::optional<double>& v) {
      if (v) dst = *v;
    };
    set(p.delta, delta);
    set(p.J, J);
    set(p.omegaD, omegaD);
    set(p.g, g);
    set(p.omegaP, omegaP);
    set(p.phiZ, phiZ);
    set(p.gammaGE, gammaGE);
    set(p.gammaSE, gammaSE);
    set(p.gammaGS, gammaGS);
    if (fockCutoff) p.fockCutoff = *fockCutoff;
    try {
      p.validate();
    } catch (const DomainError& e) {
      throw UsageError(std::string("invalid parameter ") + e.what());
    }
    return p;
  }
};

// name:min:max:steps
SweepAxis parse_axis(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4) throw UsageError("axis '" + s + "': expected name:min:max:steps");
  if (!is_sweepable(parts[0])) throw UsageError("axis '" + s + "': unknown parameter '" + parts[0] + "'");
  try {
    const double lo = parse_double(parts[1]), hi = parse_double(parts[2]);
    const double steps = parse_double(parts[3]);
    if (steps != static_cast<int>(steps)) throw std::invalid_argument("steps must be an integer");
    return SweepAxis::linear(parts[0], lo, hi, static_cast<int>(steps));
  } catch (const std::invalid_argument& e) {
    throw UsageError("axis '" + s + "': " + e.what());
  }
}

std::string to_csv(const SweepTable& t) {
  std::ostringstream os;
  write_csv(os, t);
  return os.str();
}

int report(const std::vector<CheckResult>& results, std::ostream& out) {
  bool ok = true;
  for (const auto& r : results) {
    out << (r.pass ? "PASS  " : "FAIL  ") << r.name << "  (" << std::fixed << std::setprecision(1) << r.seconds << " s)\n      " << r.detail << '\n';
    ok = ok && r.pass;
  }
  return ok ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steady-state photon statistics of two dipole-dipole coupled Lambda atoms in a driven cavity.",
               "blockade"};
  app.footer("All frequencies and rates are in units of the cavity decay rate kappa (kappa = 1).\n"
             "BLOCKADE_THREADS caps sweep parallelism (0 = all cores).");
  app.require_subcommand(1);

  auto* steady = app.add_subcommand("steady", "solve one point and print JSON");
  ParamFlags steadyFlags;
  steadyFlags.attach(*steady);
  std::string method = "auto";
  steady->add_option("--method", method, "auto, direct or krylov")->check(CLI::IsMember({"auto", "direct", "krylov"}));

  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV");
  ParamFlags sweepFlags;
  sweepFlags.attach(*sweep);
  std::string axis1, axis2, sweepOut = "sweep.csv";
  bool derived = false, converge = false;
  int threads = -1;
  sweep->add_option("--axis", axis1, "first axis, name:min:max:steps")->required();
  sweep->add_option("--axis2", axis2, "optional second axis, name:min:max:steps");
  sweep->add_flag("--delta-at-negative-peak", derived,
                  "set delta per point to (J - sqrt(J^2 + 4 Od^2 + 8 g^2))/2 (two axes required)");
  sweep->add_flag("--converge", converge, "rerun points with |N> population above 1e-6 at N+2 and report drift");
  sweep->add_option("--threads", threads, "worker threads (0 = all cores)");
  sweep->add_option("-o,--output", sweepOut, "output CSV path");

  auto* dressed = app.add_subcommand("dressed", "closed-form vs numeric collective-basis spectra as CSV");
  DressedParams dp;
  std::string scan, dressedOut;
  dressed->add_option("--g", dp.g, "atom-cavity coupling");
  dressed->add_option("--J", dp.J, "dipole-dipole coupling");
  dressed->add_option("--omega-d", dp.omegaD, "drive Rabi frequency");
  dressed->add_option("--phi-z", dp.phiZ, "placement phase");
  dressed->add_option("--omega-c", dp.omegaC, "reference frequency");
  dressed->add_option("--scan", scan, "optional scan, name:min:max:steps with name in omegaD, J, g");
  dressed->add_option("-o,--output", dressedOut, "output CSV path (default stdout)");

  auto* figure = app.add_subcommand("figure", "run a figure preset and write <id>.csv");
  std::string figId, outDir = ".";
  ParamFlags figFlags;
  figure->add_option("id", figId, "preset id")->required()->check(CLI::IsMember(figure_ids()));
  figure->add_option("--output-dir", outDir, "directory for the CSV");
  figure->add_option("--fock-cutoff", figFlags.fockCutoff, "largest photon number kept (>= 2)");
  figure->add_flag("--converge", converge, "rerun points with |N> population above 1e-6 at N+2 and report drift");
  figure->add_option("--threads", threads, "worker threads (0 = all cores)");

  auto* validate = app.add_subcommand("validate", "run the oracle checks and print pass/fail per check");
  bool full = false;
  validate->add_flag("--full", full, "also run the sweep-based figure checks (minutes)");
  validate->add_option("--threads", threads, "worker threads (0 = all cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    for (auto* sub : app.get_subcommands())
      if (sub->parsed()) {
        err << sub->help();
        return 2;
      }
    err << app.help();
    return 2;
  }

  try {
    if (steady->parsed()) {
      const auto p = steadyFlags.resolve();
      SteadyStateOptions so;
      so.method = method == "direct" ? SolveMethod::Direct : method == "krylov" ? SolveMethod::Krylov : SolveMethod::Auto;
      const auto ss = steady_state(p, so);
      auto r = summarize(ss.rho);
      r.delta = p.delta;
      r.residual = ss.residual;
      r.negative = ss.negative;
      nlohmann::json j = to_json(r);
      j["params"] = to_json(p);
      j["solver"] = {{"method", ss.method == SolveMethod::Direct ? "direct" : "krylov"},
                     {"iterations", ss.iterations},
                     {"liouvillianNorm", ss.liouvillianNorm},
                     {"withinContract", ss.within_contract()}};
      out << j.dump(2) << '\n';
      return 0;
    }
    if (sweep->parsed()) {
      SweepSpec spec{sweepFlags.resolve(), parse_axis(axis1), std::nullopt,
                     derived ? DerivedDelta::NegativePeak : DerivedDelta::None};
      if (!axis2.empty()) spec.axis2 = parse_axis(axis2);
      try {
        spec.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      SweepOptions so;
      so.threads = threads;
      so.converge = converge;
      const auto t = run_sweep(spec, so);
      write_file(sweepOut, to_csv(t));
      const auto failed = std::count_if(t.rows.begin(), t.rows.end(), [](const SweepRow& r) { return r.error; });
      err << t.rows.size() << " points written to " << sweepOut;
      if (failed) err << " (" << failed << " failed)";
      err << '\n';
      return 0;
    }
    if (dressed->parsed()) {
      DressedScan ds;
      ds.bases = {dp};
      if (!scan.empty()) {
        const auto ax = parse_axis(scan);
        if (ax.name != "omegaD" && ax.name != "J" && ax.name != "g")
          throw UsageError("dressed scan axis must be omegaD, J or g");
        ds.axis = ax.name;
        ds.min = ax.values.front();
        ds.max = ax.values.back();
        ds.steps = static_cast<int>(ax.values.size());
      } else {
        ds.axis = "J";
        ds.min = ds.max = dp.J;
        ds.steps = 1;
      }
      const auto rows = spectrum_scan(ds);
      std::ostringstream os;
      write_dressed_csv(os, rows);
      if (dressedOut.empty()) out << os.str();
      else write_file(dressedOut, os.str());
      return 0;
    }
    if (figure->parsed()) {
      const auto preset = figure_preset(figId);
      const auto path = std::filesystem::path(outDir) / (figId + ".csv");
      std::filesystem::create_directories(outDir);
      if (preset.dressed) {
        std::ostringstream os;
        write_dressed_csv(os, spectrum_scan(*preset.dressed));
        write_file(path, os.str());
      } else {
        auto spec = *preset.sweep;
        if (figFlags.fockCutoff) spec.base.fockCutoff = *figFlags.fockCutoff;
        SweepOptions so;
        so.threads = threads;
        so.converge = converge;
        write_file(path, to_csv(run_sweep(spec, so)));
      }
      err << "wrote " << path.string() << '\n';
      return 0;
    }
    if (validate->parsed()) {
      ValidationOptions vo;
      vo.threads = threads;
      Validator v(vo);
      return report(full ? v.run_all() : v.run_oracles(), out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace blockade
