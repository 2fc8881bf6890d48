// Command-line front end: smoothing and two-grid analysis, solver runs, and
// the bundled convergence tables, with CSV output for plotting.

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <stdexcept>
#include <string>
#include <vector>

#include "bslfa/lfa.h"
#include "bslfa/mgsolver.h"
#include "bslfa/relaxation.h"
#include "bslfa/tables.h"

namespace {

using nlohmann::json;
using namespace bslfa;

/// Iteration broke down (divergence, non-finite analysis): exit code 1.
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Disc parse_disc(const std::string& s) {
  if (s == "posd") return Disc::PoSD;
  if (s == "prsd") return Disc::PrSD;
  if (s == "q2q1") return Disc::Q2Q1;
  throw std::invalid_argument("unknown discretization: " + s);
}

SchemeKind parse_scheme(const std::string& s) {
  if (s == "dwj1") return SchemeKind::DWJ1;
  if (s == "dwj2") return SchemeKind::DWJ2;
  if (s == "bsr") return SchemeKind::BSRExact;
  if (s == "ibsr") return SchemeKind::IBSR;
  if (s == "uzawa-schur") return SchemeKind::UzawaSchur;
  if (s == "uzawa-mass") return SchemeKind::UzawaMass;
  if (s == "uzawa-diag") return SchemeKind::UzawaDiag;
  throw std::invalid_argument("unknown scheme: " + s);
}

Coarsening parse_coarsen(const std::string& s) {
  if (s == "redisc") return Coarsening::Rediscretize;
  if (s == "galerkin") return Coarsening::Galerkin;
  throw std::invalid_argument("unknown coarsening: " + s);
}

struct SchemeOpts {
  std::string disc = "posd";
  std::string scheme = "bsr";
  SchemeParams p;
};

void add_scheme_flags(CLI::App* cmd, SchemeOpts& o) {
  cmd->add_option("--disc", o.disc, "Discretization")
      ->check(CLI::IsMember({"posd", "prsd", "q2q1"}));
  cmd->add_option("--scheme", o.scheme, "Relaxation scheme")
      ->check(CLI::IsMember({"dwj1", "dwj2", "bsr", "ibsr", "uzawa-schur",
                             "uzawa-mass", "uzawa-diag"}));
  cmd->add_option("--alpha", o.p.alpha, "Velocity diagonal scaling");
  cmd->add_option("--alpha1", o.p.alpha1, "Distributive velocity scaling");
  cmd->add_option("--alpha2", o.p.alpha2, "Distributive pressure scaling");
  cmd->add_option("--omega", o.p.omega, "Update weight");
  cmd->add_option("--omegaJ", o.p.omegaJ, "Inner Jacobi weight");
  cmd->add_option("--delta", o.p.delta, "Uzawa mass weight");
  cmd->add_option("--sigma", o.p.sigma,
                  "Uzawa diagonal scale (negative: diag(S)/h^2)");
  cmd->add_option("--sweeps", o.p.sweeps, "Jacobi sweeps on the Schur system");
  cmd->add_option("--inner", o.p.inner_cycles,
                  "Inner W(1,1) cycles on the Schur system (solver runs)");
}

RelaxScheme make_scheme(const SchemeOpts& o) {
  return {parse_scheme(o.scheme), o.p};
}

/// Closed-form optimal smoothing parameters, where a scheme has them.
void apply_optimal(SchemeKind kind, Disc disc, SchemeParams& p) {
  switch (kind) {
    case SchemeKind::DWJ1:
      p.alpha2 = 1.0;
      if (disc == Disc::PoSD) {
        p.omega = 459.0 / 356.0;
        p.alpha1 = p.omega * 9.0 / 8.0;
      } else if (disc == Disc::PrSD) {
        p.omega = 108.0 / 97.0;
        p.alpha1 = 1.0;
      } else {
        throw std::invalid_argument(
            "no closed-form optimum for dwj1 on q2q1");
      }
      return;
    case SchemeKind::DWJ2:
      p.alpha1 = 1.5;
      p.omega = 4.0 / 3.0;
      p.omegaJ = 1.0;
      return;
    case SchemeKind::BSRExact:
      p.alpha = 1.0;
      p.omega = 8.0 / 9.0;
      return;
    default:
      throw std::invalid_argument("no closed-form optimum for " +
                                  to_string(kind));
  }
}

ParamAxis parse_axis(const std::string& text) {
  ParamAxis axis{"", 0.2, 2.0, 0.05};
  const auto eq = text.find('=');
  axis.name = text.substr(0, eq);
  if (eq != std::string::npos) {
    const std::string range = text.substr(eq + 1);
    if (std::sscanf(range.c_str(), "%lf:%lf:%lf", &axis.lo, &axis.hi,
                    &axis.step) != 3)
      throw std::invalid_argument("bad axis range (want lo:hi:step): " + text);
  }
  return axis;
}

std::ofstream open_csv(const std::string& path, bool append,
                       bool& newly_created) {
  newly_created = !append || !std::filesystem::exists(path);
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path);
  return out;
}

// ---------------------------------------------------------------- smooth --

struct SmoothOpts {
  SchemeOpts s;
  int hinv = 128;
  int samples = 128;
  bool optimal = false;
};

void cmd_smooth(const SmoothOpts& o) {
  const Disc disc = parse_disc(o.s.disc);
  SchemeParams p = o.s.p;
  if (o.optimal) apply_optimal(parse_scheme(o.s.scheme), disc, p);
  const RelaxScheme s{parse_scheme(o.s.scheme), p};
  const AnalysisResult r = smoothing_factor(s, disc, 1.0 / o.hinv, o.samples);
  if (!r.ok) throw NumericalFailure(r.message);
  fmt::print("mu = {:.6f} at theta = ({:.6f}, {:.6f})\n", r.factor,
             r.argmax.t1, r.argmax.t2);
}

// --------------------------------------------------------------- twogrid --

struct TwogridOpts {
  SchemeOpts s;
  int nu1 = 1, nu2 = 1;
  std::string coarsen = "redisc";
  int hinv = 128;
  int samples = 128;
  std::string spectrum;
  std::vector<std::string> sweep;
  std::string out;
};

void cmd_twogrid(const TwogridOpts& o) {
  const Disc disc = parse_disc(o.s.disc);
  const RelaxScheme s = make_scheme(o.s);
  const double h = 1.0 / o.hinv;
  const TGSpec tg{o.nu1, o.nu2, parse_coarsen(o.coarsen), o.samples};

  if (!o.sweep.empty()) {
    if (o.sweep.size() != 2)
      throw std::invalid_argument("--sweep wants two axes, e.g. "
                                  "--sweep alpha=0.5:1.5:0.05,omega");
    const ParamAxis a1 = parse_axis(o.sweep[0]);
    const ParamAxis a2 = parse_axis(o.sweep[1]);
    const Eigen::MatrixXd grid = parameter_sweep(s, disc, h, tg, a1, a2);
    const std::vector<double> v1 = axis_values(a1), v2 = axis_values(a2);
    bool fresh = true;
    std::ofstream out =
        open_csv(o.out.empty() ? "sweep.csv" : o.out, false, fresh);
    out << fmt::format(
        "# two-grid sweep: disc={} scheme={} nu=({},{}) coarsen={} h=1/{} "
        "samples={}\n",
        o.s.disc, o.s.scheme, o.nu1, o.nu2, o.coarsen, o.hinv, o.samples);
    out << a1.name << "\\" << a2.name;
    for (double v : v2) out << fmt::format(",{:.6g}", v);
    out << "\n";
    for (size_t i = 0; i < v1.size(); ++i) {
      out << fmt::format("{:.6g}", v1[i]);
      for (size_t j = 0; j < v2.size(); ++j)
        out << fmt::format(",{:.6f}", grid(i, j));
      out << "\n";
    }
    fmt::print("wrote {} ({} x {} factors)\n",
               o.out.empty() ? "sweep.csv" : o.out, v1.size(), v2.size());
    return;
  }

  if (!o.spectrum.empty()) {
    const std::vector<SpectrumRow> rows = two_grid_spectrum(s, disc, h, tg);
    bool fresh = true;
    std::ofstream out = open_csv(o.spectrum, false, fresh);
    out << fmt::format(
        "# two-grid spectrum: disc={} scheme={} nu=({},{}) coarsen={} h=1/{} "
        "samples={}\n",
        o.s.disc, o.s.scheme, o.nu1, o.nu2, o.coarsen, o.hinv, o.samples);
    out << "theta1,theta2,re,im\n";
    for (const SpectrumRow& row : rows)
      for (const Complex& e : row.eigs)
        out << fmt::format("{:.6f},{:.6f},{:.9g},{:.9g}\n", row.t.t1,
                           row.t.t2, e.real(), e.imag());
    fmt::print("wrote {}\n", o.spectrum);
  }

  const AnalysisResult r = two_grid_factor(s, disc, h, tg);
  if (!r.ok) throw NumericalFailure(r.message);
  fmt::print("rho = {:.6f} at theta = ({:.6f}, {:.6f})\n", r.factor,
             r.argmax.t1, r.argmax.t2);
}

// ----------------------------------------------------------------- solve --

struct SolveOpts {
  SchemeOpts s;
  int nu1 = 1, nu2 = 1;
  std::string coarsen = "redisc";
  int n = 64;
  int k = 100;
  int gamma = 2;
  int coarsest = 2;
  std::uint64_t seed = 1234;
  std::string id;
  std::string out;
  std::string config;
};

void run_solve_one(const SolveOpts& o) {
  SolveSpec spec;
  spec.disc = parse_disc(o.s.disc);
  spec.scheme = make_scheme(o.s);
  spec.nu1 = o.nu1;
  spec.nu2 = o.nu2;
  spec.coarsening = parse_coarsen(o.coarsen);
  spec.cycle_gamma = o.gamma;
  spec.n = o.n;
  spec.iterations = o.k;
  spec.seed = o.seed;
  spec.coarsest_n = o.coarsest;

  const auto t0 = std::chrono::steady_clock::now();
  const MeasureResult m = measure_convergence(spec);
  const double wall = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();

  const TGSpec tg{o.nu1, o.nu2, spec.coarsening, std::max(o.n, 4)};
  const AnalysisResult lfa =
      two_grid_factor(spec.scheme, spec.disc, 1.0 / o.n, tg);

  const std::string id =
      o.id.empty() ? fmt::format("{}-{}", o.s.disc, o.s.scheme) : o.id;
  const std::string cycle =
      o.coarsest * 2 == o.n ? "TG" : o.gamma == 2 ? "W" : "V";
  const double dev = std::abs(m.rho_hat - lfa.factor);
  fmt::print("{}: n={} {}({},{}) rho_hat = {:.4f}  lfa rho = {:.4f}{}\n", id,
             o.n, cycle, o.nu1, o.nu2, m.rho_hat,
             lfa.ok ? lfa.factor : std::nan(""),
             !m.diverged && lfa.ok && dev > 0.03
                 ? fmt::format("  [deviation {:.3f} > 0.03]", dev)
                 : "");

  if (!o.out.empty()) {
    bool fresh = true;
    std::ofstream out = open_csv(o.out, true, fresh);
    if (fresh) {
      out << fmt::format(
          "# solver runs: k={} seed={} coarsen={} gamma={} coarsest={}\n",
          o.k, o.seed, o.coarsen, o.gamma, o.coarsest);
      out << "id,n,cycle,nu1,nu2,rho_hat,rho_lfa,wall_s\n";
    }
    out << fmt::format("{},{},{},{},{},{:.6f},{:.6f},{:.3f}\n", id, o.n,
                       cycle, o.nu1, o.nu2, m.rho_hat, lfa.factor, wall);
  }

  if (m.diverged)
    throw NumericalFailure(fmt::format(
        "diverged after {} cycles (growth {:.4g} per cycle)",
        m.iterations_used, m.rho_hat));
}

void cmd_solve(const SolveOpts& base) {
  if (base.config.empty()) {
    run_solve_one(base);
    return;
  }
  std::ifstream in(base.config);
  if (!in) throw std::runtime_error("cannot open " + base.config);
  json doc = json::parse(in);
  if (!doc.is_array()) doc = json::array({doc});
  for (const json& e : doc) {
    SolveOpts o = base;
    o.id = e.value("id", o.id);
    o.s.disc = e.value("disc", o.s.disc);
    o.s.scheme = e.value("scheme", o.s.scheme);
    o.s.p.alpha = e.value("alpha", o.s.p.alpha);
    o.s.p.alpha1 = e.value("alpha1", o.s.p.alpha1);
    o.s.p.alpha2 = e.value("alpha2", o.s.p.alpha2);
    o.s.p.omega = e.value("omega", o.s.p.omega);
    o.s.p.omegaJ = e.value("omegaJ", o.s.p.omegaJ);
    o.s.p.delta = e.value("delta", o.s.p.delta);
    o.s.p.sigma = e.value("sigma", o.s.p.sigma);
    o.s.p.sweeps = e.value("sweeps", o.s.p.sweeps);
    o.s.p.inner_cycles = e.value("inner", o.s.p.inner_cycles);
    o.nu1 = e.value("nu1", o.nu1);
    o.nu2 = e.value("nu2", o.nu2);
    o.coarsen = e.value("coarsen", o.coarsen);
    o.n = e.value("n", o.n);
    o.k = e.value("k", o.k);
    o.gamma = e.value("gamma", o.gamma);
    o.coarsest = e.value("coarsest", o.coarsest);
    o.seed = e.value("seed", o.seed);
    run_solve_one(o);
  }
}

// ----------------------------------------------------------------- table --

struct TableOpts {
  std::string id;
  std::uint64_t seed = 1234;
  std::string out;
};

std::string cell_text(const CellValue& c, bool flag_deviation) {
  std::string s = c.diverged ? fmt::format("div({:.3g})", c.value)
                             : fmt::format("{:.3f}", c.value);
  if (c.inner_cycles > 0) s += fmt::format("({})", c.inner_cycles);
  if (flag_deviation) s += "!";
  return s;
}

void cmd_table(const TableOpts& o) {
  const TableResult t = run_table(o.id, o.seed);
  fmt::print("# {}: {}\n# {}\n# seed: {}\n", t.id, t.title, t.params, o.seed);

  const TableRow* ref = nullptr;
  for (const TableRow& r : t.rows)
    if (!r.measured && t.rows.size() > 1 && r.cells.size() == t.columns.size())
      ref = &r;  // analysis row, reference for deviation flags

  size_t label_w = 6;
  for (const TableRow& r : t.rows) label_w = std::max(label_w, r.label.size());
  bool any_dev = false, any_div = false;

  fmt::print("{:<{}}", "", label_w);
  for (const std::string& c : t.columns) fmt::print(" {:>12}", c);
  fmt::print("\n");
  for (const TableRow& r : t.rows) {
    fmt::print("{:<{}}", r.label, label_w);
    for (size_t c = 0; c < r.cells.size(); ++c) {
      const CellValue& cell = r.cells[c];
      const bool dev = r.measured && ref != nullptr && !cell.diverged &&
                       std::abs(cell.value - ref->cells[c].value) > 0.03 &&
                       ref->cells[c].value <= 1.0;
      any_dev |= dev;
      any_div |= cell.diverged;
      fmt::print(" {:>12}", cell_text(cell, dev));
    }
    fmt::print("\n");
  }
  if (any_dev)
    fmt::print("! measured factor differs from the analysis row by more "
               "than 0.03\n");
  if (any_div) fmt::print("div(x): divergent run, growth factor per cycle\n");

  if (!o.out.empty()) {
    bool fresh = true;
    std::ofstream out = open_csv(o.out, false, fresh);
    out << fmt::format("# table: {}\n# title: {}\n# params: {}\n# seed: {}\n",
                       t.id, t.title, t.params, o.seed);
    out << "row,column,value,diverged,inner_cycles\n";
    for (const TableRow& r : t.rows)
      for (size_t c = 0; c < r.cells.size(); ++c)
        out << fmt::format("{},{},{:.6g},{},{}\n", r.label, t.columns[c],
                           r.cells[c].value, r.cells[c].diverged ? 1 : 0,
                           r.cells[c].inner_cycles);
    fmt::print("wrote {}\n", o.out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Local Fourier analysis and geometric multigrid for stabilized and "
      "stable Stokes discretizations on periodic grids"};
  app.require_subcommand(1);

  SmoothOpts so;
  CLI::App* smooth =
      app.add_subcommand("smooth", "Smoothing factor of a relaxation scheme");
  add_scheme_flags(smooth, so.s);
  smooth->add_option("--hinv", so.hinv, "Mesh width denominator (h = 1/hinv)");
  smooth->add_option("--samples", so.samples, "Frequencies per dimension");
  smooth->add_flag("--optimal", so.optimal,
                   "Use the closed-form optimal parameters");
  smooth->callback([&so] { cmd_smooth(so); });

  TwogridOpts to;
  CLI::App* twogrid =
      app.add_subcommand("twogrid", "Two-grid convergence factor");
  add_scheme_flags(twogrid, to.s);
  twogrid->add_option("--nu1", to.nu1, "Pre-relaxation sweeps");
  twogrid->add_option("--nu2", to.nu2, "Post-relaxation sweeps");
  twogrid->add_option("--coarsen", to.coarsen, "Coarse operator")
      ->check(CLI::IsMember({"redisc", "galerkin"}));
  twogrid->add_option("--hinv", to.hinv,
                      "Mesh width denominator (h = 1/hinv)");
  twogrid->add_option("--samples", to.samples, "Frequencies per dimension");
  twogrid->add_option("--spectrum", to.spectrum,
                      "Write all two-grid eigenvalues to this CSV");
  twogrid->add_option("--sweep", to.sweep,
                      "Two parameter axes name[=lo:hi:step] for a factor "
                      "grid CSV")
      ->delimiter(',');
  twogrid->add_option("--out", to.out, "Output CSV for --sweep");
  twogrid->callback([&to] { cmd_twogrid(to); });

  SolveOpts vo;
  CLI::App* solve = app.add_subcommand(
      "solve", "Measure multigrid convergence on a periodic grid");
  add_scheme_flags(solve, vo.s);
  solve->add_option("--nu1", vo.nu1, "Pre-relaxation sweeps");
  solve->add_option("--nu2", vo.nu2, "Post-relaxation sweeps");
  solve->add_option("--coarsen", vo.coarsen, "Coarse operator")
      ->check(CLI::IsMember({"redisc", "galerkin"}));
  solve->add_option("--n", vo.n, "Finest cells per dimension (power of two)");
  solve->add_option("--k", vo.k, "Cycles to run");
  solve->add_option("--gamma", vo.gamma, "Recursive coarse visits");
  solve->add_option("--coarsest", vo.coarsest, "Direct-solve level size");
  solve->add_option("--seed", vo.seed, "Random start seed");
  solve->add_option("--id", vo.id, "Experiment id for the CSV");
  solve->add_option("--out", vo.out, "Append a result row to this CSV");
  solve->add_option("--config", vo.config,
                    "JSON experiment list; flags provide defaults");
  solve->callback([&vo] { cmd_solve(vo); });

  TableOpts tb;
  CLI::App* table =
      app.add_subcommand("table", "Recompute one bundled convergence table");
  table->add_option("id", tb.id, "Table id (see `tables list`)")->required();
  table->add_option("--seed", tb.seed, "Random start seed");
  table->add_option("--out", tb.out, "Write cells to this CSV");
  table->callback([&tb] { cmd_table(tb); });

  CLI::App* tables = app.add_subcommand("tables", "Table registry");
  tables->require_subcommand(1);
  CLI::App* tlist = tables->add_subcommand("list", "List all table ids");
  tlist->callback([] {
    for (const TableInfo& i : list_tables())
      fmt::print("{:<18} {}\n", i.id, i.title);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 2;
  } catch (const NumericalFailure& e) {
    fmt::print(stderr, "numerical failure: {}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return 1;
  }
  return 0;
}
