// Command-line front end: emits plot-ready CSV/JSON tables for the
// classical and quantum rotation-number scans.
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "toprot/classical.hpp"
#include "toprot/errors.hpp"
#include "toprot/molecule.hpp"
#include "toprot/rotnum_classical.hpp"
#include "toprot/rotnum_quantum.hpp"
#include "toprot/spectrum.hpp"
#include "toprot/table.hpp"

namespace {

using toprot::Convention;
using toprot::Molecule;
using toprot::Table;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

struct Options {
  std::string molecule = "water";
  double A = 0.0, B = 0.0, C = 0.0;
  bool custom_constants = false;
  std::string format = "csv";
  std::string output;

  // subcommand parameters
  int j = -1, jmin = 0, jmax = -1;
  double h = 1.0;
  double gamma_min = -0.1, gamma_max = 0.1;
  int n = 200;
  double J = 1.0;
  double gamma = -0.05;
  std::vector<double> h_list{1.0, 0.5, 0.2, 0.1};
  std::string convention = "osc";
  std::string doublet = "mean";
  std::string side = "both";
};

Molecule resolve_molecule(const Options& opt) {
  if (opt.custom_constants) {
    return Molecule("custom", opt.A, opt.B, opt.C);
  }
  auto preset = Molecule::preset(opt.molecule);
  if (!preset) {
    throw toprot::DomainError("unknown molecule preset '" + opt.molecule +
                              "' (water, ethylene, s4)");
  }
  return *preset;
}

Convention parse_convention(const std::string& s) {
  if (s == "osc" || s == "oscillating") return Convention::Oscillating;
  if (s == "rot" || s == "rotating") return Convention::Rotating;
  throw toprot::DomainError("convention must be 'osc' or 'rot', got '" + s + "'");
}

toprot::DoubletEnergy parse_doublet(const std::string& s) {
  if (s == "mean") return toprot::DoubletEnergy::Mean;
  if (s == "lower") return toprot::DoubletEnergy::Lower;
  if (s == "upper") return toprot::DoubletEnergy::Upper;
  throw toprot::DomainError("doublet policy must be mean|lower|upper, got '" + s + "'");
}

nlohmann::json base_meta(const Molecule& mol, const std::string& command) {
  nlohmann::json meta;
  meta["artifact_version"] = toprot::kVersion;
  meta["command"] = command;
  meta["molecule"] = {{"name", mol.name}, {"A", mol.A}, {"B", mol.B}, {"C", mol.C}};
  return meta;
}

void emit(const Table& table, const nlohmann::json& meta, const Options& opt) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!opt.output.empty()) {
    file.open(opt.output, std::ios::binary);
    if (!file) throw toprot::Error("cannot open output file '" + opt.output + "'");
    os = &file;
  }
  if (opt.format == "json") {
    table.write_json(*os, meta);
  } else {
    table.write_csv(*os);
  }
}

int64_t as_i64(int v) { return static_cast<int64_t>(v); }

void run_spectrum(const Options& opt) {
  const Molecule mol = resolve_molecule(opt);
  int jmin = opt.jmin, jmax = opt.jmax;
  if (opt.j >= 0) jmin = jmax = opt.j;
  if (jmax < 0) throw toprot::DomainError("spectrum: give --j or --jmax");
  if (jmin < 0 || jmax < jmin) throw toprot::DomainError("spectrum: bad j range");
  Table t;
  t.header = {"j", "Ka", "Kc", "E", "J"};
  for (int j = jmin; j <= jmax; ++j) {
    for (const auto& lvl : toprot::spectrum(mol, j, opt.h)) {
      t.add_row({as_i64(lvl.j), as_i64(lvl.Ka), as_i64(lvl.Kc), lvl.E,
                 toprot::quantized_J(lvl.j, opt.h)});
    }
  }
  auto meta = base_meta(mol, "spectrum");
  meta["h"] = opt.h;
  meta["jmin"] = jmin;
  meta["jmax"] = jmax;
  emit(t, meta, opt);
}

void run_em(const Options& opt) {
  const Molecule mol = resolve_molecule(opt);
  if (opt.jmax < 0) throw toprot::DomainError("em: give --jmax");
  const auto em = toprot::em_lattice(mol, opt.jmax, opt.h);
  Table t;
  t.header = {"kind", "j",        "Ka",           "Kc",   "J",
              "E",    "E_bottom", "E_separatrix", "E_top"};
  for (const auto& lvl : em.levels) {
    t.add_row({std::string("level"), as_i64(lvl.j), as_i64(lvl.Ka),
               as_i64(lvl.Kc), toprot::quantized_J(lvl.j, opt.h), lvl.E,
               std::string(), std::string(), std::string()});
  }
  for (const auto& c : em.curves) {
    t.add_row({std::string("curve"), std::string(), std::string(),
               std::string(), c.J, std::string(), c.E_bottom, c.E_separatrix,
               c.E_top});
  }
  auto meta = base_meta(mol, "em");
  meta["h"] = opt.h;
  meta["jmax"] = opt.jmax;
  emit(t, meta, opt);
}

void run_theta_cl(const Options& opt) {
  const Molecule mol = resolve_molecule(opt);
  if (opt.n < 2) throw toprot::DomainError("theta-cl: need --n >= 2");
  if (!(opt.gamma_min < opt.gamma_max))
    throw toprot::DomainError("theta-cl: need gamma-min < gamma-max");
  if (!(opt.J > 0)) throw toprot::DomainError("theta-cl: need --J > 0");
  const auto [alpha, beta] = toprot::separatrix_asymptote(mol);
  Table t;
  t.header = {"gamma", "theta_cl", "asymptote"};
  for (int i = 0; i < opt.n; ++i) {
    const double g = opt.gamma_min +
                     (opt.gamma_max - opt.gamma_min) * double(i) / (opt.n - 1);
    Table::Cell theta = std::string();
    Table::Cell asym = std::string();
    if (std::abs(g) >= toprot::kSeparatrixTol) {
      asym = alpha - beta * std::log(std::abs(g));
      try {
        const auto pt = toprot::classify(mol, mol.B * opt.J * opt.J * (1.0 + g), opt.J);
        theta = toprot::theta_cl(mol, pt, Convention::Oscillating).theta_cl;
      } catch (const toprot::OutOfDiagramError&) {
        // gamma beyond the diagram edge for this molecule: leave blank
      }
    }
    t.add_row({g, theta, asym});
  }
  auto meta = base_meta(mol, "theta-cl");
  meta["J"] = opt.J;
  meta["gamma_min"] = opt.gamma_min;
  meta["gamma_max"] = opt.gamma_max;
  meta["n"] = opt.n;
  meta["alpha"] = alpha;
  meta["beta"] = beta;
  emit(t, meta, opt);
}

void run_theta_q(const Options& opt) {
  const Molecule mol = resolve_molecule(opt);
  if (opt.jmax < 1) throw toprot::DomainError("theta-q: give --jmax >= 1");
  const auto conv = parse_convention(opt.convention);
  const auto cells = toprot::theta_q_grid(mol, opt.jmax, opt.h, conv,
                                          parse_doublet(opt.doublet));
  Table t;
  t.header = {"j",     "p",           "theta_q",        "E_anchor", "J_anchor",
              "gamma", "classical_ref", "near_separatrix", "status"};
  for (const auto& c : cells) {
    Table::Cell tq = std::string();
    Table::Cell ref = std::string();
    if (c.status == toprot::RotationCell::Status::Ok) tq = c.theta_q;
    if (c.classical_ref) ref = *c.classical_ref;
    const char* status =
        c.status == toprot::RotationCell::Status::Ok
            ? "ok"
            : (c.status == toprot::RotationCell::Status::Degenerate
                   ? "degenerate"
                   : "undefined");
    t.add_row({as_i64(c.j), as_i64(c.p), tq, c.E_anchor, c.J_anchor,
               c.gamma_anchor, ref, as_i64(c.near_separatrix ? 1 : 0),
               std::string(status)});
  }
  auto meta = base_meta(mol, "theta-q");
  meta["h"] = opt.h;
  meta["jmax"] = opt.jmax;
  meta["convention"] = toprot::to_string(conv);
  meta["doublet"] = opt.doublet;
  emit(t, meta, opt);
}

void run_converge(const Options& opt) {
  const Molecule mol = resolve_molecule(opt);
  if (!(opt.J > 0)) throw toprot::DomainError("converge: need --J > 0");
  const auto rows = toprot::convergence_study(
      mol, {{opt.gamma, opt.J}}, opt.h_list, parse_convention(opt.convention));
  Table t;
  t.header = {"h", "gamma_target", "J_target",      "j",
              "p", "gamma_anchor", "theta_q",       "classical_ref",
              "error", "missing"};
  for (const auto& r : rows) {
    if (r.missing) {
      t.add_row({r.h, r.probe.gamma, r.probe.J, std::string(), std::string(),
                 std::string(), std::string(), std::string(), std::string(),
                 as_i64(1)});
    } else {
      t.add_row({r.h, r.probe.gamma, r.probe.J, as_i64(r.j), as_i64(r.p),
                 r.gamma_anchor, r.theta_q, r.classical_ref, r.error,
                 as_i64(0)});
    }
  }
  auto meta = base_meta(mol, "converge");
  meta["gamma"] = opt.gamma;
  meta["J"] = opt.J;
  meta["h_list"] = opt.h_list;
  meta["convention"] = opt.convention;
  emit(t, meta, opt);
}

void run_tre(const Options& opt) {
  const Molecule mol = resolve_molecule(opt);
  Table t;
  t.header = {"side", "gamma_star", "abs_delta_psi"};
  auto add_side = [&](Convention side) {
    const double gstar = toprot::tre_distance(mol, side);
    Table::Cell dpsi = std::string();
    if (side == Convention::Oscillating) {
      dpsi = toprot::simulate_tre(mol, opt.J, gstar);
    }
    t.add_row({std::string(toprot::to_string(side)), gstar, dpsi});
  };
  if (opt.side == "both" || opt.side == "osc") add_side(Convention::Oscillating);
  if (opt.side == "both" || opt.side == "rot") add_side(Convention::Rotating);
  if (t.rows.empty()) {
    throw toprot::DomainError("tre: side must be osc|rot|both, got '" + opt.side + "'");
  }
  auto meta = base_meta(mol, "tre");
  meta["J"] = opt.J;
  emit(t, meta, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum rotation numbers of free asymmetric tops"};
  app.require_subcommand(1);
  app.set_config("--config");
  // --h is the effective Planck constant, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");

  Options opt;
  app.add_option("--molecule", opt.molecule, "Preset: water, ethylene, s4");
  auto* oa = app.add_option("--A", opt.A, "Rotational constant A (cm^-1)");
  auto* ob = app.add_option("--B", opt.B, "Rotational constant B (cm^-1)");
  auto* oc = app.add_option("--C", opt.C, "Rotational constant C (cm^-1)");
  oa->needs(ob)->needs(oc);
  ob->needs(oa)->needs(oc);
  oc->needs(oa)->needs(ob);
  app.add_option("--format", opt.format, "Output format: csv (default) or json")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", opt.output, "Output file (default stdout)");

  auto* sp = app.add_subcommand("spectrum", "Quantum levels for a j range");
  sp->set_help_flag("--help");
  sp->fallthrough();
  sp->add_option("--j", opt.j, "Single j");
  sp->add_option("--jmin", opt.jmin, "First j of the range");
  sp->add_option("--jmax", opt.jmax, "Last j of the range");
  sp->add_option("--h", opt.h, "Effective Planck constant");

  auto* em = app.add_subcommand("em", "Energy-momentum lattice and boundary curves");
  em->set_help_flag("--help");
  em->fallthrough();
  em->add_option("--jmax", opt.jmax, "Largest j")->required();
  em->add_option("--h", opt.h, "Effective Planck constant");

  auto* tc = app.add_subcommand("theta-cl", "Classical rotation number vs gamma");
  tc->set_help_flag("--help");
  tc->fallthrough();
  tc->add_option("--gamma-min", opt.gamma_min, "Lower end of the gamma grid");
  tc->add_option("--gamma-max", opt.gamma_max, "Upper end of the gamma grid");
  tc->add_option("--n", opt.n, "Number of grid points");
  tc->add_option("--J", opt.J, "Angular momentum magnitude");

  auto* tq = app.add_subcommand("theta-q", "Quantum rotation number grid");
  tq->set_help_flag("--help");
  tq->fallthrough();
  tq->add_option("--jmax", opt.jmax, "Largest j")->required();
  tq->add_option("--h", opt.h, "Effective Planck constant");
  tq->add_option("--convention", opt.convention, "osc or rot");
  tq->add_option("--doublet", opt.doublet, "Doublet representative: mean|lower|upper");

  auto* cv = app.add_subcommand("converge", "Semiclassical convergence table");
  cv->set_help_flag("--help");
  cv->fallthrough();
  cv->add_option("--gamma", opt.gamma, "Probe separatrix distance");
  cv->add_option("--J", opt.J, "Probe angular momentum");
  cv->add_option("--h-list", opt.h_list, "Descending h values")->delimiter(',');
  cv->add_option("--convention", opt.convention, "osc or rot");

  auto* tre = app.add_subcommand("tre", "Tennis-racket distance and flip angle");
  tre->set_help_flag("--help");
  tre->fallthrough();
  tre->add_option("--side", opt.side, "osc, rot or both");
  tre->add_option("--J", opt.J, "Angular momentum for the flip simulation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  opt.custom_constants = oa->count() > 0;

  try {
    if (sp->parsed()) run_spectrum(opt);
    else if (em->parsed()) run_em(opt);
    else if (tc->parsed()) run_theta_cl(opt);
    else if (tq->parsed()) run_theta_q(opt);
    else if (cv->parsed()) run_converge(opt);
    else if (tre->parsed()) run_tre(opt);
  } catch (const toprot::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const toprot::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}
