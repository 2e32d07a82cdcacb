#include "toprot/rotnum_quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "toprot/classical.hpp"
#include "toprot/errors.hpp"
#include "toprot/parallel.hpp"
#include "toprot/rotnum_classical.hpp"

namespace toprot {

namespace {

double combine(double lower, double upper, DoubletEnergy policy) {
  switch (policy) {
    case DoubletEnergy::Lower: return lower;
    case DoubletEnergy::Upper: return upper;
    default: return 0.5 * (lower + upper);
  }
}

std::vector<std::vector<SpectrumLevel>> all_spectra(const Molecule& mol,
                                                    int jmax, double h) {
  std::vector<std::vector<SpectrumLevel>> spectra(jmax + 1);
  parallel_for(std::size_t(jmax) + 1, [&](std::size_t j) {
    spectra[j] = spectrum(mol, int(j), h);
  });
  return spectra;
}

}  // namespace

double quantized_J(int j, double h) { return h * (double(j) + 0.5); }

LabeledLattice assign_p(const std::vector<std::vector<SpectrumLevel>>& spectra,
                        Convention convention, DoubletEnergy doublet) {
  LabeledLattice lat;
  lat.convention = convention;
  lat.doublet = doublet;
  if (spectra.empty()) throw IncompleteLatticeError("assign_p: no spectra");
  lat.h = spectra.front().empty() ? 1.0 : spectra.front().front().h;
  lat.rep.resize(spectra.size());
  for (int j = 0; j < int(spectra.size()); ++j) {
    const auto& levels = spectra[j];
    if (int(levels.size()) != 2 * j + 1 ||
        (levels.size() && levels.front().j != j)) {
      std::ostringstream os;
      os << "assign_p: spectrum for j = " << j << " missing or incomplete";
      throw IncompleteLatticeError(os.str());
    }
    auto& rep = lat.rep[j];
    rep.resize(j + 1);
    if (convention == Convention::Oscillating) {
      // p = Ka: singlet at the bottom, doublets (2p-1, 2p) above.
      rep[0] = levels[0].E;
      for (int p = 1; p <= j; ++p)
        rep[p] = combine(levels[2 * p - 1].E, levels[2 * p].E, doublet);
    } else {
      // p = Kc: singlet at the top, doublets (2(j-p), 2(j-p)+1) below.
      rep[0] = levels[2 * j].E;
      for (int p = 1; p <= j; ++p)
        rep[p] =
            combine(levels[2 * (j - p)].E, levels[2 * (j - p) + 1].E, doublet);
    }
  }
  return lat;
}

RotationCell theta_q(const LabeledLattice& lattice, int j, int p) {
  RotationCell cell;
  cell.j = j;
  cell.p = p;
  cell.convention = lattice.convention;
  if (j < 1 || j + 1 > lattice.jmax() || p < 0 || p + 1 > j) {
    std::ostringstream os;
    os << "theta_q: cell (j=" << j << ", p=" << p
       << ") needs levels (j,p), (j+1,p), (j,p+1) inside the lattice";
    throw UndefinedCellError(os.str());
  }
  const double Ejp = lattice.rep[j][p];
  const double num = lattice.rep[j + 1][p] - Ejp;
  // Energy decreases with p in the rotating labeling; orient the step so
  // regular cells are positive.
  const double den = lattice.convention == Convention::Oscillating
                         ? lattice.rep[j][p + 1] - Ejp
                         : Ejp - lattice.rep[j][p + 1];
  if (std::abs(den) < 1e-14 * std::abs(Ejp)) {
    std::ostringstream os;
    os << "theta_q: degenerate denominator at (j=" << j << ", p=" << p << ")";
    throw DegenerateCellError(os.str());
  }
  cell.status = RotationCell::Status::Ok;
  cell.theta_q = num / den;
  cell.E_anchor = Ejp;
  cell.J_anchor = quantized_J(j, lattice.h);
  return cell;
}

EmLattice em_lattice(const Molecule& mol, int jmax, double h) {
  if (jmax < 0) throw DomainError("em_lattice: jmax must be >= 0");
  EmLattice out;
  const auto spectra = all_spectra(mol, jmax, h);
  for (const auto& s : spectra)
    out.levels.insert(out.levels.end(), s.begin(), s.end());
  for (int j = 0; j <= jmax; ++j) {
    const double J = quantized_J(j, h);
    out.curves.push_back({J, mol.A * J * J, mol.B * J * J, mol.C * J * J});
  }
  return out;
}

std::vector<RotationCell> theta_q_grid(const Molecule& mol, int jmax, double h,
                                       Convention convention,
                                       DoubletEnergy doublet) {
  if (jmax < 1) return {};
  const auto lattice = assign_p(all_spectra(mol, jmax, h), convention, doublet);
  const double beta = separatrix_asymptote(mol).beta;

  struct Slot {
    int j, p;
  };
  std::vector<Slot> slots;
  for (int j = 1; j < jmax; ++j)
    for (int p = 0; p < j; ++p) slots.push_back({j, p});

  std::vector<RotationCell> cells(slots.size());
  parallel_for(slots.size(), [&](std::size_t i) {
    const auto [j, p] = slots[i];
    RotationCell cell;
    try {
      cell = theta_q(lattice, j, p);
    } catch (const DegenerateCellError&) {
      cell.j = j;
      cell.p = p;
      cell.convention = convention;
      cell.status = RotationCell::Status::Degenerate;
      cell.E_anchor = lattice.rep[j][p];
      cell.J_anchor = quantized_J(j, h);
    }
    const double J = cell.J_anchor;
    cell.gamma_anchor = cell.E_anchor / (mol.B * J * J) - 1.0;
    cell.near_separatrix =
        std::abs(cell.gamma_anchor) < h * beta / (4.0 * M_PI * double(j));
    if (cell.status == RotationCell::Status::Ok &&
        std::abs(cell.gamma_anchor) >= 1e-6 &&
        !(convention == Convention::Rotating && cell.gamma_anchor <= 0.0)) {
      try {
        const auto pt = classify(mol, cell.E_anchor, J);
        cell.classical_ref =
            theta_cl(mol, pt, convention).theta_cl / (2.0 * M_PI);
      } catch (const Error&) {
        // anchor outside the diagram or on the separatrix: leave empty
      }
    }
    cells[i] = cell;
  });
  return cells;
}

std::vector<ConvergenceRow> convergence_study(
    const Molecule& mol, const std::vector<ConvergenceProbe>& probes,
    const std::vector<double>& h_list, Convention convention) {
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    if (!(h_list[i] < h_list[i - 1])) {
      throw DomainError("convergence_study: h_list must be strictly descending");
    }
  }
  std::vector<ConvergenceRow> rows;
  for (double h : h_list) {
    if (!(h > 0.0)) throw DomainError("convergence_study: h must be positive");
    int jmax = 4;
    for (const auto& probe : probes) {
      jmax = std::max(jmax, int(std::ceil(probe.J / h)) + 4);
    }
    const auto cells = theta_q_grid(mol, jmax, h, convention);
    for (const auto& probe : probes) {
      ConvergenceRow row;
      row.h = h;
      row.probe = probe;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& cell : cells) {
        if (cell.status != RotationCell::Status::Ok || !cell.classical_ref)
          continue;
        const double dg = cell.gamma_anchor - probe.gamma;
        const double dj = (cell.J_anchor - probe.J) / probe.J;
        const double dist = dg * dg + dj * dj;
        if (dist < best) {
          best = dist;
          row.missing = false;
          row.j = cell.j;
          row.p = cell.p;
          row.gamma_anchor = cell.gamma_anchor;
          row.theta_q = cell.theta_q;
          row.classical_ref = *cell.classical_ref;
          row.error = std::abs(cell.theta_q - *cell.classical_ref);
        }
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace toprot
