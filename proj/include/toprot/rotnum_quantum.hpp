#pragma once

#include <optional>
#include <vector>

#include "toprot/molecule.hpp"
#include "toprot/spectrum.hpp"

namespace toprot {

// Which member energy of a quasi-degenerate doublet represents its p
// value in the lattice.
enum class DoubletEnergy { Mean, Lower, Upper };

// Spectra for j = 0..jmax re-indexed by the second quantum number p.
// Oscillating convention: p = Ka, counting up from E ~ A*J^2; rotating:
// p = Kc, counting up (in label) from the top of the stack at E ~ C*J^2.
// rep[j][p] is the representative energy (doublet handling per policy).
struct LabeledLattice {
  double h = 1.0;
  Convention convention = Convention::Oscillating;
  DoubletEnergy doublet = DoubletEnergy::Mean;
  std::vector<std::vector<double>> rep;

  int jmax() const { return int(rep.size()) - 1; }
};

LabeledLattice assign_p(const std::vector<std::vector<SpectrumLevel>>& spectra,
                        Convention convention,
                        DoubletEnergy doublet = DoubletEnergy::Mean);

// One elementary lattice cell.  theta_q = (E_{j+1,p} - E_{j,p}) / dE_p
// with the denominator step taken along the convention's own increasing-p
// direction, so regular cells come out positive.
struct RotationCell {
  enum class Status { Ok, Undefined, Degenerate };

  int j = 0;
  int p = 0;
  Convention convention = Convention::Oscillating;
  Status status = Status::Undefined;
  double theta_q = 0.0;
  double E_anchor = 0.0;
  double J_anchor = 0.0;
  double gamma_anchor = 0.0;
  // theta_cl / 2pi at the anchor, when the classical point is regular and
  // compatible with the convention.
  std::optional<double> classical_ref;
  bool near_separatrix = false;  // |gamma| < h*beta/(4*pi*j) heuristic
};

// Cell at (j, p); throws UndefinedCellError / DegenerateCellError.
RotationCell theta_q(const LabeledLattice& lattice, int j, int p);

// Energy-momentum lattice with the boundary/separatrix reference curves
// sampled at the quantized J values.
struct EmCurveSample {
  double J;
  double E_bottom;     // A*J^2
  double E_separatrix; // B*J^2
  double E_top;        // C*J^2
};

struct EmLattice {
  std::vector<SpectrumLevel> levels;  // all j = 0..jmax, J = h*(j+1/2)
  std::vector<EmCurveSample> curves;
};

double quantized_J(int j, double h);

EmLattice em_lattice(const Molecule& mol, int jmax, double h);

// Every cell of the lattice, with classical references where defined;
// problem cells are flagged in-row rather than dropped.
std::vector<RotationCell> theta_q_grid(const Molecule& mol, int jmax, double h,
                                       Convention convention,
                                       DoubletEnergy doublet = DoubletEnergy::Mean);

struct ConvergenceProbe {
  double gamma;
  double J;
};

struct ConvergenceRow {
  double h;
  ConvergenceProbe probe;
  bool missing = true;
  int j = 0;
  int p = 0;
  double gamma_anchor = 0.0;
  double theta_q = 0.0;
  double classical_ref = 0.0;
  double error = 0.0;  // |theta_q - theta_cl/2pi|
};

// For each h (descending) and probe, pick the defined cell whose
// (gamma, J) anchor is nearest the probe and tabulate the distance of
// theta_q from the classical value at that cell's own anchor.
std::vector<ConvergenceRow> convergence_study(
    const Molecule& mol, const std::vector<ConvergenceProbe>& probes,
    const std::vector<double>& h_list,
    Convention convention = Convention::Oscillating);

}  // namespace toprot
