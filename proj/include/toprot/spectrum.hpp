#pragma once

#include <array>
#include <vector>

#include "toprot/molecule.hpp"

namespace toprot {

enum class WangSymmetry { EvenPlus, EvenMinus, OddPlus, OddMinus };

const char* to_string(WangSymmetry s);

// Real symmetric tridiagonal block of the rotor Hamiltonian in the
// symmetry-adapted basis (|j,k> +/- |j,-k>)/sqrt(2).
struct WangBlock {
  std::vector<double> diagonal;
  std::vector<double> offdiagonal;  // size = diagonal.size() - 1 (or 0)
  WangSymmetry symmetry;
};

// Quantum level labeled by the prolate/oblate ladder: sorted by energy,
// Ka runs 0,1,1,2,2,... and Kc runs j,j,j-1,j-1,...
struct SpectrumLevel {
  int j;
  int Ka;
  int Kc;
  double E;  // cm^-1
  double h;  // effective Planck constant of this spectrum
};

// The four Wang blocks of H = h^2 (A Jx^2 + B Jy^2 + C Jz^2) at fixed j.
// Matrix elements in the |j,k> ladder basis:
//   <k|H|k>    = h^2 [ (A+B)/2 (j(j+1) - k^2) + C k^2 ]
//   <k+2|H|k>  = h^2 (A-B)/4 sqrt((j(j+1)-k(k+1)) (j(j+1)-(k+1)(k+2)))
// with the sqrt(2) factor on the 0-2 coupling of the even-plus block and
// the +/- <1|H|-1> shift on the k = 1 diagonal of the odd blocks.
std::array<WangBlock, 4> build_blocks(const Molecule& mol, int j, double h);

// All eigenvalues of a real symmetric tridiagonal matrix, ascending;
// implicit-shift QL iteration (eigenvalues only).
std::vector<double> eigen_tridiagonal(const WangBlock& block);

// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count_below(const WangBlock& block, double x);

// Full 2j+1 level stack at fixed j with structural (Ka, Kc) labels.
std::vector<SpectrumLevel> spectrum(const Molecule& mol, int j, double h);

}  // namespace toprot
