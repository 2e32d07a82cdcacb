#include "toprot/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "toprot/errors.hpp"

namespace toprot {

namespace {

double ladder(double jj, double k) { return jj - k * (k + 1.0); }

}  // namespace

const char* to_string(WangSymmetry s) {
  switch (s) {
    case WangSymmetry::EvenPlus: return "E+";
    case WangSymmetry::EvenMinus: return "E-";
    case WangSymmetry::OddPlus: return "O+";
    default: return "O-";
  }
}

std::array<WangBlock, 4> build_blocks(const Molecule& mol, int j, double h) {
  if (j < 0) throw DomainError("build_blocks: j must be >= 0");
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DomainError("build_blocks: h must be positive and finite");
  }
  const double h2 = h * h;
  const double jj = double(j) * (j + 1.0);
  auto diag = [&](int k) {
    return h2 * (0.5 * (mol.A + mol.B) * (jj - double(k) * k) +
                 mol.C * double(k) * k);
  };
  auto coup = [&](int k) {  // <k+2|H|k>
    return h2 * 0.25 * (mol.A - mol.B) *
           std::sqrt(ladder(jj, k) * ladder(jj, k + 1));
  };

  std::array<WangBlock, 4> blocks;
  blocks[0].symmetry = WangSymmetry::EvenPlus;
  blocks[1].symmetry = WangSymmetry::EvenMinus;
  blocks[2].symmetry = WangSymmetry::OddPlus;
  blocks[3].symmetry = WangSymmetry::OddMinus;

  for (int k = 0; k <= j; k += 2) {
    blocks[0].diagonal.push_back(diag(k));
    if (k + 2 <= j)
      blocks[0].offdiagonal.push_back(coup(k) * (k == 0 ? std::sqrt(2.0) : 1.0));
  }
  for (int k = 2; k <= j; k += 2) {
    blocks[1].diagonal.push_back(diag(k));
    if (k + 2 <= j) blocks[1].offdiagonal.push_back(coup(k));
  }
  for (int k = 1; k <= j; k += 2) {
    const double shift = (k == 1) ? coup(-1) : 0.0;  // <1|H|-1>
    blocks[2].diagonal.push_back(diag(k) + shift);
    blocks[3].diagonal.push_back(diag(k) - shift);
    if (k + 2 <= j) {
      blocks[2].offdiagonal.push_back(coup(k));
      blocks[3].offdiagonal.push_back(coup(k));
    }
  }
  return blocks;
}

// Implicit-shift QL iteration for a symmetric tridiagonal matrix,
// eigenvalues only (EISPACK imtql1 lineage).
std::vector<double> eigen_tridiagonal(const WangBlock& block) {
  const int n = int(block.diagonal.size());
  std::vector<double> d = block.diagonal;
  std::vector<double> e = block.offdiagonal;
  for (double v : d)
    if (!std::isfinite(v)) throw DomainError("eigen_tridiagonal: non-finite diagonal");
  for (double v : e)
    if (!std::isfinite(v)) throw DomainError("eigen_tridiagonal: non-finite offdiagonal");
  if (n == 0) return {};
  e.resize(n, 0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    for (int iter = 0;; ++iter) {
      int m = l;
      while (m < n - 1 &&
             std::abs(e[m]) > eps * (std::abs(d[m]) + std::abs(d[m + 1])))
        ++m;
      if (m == l) break;
      if (iter == 60) throw Error("eigen_tridiagonal: QL failed to converge");
      // Wilkinson shift from the leading 2x2.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (i == l) {
          d[l] -= p;
          e[l] = g;
          e[m] = 0.0;
        }
      }
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

int sturm_count_below(const WangBlock& block, double x) {
  const int n = int(block.diagonal.size());
  int count = 0;
  double q = 1.0;
  for (int i = 0; i < n; ++i) {
    const double e2 =
        i == 0 ? 0.0 : block.offdiagonal[i - 1] * block.offdiagonal[i - 1];
    q = block.diagonal[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<SpectrumLevel> spectrum(const Molecule& mol, int j, double h) {
  const auto blocks = build_blocks(mol, j, h);
  std::vector<double> energies;
  energies.reserve(2 * j + 1);
  for (const auto& b : blocks) {
    const auto ev = eigen_tridiagonal(b);
    energies.insert(energies.end(), ev.begin(), ev.end());
  }
  std::sort(energies.begin(), energies.end());
  std::vector<SpectrumLevel> levels;
  levels.reserve(energies.size());
  for (int i = 0; i < int(energies.size()); ++i) {
    levels.push_back({j, (i + 1) / 2, j - i / 2, energies[i], h});
  }
  return levels;
}

}  // namespace toprot
