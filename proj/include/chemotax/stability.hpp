#pragma once

#include "chemotax/model.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace chemotax {

// (k pi / L)^2
double neumann_eigenvalue(int k, double L);
// Eigenvalue of the node-centred discrete Neumann Laplacian on n nodes for the
// mode cos(k pi x_j / L): (4/h^2) sin^2(k pi h / (2L)).
double neumann_eigenvalue_h(int k, double L, int n);

struct ModeMatrix {
  int k = 0;
  double Lambda = 0;
  double m11 = 0, m12 = 0, m21 = 0, m22 = 0;

  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m21; }
};

struct BifurcationPoint {
  int k = 0;
  double chi_k = 0;
  double Q_k = 0;
  bool feasible = false;
};

// Lambda overloads take the Neumann eigenvalue directly, so the same formulas
// serve the continuous problem and any discretization of it.
ModeMatrix mode_matrix(const ModelParams& p, int k);
ModeMatrix mode_matrix_at(const ModelParams& p, int k, double Lambda);

BifurcationPoint chi_k(const ModelParams& p, int k);
BifurcationPoint chi_k_at(const ModelParams& p, int k, double Lambda);

struct Threshold {
  double chi0 = 0;
  int k0 = 0;
  std::vector<std::string> warnings;
};

Threshold chi_threshold(const ModelParams& p, int k_max = 64);

// Leading (largest real part) first.
std::pair<std::complex<double>, std::complex<double>> eigenvalues(const ModeMatrix& m);
std::pair<std::complex<double>, std::complex<double>> growth_rate(const ModelParams& p, int k);

}  // namespace chemotax
