#pragma once

#include <complex>
#include <vector>

namespace rsl {

// Dense complex matrix, row-major.
struct HermitianMatrix {
  int n = 0;
  std::vector<std::complex<double>> a;

  HermitianMatrix() = default;
  explicit HermitianMatrix(int n_) : n(n_), a(static_cast<std::size_t>(n_) * n_) {}

  std::complex<double>& at(int i, int j) {
    return a[static_cast<std::size_t>(i) * n + j];
  }
  const std::complex<double>& at(int i, int j) const {
    return a[static_cast<std::size_t>(i) * n + j];
  }
};

// max_ij |a_ij - conj(a_ji)|.
double max_asymmetry(const HermitianMatrix& h);

// Householder reduction of a Hermitian matrix to a real symmetric
// tridiagonal (diag, off), eigenvalue-preserving; off[i] couples i and i+1.
void tridiagonalize(HermitianMatrix h, std::vector<double>& diag,
                    std::vector<double>& off);

// Implicit-shift QL on a symmetric tridiagonal; returns eigenvalues ascending.
std::vector<double> tridiagonal_eigen_ql(std::vector<double> diag,
                                         std::vector<double> off);

// Full spectrum of a Hermitian matrix, ascending.  Rejects matrices whose
// hermiticity deviation exceeds 1e-12 times the largest entry magnitude.
// A handful of eigenvalues are verified internally by inverse iteration
// (residual below 1e-8 * ||H||) before returning.
std::vector<double> eigenvalues_hermitian(const HermitianMatrix& h);

}  // namespace rsl
