#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "rsl/arith.hpp"

namespace rsl {

using cplx = std::complex<double>;

// Evaluation requested at a pole of the target function (zeta or a completed
// function at s = 0, 1).  Distinct from std::invalid_argument, which flags
// precondition violations.
class pole_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A point s = 1/2 + epsilon + iE just off the critical line.  epsilon is
// kept tiny (<= 1e-3) so branch tracking along Re s = 1/2 + epsilon stays
// well-conditioned.
struct CriticalPoint {
  double E = 0.0;
  double epsilon = 0.0;
  explicit CriticalPoint(double E_, double epsilon_ = 0.0);
};

// log Gamma, principal branch (Lanczos g = 7).  Continuous on Re z > 0.
cplx log_gamma(cplx z);
cplx gamma_fn(cplx z);

// Archimedean factor pi^{-s/2} Gamma(s/2) and its principal log.
cplx gamma_inf(cplx s);
cplx log_gamma_inf(cplx s);

// Branch-continuous log of gamma_inf along a caller-supplied path: entry k
// differs from the principal value by the 2*pi*i multiple that makes the
// sequence continuous, starting from the principal value at path[0].
std::vector<cplx> log_gamma_inf_path(const std::vector<cplx>& path);

// Riemann zeta by Euler-Maclaurin for Re s >= 0 (cutoff scaled with |Im s|),
// functional equation below.  Throws pole_error within 1e-10 of s = 1.
cplx zeta(cplx s);

// Hurwitz zeta(s, q) for 0 < q <= 1, Re s >= 0, s != 1.
cplx hurwitz_zeta(cplx s, double q);

// Dirichlet L(s, chi) via Hurwitz zeta over residue classes.  For
// non-principal chi the class poles at s = 1 cancel analytically and the
// implementation evaluates the cancelled form, so s = 1 is a regular point.
cplx l_function(cplx s, const Character& chi);

// Completed functions Lambda(s) = gamma_inf(s) * zeta(s) and, for real even
// primitive chi, Lambda(s, chi) = (d/pi)^{s/2} Gamma(s/2) L(s, chi).
cplx lambda(cplx s);
cplx lambda(cplx s, const Character& chi);

// Phase theta(E) = Im log Gamma(1/4 + iE/2) - (E/2) log pi, continuous in E
// with theta(0) = 0, and its Stirling expansion (useful for E >= 5).
double theta(double E);
double theta_asymptotic(double E);

// Smooth zero-counting term.  exact = theta(E)/pi + 1; asymptotic keeps the
// leading terms (E/2pi) log(E/2pi) - E/2pi + 7/8.
struct SmoothCount {
  double E = 0.0;
  double exact = 0.0;
  double asymptotic = 0.0;
};
SmoothCount smooth_count(double E);

// Hardy function Z(E) = exp(i theta(E)) zeta(1/2 + iE); real for real E.
double hardy_z(double E);

// Analogue for a real even primitive character: phase uses log(d/pi) in
// place of -log(pi).  Rejects non-real or odd characters.
double l_theta(double E, const Character& chi);
double l_hardy_z(double E, const Character& chi);

}  // namespace rsl
