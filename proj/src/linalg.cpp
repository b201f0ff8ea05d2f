#include "rsl/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rsl {

namespace {

using cplx = std::complex<double>;

}  // namespace

double max_asymmetry(const HermitianMatrix& h) {
  double worst = 0.0;
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j <= i; ++j)
      worst = std::max(worst, std::abs(h.at(i, j) - std::conj(h.at(j, i))));
  return worst;
}

void tridiagonalize(HermitianMatrix h, std::vector<double>& diag,
                    std::vector<double>& off) {
  int n = h.n;
  diag.assign(static_cast<std::size_t>(n), 0.0);
  off.assign(n > 0 ? static_cast<std::size_t>(n) - 1 : 0, 0.0);
  if (n == 0) return;

  std::vector<cplx> u(static_cast<std::size_t>(n));
  std::vector<cplx> p(static_cast<std::size_t>(n));
  std::vector<cplx> q(static_cast<std::size_t>(n));

  // Classic Householder sweep from the bottom row up.  Phases are not
  // chased onto the subdiagonal: a diagonal unitary similarity makes the
  // subdiagonal real nonnegative without moving eigenvalues, so off[] holds
  // magnitudes.
  for (int i = n - 1; i >= 1; --i) {
    int l = i;  // row i has l active elements h(i, 0..l-1)
    double scale = 0.0;
    for (int k = 0; k < l; ++k)
      scale += std::fabs(h.at(i, k).real()) + std::fabs(h.at(i, k).imag());
    if (scale == 0.0 || l == 1) {
      off[static_cast<std::size_t>(i) - 1] = std::abs(h.at(i, i - 1));
      continue;
    }
    double h2 = 0.0;
    // Reflector built from column i (the conjugate of row i): the right
    // factor of P H P is what must annihilate the row, and it acts through
    // the conjugated vector.
    for (int k = 0; k < l; ++k) {
      u[static_cast<std::size_t>(k)] = std::conj(h.at(i, k)) / scale;
      h2 += std::norm(u[static_cast<std::size_t>(k)]);
    }
    cplx f = u[static_cast<std::size_t>(l) - 1];
    double fmag = std::abs(f);
    double g = std::sqrt(h2);
    cplx gdir = (fmag == 0.0) ? cplx{g, 0.0} : f / fmag * g;
    off[static_cast<std::size_t>(i) - 1] = scale * g;
    double hh = h2 + fmag * g;  // (1/2) ||u + gdir e_last||^2
    u[static_cast<std::size_t>(l) - 1] = f + gdir;

    // Rank-two update of the leading l x l block: A <- A - q u^H - u q^H
    // with p = A u / hh, q = p - (u^H p / 2hh) u.
    for (int j = 0; j < l; ++j) {
      cplx s{0.0, 0.0};
      for (int k = 0; k < l; ++k) s += h.at(j, k) * u[static_cast<std::size_t>(k)];
      p[static_cast<std::size_t>(j)] = s / hh;
    }
    cplx kap{0.0, 0.0};
    for (int j = 0; j < l; ++j)
      kap += std::conj(u[static_cast<std::size_t>(j)]) * p[static_cast<std::size_t>(j)];
    kap /= 2.0 * hh;
    for (int j = 0; j < l; ++j)
      q[static_cast<std::size_t>(j)] =
          p[static_cast<std::size_t>(j)] - kap * u[static_cast<std::size_t>(j)];
    for (int j = 0; j < l; ++j) {
      cplx uj = u[static_cast<std::size_t>(j)];
      cplx qj = q[static_cast<std::size_t>(j)];
      for (int k = 0; k < l; ++k)
        h.at(j, k) -= qj * std::conj(u[static_cast<std::size_t>(k)]) +
                      uj * std::conj(q[static_cast<std::size_t>(k)]);
    }
  }
  for (int i = 0; i < n; ++i) diag[static_cast<std::size_t>(i)] = h.at(i, i).real();
}

std::vector<double> tridiagonal_eigen_ql(std::vector<double> d, std::vector<double> off) {
  int n = static_cast<int>(d.size());
  if (static_cast<int>(off.size()) != std::max(0, n - 1))
    throw std::invalid_argument("tridiagonal_eigen_ql: off must have n-1 entries");
  off.resize(static_cast<std::size_t>(std::max(1, n)), 0.0);  // sentinel slot
  const double eps = std::numeric_limits<double>::epsilon();

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::fabs(d[static_cast<std::size_t>(m)]) +
                    std::fabs(d[static_cast<std::size_t>(m) + 1]);
        if (std::fabs(off[static_cast<std::size_t>(m)]) <= eps * dd) break;
      }
      if (m != l) {
        if (iter++ == 60)
          throw std::runtime_error("tridiagonal_eigen_ql: no convergence after 60 sweeps");
        double g = (d[static_cast<std::size_t>(l) + 1] - d[static_cast<std::size_t>(l)]) /
                   (2.0 * off[static_cast<std::size_t>(l)]);
        double r = std::hypot(g, 1.0);
        g = d[static_cast<std::size_t>(m)] - d[static_cast<std::size_t>(l)] +
            off[static_cast<std::size_t>(l)] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, pshift = 0.0;
        int i;
        for (i = m - 1; i >= l; --i) {
          double f = s * off[static_cast<std::size_t>(i)];
          double b = c * off[static_cast<std::size_t>(i)];
          r = std::hypot(f, g);
          off[static_cast<std::size_t>(i) + 1] = r;
          if (r == 0.0) {
            d[static_cast<std::size_t>(i) + 1] -= pshift;
            off[static_cast<std::size_t>(m)] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[static_cast<std::size_t>(i) + 1] - pshift;
          r = (d[static_cast<std::size_t>(i)] - g) * s + 2.0 * c * b;
          pshift = s * r;
          d[static_cast<std::size_t>(i) + 1] = g + pshift;
          g = c * r - b;
        }
        if (r == 0.0 && i >= l) continue;
        d[static_cast<std::size_t>(l)] -= pshift;
        off[static_cast<std::size_t>(l)] = g;
        off[static_cast<std::size_t>(m)] = 0.0;
      }
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

// Residual |T y - lambda y| / (||T|| ||y||) after two inverse-iteration
// steps; cheap spot check that the QL output really is an eigenvalue.
double inverse_iteration_residual(const std::vector<double>& diag,
                                  const std::vector<double>& off, double lambda) {
  int n = static_cast<int>(diag.size());
  std::vector<double> y(static_cast<std::size_t>(n), 1.0 / std::sqrt(static_cast<double>(n)));
  double norm_t = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = std::fabs(diag[static_cast<std::size_t>(i)] - lambda);
    if (i > 0) row += std::fabs(off[static_cast<std::size_t>(i) - 1]);
    if (i + 1 < n) row += std::fabs(off[static_cast<std::size_t>(i)]);
    norm_t = std::max(norm_t, row + std::fabs(lambda));
  }
  if (norm_t == 0.0) return 0.0;

  double inv_norm = 0.0;
  for (int pass = 0; pass < 2; ++pass) {
    // Solve (T - lambda I) x = y by LU with partial pivoting on the
    // tridiagonal band (fill-in limited to one superdiagonal).
    std::vector<double> bl(static_cast<std::size_t>(n)),
        du(static_cast<std::size_t>(std::max(0, n - 1))),
        du2(static_cast<std::size_t>(std::max(0, n - 2)), 0.0),
        dl(static_cast<std::size_t>(std::max(0, n - 1)));
    for (int i = 0; i < n; ++i) bl[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)] - lambda;
    for (int i = 0; i + 1 < n; ++i) {
      du[static_cast<std::size_t>(i)] = off[static_cast<std::size_t>(i)];
      dl[static_cast<std::size_t>(i)] = off[static_cast<std::size_t>(i)];
    }
    std::vector<double> x = y;
    const double tiny = 1e-300;
    for (int i = 0; i + 1 < n; ++i) {
      double piv = bl[static_cast<std::size_t>(i)];
      double below = dl[static_cast<std::size_t>(i)];
      if (std::fabs(below) > std::fabs(piv)) {
        std::swap(bl[static_cast<std::size_t>(i)], dl[static_cast<std::size_t>(i)]);
        piv = bl[static_cast<std::size_t>(i)];
        double t = du[static_cast<std::size_t>(i)];
        du[static_cast<std::size_t>(i)] = bl[static_cast<std::size_t>(i) + 1];
        bl[static_cast<std::size_t>(i) + 1] = t;
        if (i + 2 < n) {
          du2[static_cast<std::size_t>(i)] = du[static_cast<std::size_t>(i) + 1];
          du[static_cast<std::size_t>(i) + 1] = 0.0;
        }
        std::swap(x[static_cast<std::size_t>(i)], x[static_cast<std::size_t>(i) + 1]);
      }
      if (std::fabs(piv) < tiny) piv = bl[static_cast<std::size_t>(i)] = tiny;
      double mult = dl[static_cast<std::size_t>(i)] / piv;
      bl[static_cast<std::size_t>(i) + 1] -= mult * du[static_cast<std::size_t>(i)];
      if (i + 2 < n)
        du[static_cast<std::size_t>(i) + 1] -= mult * du2[static_cast<std::size_t>(i)];
      x[static_cast<std::size_t>(i) + 1] -= mult * x[static_cast<std::size_t>(i)];
    }
    if (std::fabs(bl[static_cast<std::size_t>(n) - 1]) < tiny)
      bl[static_cast<std::size_t>(n) - 1] = tiny;
    for (int i = n - 1; i >= 0; --i) {
      double v = x[static_cast<std::size_t>(i)];
      if (i + 1 < n) v -= du[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i) + 1];
      if (i + 2 < n) v -= du2[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i) + 2];
      x[static_cast<std::size_t>(i)] = v / bl[static_cast<std::size_t>(i)];
    }
    double amax = 0.0;
    for (double v : x) amax = std::max(amax, std::fabs(v));
    if (!std::isfinite(amax)) return 0.0;  // solution blew up: lambda is exact
    if (amax == 0.0) return std::numeric_limits<double>::infinity();
    double nx = 0.0;
    for (double v : x) {
      double t = v / amax;
      nx += t * t;
    }
    nx = amax * std::sqrt(nx);
    if (!std::isfinite(nx)) return 0.0;
    inv_norm = nx;
    for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] / nx;
  }
  // ||(T - lambda) y|| = ||y_prev|| / ||x_raw|| = 1 / inv_norm for unit y_prev.
  return 1.0 / (inv_norm * norm_t);
}

}  // namespace

std::vector<double> eigenvalues_hermitian(const HermitianMatrix& h) {
  if (h.n < 1) throw std::invalid_argument("eigenvalues_hermitian: empty matrix");
  if (static_cast<int>(h.a.size()) != h.n * h.n)
    throw std::invalid_argument("eigenvalues_hermitian: storage does not match n");
  double scale = 0.0;
  for (const cplx& v : h.a) scale = std::max(scale, std::abs(v));
  double asym = max_asymmetry(h);
  if (scale > 0.0 && asym > 1e-12 * scale)
    throw std::invalid_argument(
        "eigenvalues_hermitian: matrix is not Hermitian (deviation " +
        std::to_string(asym) + " vs scale " + std::to_string(scale) + ")");

  std::vector<double> diag, off;
  tridiagonalize(h, diag, off);
  std::vector<double> evals = tridiagonal_eigen_ql(diag, off);

  if (scale > 0.0) {
    // Spot-check: the tridiagonal is unitarily similar to h, so residuals
    // carry over to the original matrix.
    int n = h.n;
    int picks[3] = {0, n / 2, n - 1};
    for (int idx : picks) {
      double res = inverse_iteration_residual(diag, off, evals[static_cast<std::size_t>(idx)]);
      if (!(res < 1e-8))
        throw std::runtime_error(
            "eigenvalues_hermitian: residual check failed (relative residual " +
            std::to_string(res) + ")");
    }
  }
  return evals;
}

}  // namespace rsl
