#include "rsl/zeros.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsl {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kBisectTol = 1e-9;
constexpr double kBlockWidth = 20.0;
constexpr double kEdgeNudge = 0.0123456789;

// Scan step: constant below E = 100, then shrinking like the local mean gap
// 2*pi / log(E/2pi) so the expected number of zeros per step stays fixed.
double scan_step(double E, double base) {
  if (E <= 100.0) return base;
  static const double ref = std::log(100.0 / (2.0 * pi));
  return base * ref / std::log(E / (2.0 * pi));
}

int sign_of(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

double bisect_zero(const std::function<double(double)>& f, double a, double b,
                   double za, double zb) {
  for (int iter = 0; iter < 80 && (b - a) > kBisectTol; ++iter) {
    double m = 0.5 * (a + b);
    double zm = f(m);
    if (zm == 0.0) return m;
    if (sign_of(zm) == sign_of(za)) {
      a = m;
      za = zm;
    } else {
      b = m;
      zb = zm;
    }
  }
  (void)zb;
  return 0.5 * (a + b);
}

// Sign-change scan of f over [lo, hi] with bisection refinement.
std::vector<double> scan_and_bisect(const std::function<double(double)>& f,
                                    double lo, double hi, double base_step) {
  std::vector<double> zeros;
  double e = lo;
  double fe = f(e);
  while (e < hi) {
    double next = std::min(e + scan_step(e, base_step), hi);
    if (next <= e) break;  // step underflow guard
    double fn = f(next);
    if (fe == 0.0) {
      zeros.push_back(e);
    } else if (fn != 0.0 && sign_of(fe) != sign_of(fn)) {
      zeros.push_back(bisect_zero(f, e, next, fe, fn));
    }
    e = next;
    fe = fn;
  }
  if (fe == 0.0) zeros.push_back(hi);
  return zeros;
}

// Continuously transported argument of eval(sigma + iE) along the horizontal
// segment from sigma = 2 down to sigma_end.  At Re s = 2 the principal value
// is already the continuous branch (the Dirichlet series keeps Re > 0 there).
double transported_arg(const std::function<cplx(double)>& eval, double E,
                       double sigma_end) {
  double sigma = 2.0;
  cplx cur = eval(sigma);
  double phi = std::arg(cur);
  double step = 0.25;
  const double min_step = 1e-7;
  while (sigma > sigma_end + 1e-14) {
    double h = std::min(step, sigma - sigma_end);
    cplx nxt = eval(sigma - h);
    double dphi = std::arg(nxt / cur);
    double dmod = std::log(std::abs(nxt) / std::abs(cur));
    bool rough = std::fabs(dphi) > 1.0 || std::fabs(dmod) > 1.5;
    if (rough && h > min_step) {
      step = 0.5 * h;
      continue;
    }
    if (rough)
      throw too_close_to_zero(
          "argument transport stalled near a zero at E = " + std::to_string(E), E);
    phi += dphi;
    sigma -= h;
    cur = nxt;
    if (std::fabs(dphi) < 0.25 && step < 0.25) step *= 2.0;
  }
  if (!(std::abs(cur) > 1e-12))
    throw too_close_to_zero(
        "endpoint of argument transport lies on a zero at E = " + std::to_string(E), E);
  return phi;
}

double zeta_transported_arg(double E, double sigma_end) {
  return transported_arg(
      [E](double sigma) { return zeta(cplx{sigma, E}); }, E, sigma_end);
}

// Certification scaffolding shared by the parallel and serial searches.
struct CertEdges {
  std::vector<double> points;       // nudged block edges, points[0] = 0
  std::vector<long long> counts;    // argument counts at the edges
};

CertEdges make_cert_edges(double e_max) {
  CertEdges ce;
  ce.points.push_back(0.0);
  for (double e = kBlockWidth; e < e_max; e += kBlockWidth) ce.points.push_back(e);
  ce.points.push_back(e_max);
  ce.counts.assign(ce.points.size(), 0);
  for (std::size_t b = 1; b < ce.points.size(); ++b) {
    double pt = ce.points[b];
    bool done = false;
    for (int tries = 0; tries < 8 && !done; ++tries) {
      try {
        double c = count_via_argument(pt);
        if (std::fabs(c - std::llround(c)) > 1e-4)
          throw too_close_to_zero("ambiguous count", pt);
        ce.counts[b] = std::llround(c);
        done = true;
      } catch (const too_close_to_zero&) {
        pt += kEdgeNudge;
      }
    }
    if (!done)
      throw certification_error("could not certify block edge near E = " +
                                    std::to_string(ce.points[b]),
                                ce.points[b], pt);
    ce.points[b] = pt;
  }
  return ce;
}

ZeroList assemble_certified(const CertEdges& ce,
                            std::vector<std::vector<double>>& block_zeros,
                            double e_max, const ZeroSearchOptions& opts) {
  auto hz = [](double e) { return hardy_z(e); };
  for (std::size_t b = 0; b + 1 < ce.points.size(); ++b) {
    long long expected = ce.counts[b + 1] - ce.counts[b];
    double step = opts.base_step;
    int rounds = 0;
    while (static_cast<long long>(block_zeros[b].size()) != expected) {
      if (++rounds > opts.max_refinements)
        throw certification_error(
            "zero count mismatch on [" + std::to_string(ce.points[b]) + ", " +
                std::to_string(ce.points[b + 1]) + "]: expected " +
                std::to_string(expected) + ", found " +
                std::to_string(block_zeros[b].size()),
            ce.points[b], ce.points[b + 1]);
      step /= 10.0;
      block_zeros[b] = scan_and_bisect(hz, ce.points[b], ce.points[b + 1], step);
    }
  }
  ZeroList out;
  out.source = ZeroSource::computed;
  out.tolerance = kBisectTol;
  for (auto& blk : block_zeros)
    for (double g : blk)
      if (g > 0.0 && g <= e_max) out.gammas.push_back(g);
  std::sort(out.gammas.begin(), out.gammas.end());
  return out;
}

void validate_e_max(double e_max) {
  if (!(e_max > 0.0 && e_max <= 1e4))
    throw std::invalid_argument("find_zeros: e_max must lie in (0, 1e4]");
}

void validate_options(const ZeroSearchOptions& opts) {
  if (!(opts.base_step > 0.0))
    throw std::invalid_argument("find_zeros: base_step must be positive");
  if (opts.max_refinements < 0)
    throw std::invalid_argument("find_zeros: max_refinements must be >= 0");
}

}  // namespace

std::size_t ZeroList::count_below(double E) const {
  return static_cast<std::size_t>(
      std::upper_bound(gammas.begin(), gammas.end(), E) - gammas.begin());
}

ZeroList find_zeros(double e_max, const ZeroSearchOptions& opts) {
  validate_e_max(e_max);
  validate_options(opts);
  CertEdges ce = make_cert_edges(e_max);
  int n_blocks = static_cast<int>(ce.points.size()) - 1;
  std::vector<std::vector<double>> block_zeros(static_cast<std::size_t>(n_blocks));
  auto hz = [](double e) { return hardy_z(e); };
#ifdef _OPENMP
  int nt = opts.threads > 0 ? opts.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int b = 0; b < n_blocks; ++b) {
    block_zeros[static_cast<std::size_t>(b)] = scan_and_bisect(
        hz, ce.points[static_cast<std::size_t>(b)],
        ce.points[static_cast<std::size_t>(b) + 1], opts.base_step);
  }
  return assemble_certified(ce, block_zeros, e_max, opts);
}

ZeroList find_zeros_serial(double e_max, const ZeroSearchOptions& opts) {
  validate_e_max(e_max);
  validate_options(opts);
  CertEdges ce = make_cert_edges(e_max);
  auto hz = [](double e) { return hardy_z(e); };
  // One continuous grid over the whole range, then zeros sorted into blocks
  // for the same certification the parallel path uses.
  std::vector<double> all =
      scan_and_bisect(hz, 0.0, ce.points.back(), opts.base_step);
  int n_blocks = static_cast<int>(ce.points.size()) - 1;
  std::vector<std::vector<double>> block_zeros(static_cast<std::size_t>(n_blocks));
  for (double g : all) {
    auto it = std::upper_bound(ce.points.begin(), ce.points.end(), g);
    std::size_t b = it == ce.points.begin()
                        ? 0
                        : static_cast<std::size_t>(it - ce.points.begin()) - 1;
    if (b >= static_cast<std::size_t>(n_blocks)) b = static_cast<std::size_t>(n_blocks) - 1;
    block_zeros[b].push_back(g);
  }
  return assemble_certified(ce, block_zeros, e_max, opts);
}

double count_via_argument(double E) { return count_via_argument(CriticalPoint(E)); }

double count_via_argument(const CriticalPoint& p) {
  if (!(p.E > 0.0 && p.E <= 1e4))
    throw std::invalid_argument("count_via_argument: E must lie in (0, 1e4]");
  double sigma_end = 0.5 + p.epsilon;
  double phi = zeta_transported_arg(p.E, sigma_end);
  double arch = log_gamma_inf(cplx{sigma_end, p.E}).imag();
  return arch / pi + 1.0 + phi / pi;
}

double l_count_via_argument(double E, const Character& chi) {
  if (chi.is_principal()) return count_via_argument(E);
  if (!chi.is_real || !chi.is_even || !chi.is_primitive)
    throw std::invalid_argument(
        "l_count_via_argument: requires a real even primitive character");
  if (!(E > 0.0 && E <= 1e4))
    throw std::invalid_argument("l_count_via_argument: E must lie in (0, 1e4]");
  double phi = transported_arg(
      [E, &chi](double sigma) { return l_function(cplx{sigma, E}, chi); }, E, 0.5);
  double d = static_cast<double>(chi.modulus);
  double arch = log_gamma(cplx{0.25, 0.5 * E}).imag() + 0.5 * E * std::log(d / pi);
  return (arch + phi) / pi;
}

CountDecomposition decompose(double E) {
  CountDecomposition out;
  out.E = E;
  out.n_smooth = smooth_count(E).exact;
  out.n_osc = zeta_transported_arg(E, 0.5) / pi;
  double n = out.n_smooth + out.n_osc;
  out.n_exact = std::llround(n);
  if (std::fabs(n - static_cast<double>(out.n_exact)) > 1e-6)
    throw too_close_to_zero(
        "decompose: count " + std::to_string(n) +
            " is not within 1e-6 of an integer (E too close to a zero)",
        E);
  return out;
}

ZeroList ingest_zero_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("ingest_zero_table: cannot open " + path);
  ZeroList out;
  out.source = ZeroSource::ingested;
  out.tolerance = 0.0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;
    std::string body = line.substr(first);
    if (lineno == 1 && body == "k,gamma") continue;
    std::string field = body;
    std::size_t comma = body.find_last_of(',');
    if (comma != std::string::npos) field = body.substr(comma + 1);
    double g = 0.0;
    try {
      std::size_t pos = 0;
      g = std::stod(field, &pos);
      while (pos < field.size() && std::isspace(static_cast<unsigned char>(field[pos])))
        ++pos;
      if (pos != field.size()) throw std::invalid_argument("trailing junk");
    } catch (const std::exception&) {
      throw parse_error("ingest_zero_table: unparseable ordinate '" + field +
                            "' at line " + std::to_string(lineno),
                        lineno);
    }
    if (!std::isfinite(g) || g <= 0.0)
      throw parse_error("ingest_zero_table: ordinate must be finite and positive at line " +
                            std::to_string(lineno),
                        lineno);
    if (!out.gammas.empty() && g <= out.gammas.back())
      throw parse_error("ingest_zero_table: ordinates must increase strictly at line " +
                            std::to_string(lineno),
                        lineno);
    out.gammas.push_back(g);
  }
  return out;
}

void write_zero_table(const std::string& path, const ZeroList& zeros) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::invalid_argument("write_zero_table: cannot open " + tmp);
    out << "k,gamma\n";
    char buf[64];
    for (std::size_t k = 0; k < zeros.gammas.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%zu,%.12f\n", k + 1, zeros.gammas[k]);
      out << buf;
    }
  }
  std::filesystem::rename(tmp, path);
}

namespace {

std::string cache_csv(const std::string& dir) { return dir + "/zeros.csv"; }
std::string cache_meta(const std::string& dir) { return dir + "/zeros.meta.json"; }

}  // namespace

ZeroList load_cached_zeros(const std::string& dir, double e_max) {
  ZeroList empty;
  if (dir.empty()) return empty;
  std::error_code ec;
  if (!std::filesystem::exists(cache_csv(dir), ec) ||
      !std::filesystem::exists(cache_meta(dir), ec))
    return empty;
  nlohmann::json meta;
  {
    std::ifstream in(cache_meta(dir));
    try {
      in >> meta;
    } catch (const std::exception& e) {
      throw parse_error("zero cache metadata corrupt in " + dir + ": " + e.what(), 0);
    }
  }
  if (!meta.contains("e_max") || !meta["e_max"].is_number())
    throw parse_error("zero cache metadata missing e_max in " + dir, 0);
  double certified = meta["e_max"].get<double>();
  if (certified + 1e-12 < e_max) return empty;  // cache does not reach far enough
  ZeroList full = ingest_zero_table(cache_csv(dir));
  ZeroList out;
  out.source = ZeroSource::computed;
  out.tolerance = meta.value("tolerance", kBisectTol);
  for (double g : full.gammas)
    if (g <= e_max) out.gammas.push_back(g);
  return out;
}

void store_cached_zeros(const std::string& dir, const ZeroList& zeros, double e_max) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  write_zero_table(cache_csv(dir), zeros);
  nlohmann::json meta;
  meta["e_max"] = e_max;
  meta["tolerance"] = zeros.tolerance;
  std::string tmp = cache_meta(dir) + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << meta.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, cache_meta(dir));
}

}  // namespace rsl
