// rsl: numerical experiments around the zero-counting function of zeta,
// prime periodic-orbit expansions, and random-matrix spectral statistics.
// One subcommand per experiment; every run emits its data file(s) and a
// JSON manifest recording the merged configuration.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rsl/arith.hpp"
#include "rsl/io.hpp"
#include "rsl/lfunc.hpp"
#include "rsl/orbits.hpp"
#include "rsl/rmt.hpp"
#include "rsl/spectra.hpp"
#include "rsl/zeros.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using rsl::ManifestEntry;
using rsl::Table;

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

std::string fmt(double v) { return rsl::format_number(v); }

std::vector<double> make_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!(hi >= lo)) throw std::invalid_argument("grid upper bound below lower bound");
  std::vector<double> grid;
  for (double e = lo; e <= hi + 1e-12; e += step) grid.push_back(e);
  return grid;
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

// ---------------------------------------------------------------- zeros ---

struct ZerosCmd {
  double emax = 100.0;
  std::string out = "zeros.csv";
  std::string cache_dir;
  bool no_cache = false;
  double base_step = 0.05;
  int threads = 0;

  void run() const {
    std::string dir = no_cache ? std::string{} : cache_dir;
    rsl::ZeroList zl = rsl::load_cached_zeros(dir, emax);
    bool hit = !zl.gammas.empty();
    if (!hit) {
      rsl::ZeroSearchOptions opts;
      opts.base_step = base_step;
      opts.threads = threads;
      zl = rsl::find_zeros(emax, opts);
      if (!dir.empty()) rsl::store_cached_zeros(dir, zl, emax);
    }
    rsl::write_zero_table(out, zl);
    rsl::write_manifest(manifest_path(out), "zeros",
                        {{"emax", fmt(emax)},
                         {"base_step", fmt(base_step)},
                         {"cache_dir", dir},
                         {"threads", std::to_string(threads)}},
                        0, {out});
    std::cout << zl.gammas.size() << " zeros with gamma <= " << fmt(emax)
              << " written to " << out << (hit ? " (cache hit)" : "") << "\n";
  }
};

// ---------------------------------------------------------------- count ---

struct CountCmd {
  double emin = 10.0;
  double emax = 100.0;
  double step = 1.0;
  std::string out = "count.csv";
  std::string format = "csv";

  void run() const {
    if (!(emin > 0.0 && emax <= 1e4 && emin < emax))
      throw std::invalid_argument("count: need 0 < emin < emax <= 1e4");
    Table t;
    t.columns = {"E", "n_exact", "n_smooth", "n_osc"};
    for (double e : make_grid(emin, emax, step)) {
      rsl::CountDecomposition d = rsl::decompose(e);
      t.rows.push_back({d.E, static_cast<double>(d.n_exact), d.n_smooth, d.n_osc});
    }
    rsl::write_table(out, t, format);
    rsl::write_manifest(manifest_path(out), "count",
                        {{"emin", fmt(emin)},
                         {"emax", fmt(emax)},
                         {"step", fmt(step)},
                         {"format", format}},
                        0, {out});
    std::cout << t.rows.size() << " decomposition rows written to " << out << "\n";
  }
};

// -------------------------------------------------------------- orbitsum ---

struct OrbitsumCmd {
  std::string form = "prime";  // prime | classc | gutzwiller
  double emin = 2.0;
  double emax = 30.0;
  double step = 0.01;
  std::int64_t pmax = 1000;
  int rmax = 3;
  int kmax = 10;
  double mu = 0.0;
  double hbar = 1.0;
  bool recon = false;
  double width = 0.2;
  std::string out = "orbitsum.csv";
  std::string format = "csv";
  int threads = 0;

  void run() const {
    apply_threads(threads);
    std::vector<double> grid = make_grid(emin, emax, step);
    std::vector<double> values;
    if (recon && form != "prime")
      throw std::invalid_argument("orbitsum: --recon applies to the prime form only");
    if (form == "prime") {
      rsl::TruncationSpec trunc = rsl::TruncationSpec::rectangular(pmax, 0, rmax);
      values = recon ? rsl::reconstruct_staircase(grid, trunc, width)
                     : rsl::nosc_grid(grid, trunc, threads);
    } else if (form == "classc") {
      rsl::TruncationSpec trunc = rsl::TruncationSpec::rectangular(pmax, kmax, rmax);
      std::vector<rsl::OrbitTerm> orbits = rsl::ansatz_orbits(trunc);
      values.resize(grid.size());
      std::int64_t n = static_cast<std::int64_t>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (std::int64_t i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] =
            rsl::class_c_sum(orbits, grid[static_cast<std::size_t>(i)], rmax);
    } else if (form == "gutzwiller") {
      // Hyperbolic orbits labeled by primes: tau = log p, stability e^{r tau},
      // Maslov phase --mu applied uniformly.
      rsl::PrimeTable table = rsl::sieve_primes(pmax);
      std::vector<rsl::OrbitTerm> orbits;
      for (std::int64_t p : table.primes) {
        rsl::OrbitTerm po;
        po.prime = p;
        po.tau = std::log(static_cast<double>(p));
        po.maslov = mu;
        double tau = po.tau;
        po.stability = [tau](int r) { return std::exp(r * tau); };
        orbits.push_back(std::move(po));
      }
      values.resize(grid.size());
      std::int64_t n = static_cast<std::int64_t>(grid.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
      for (std::int64_t i = 0; i < n; ++i)
        values[static_cast<std::size_t>(i)] =
            rsl::gutzwiller_sum(orbits, grid[static_cast<std::size_t>(i)], rmax, hbar);
    } else {
      throw std::invalid_argument("orbitsum: unknown form '" + form + "'");
    }
    Table t;
    t.columns = {"E", "value"};
    for (std::size_t i = 0; i < grid.size(); ++i) t.rows.push_back({grid[i], values[i]});
    rsl::write_table(out, t, format);
    rsl::write_manifest(manifest_path(out), "orbitsum",
                        {{"form", form},
                         {"emin", fmt(emin)},
                         {"emax", fmt(emax)},
                         {"step", fmt(step)},
                         {"pmax", std::to_string(pmax)},
                         {"rmax", std::to_string(rmax)},
                         {"kmax", std::to_string(kmax)},
                         {"mu", fmt(mu)},
                         {"hbar", fmt(hbar)},
                         {"recon", recon ? "true" : "false"},
                         {"width", fmt(width)},
                         {"format", format}},
                        0, {out});
    std::cout << t.rows.size() << " rows (" << form << ") written to " << out << "\n";
  }
};

// -------------------------------------------------------------- identity ---

struct IdentityCmd {
  std::vector<double> xs;
  double tol = 1e-12;
  std::string out = "identity.csv";
  std::string format = "csv";

  void run() const {
    std::vector<double> points = xs.empty() ? std::vector<double>{0.5} : xs;
    Table t;
    t.columns = {"x", "lhs", "rhs", "abs_diff", "log1m"};
    for (double x : points) {
      if (!(x > 0.0 && x < 1.0))
        throw std::invalid_argument("identity: x must lie in (0, 1), got " + fmt(x));
      auto f = [x](std::int64_t n) { return std::pow(x, static_cast<double>(n)); };
      rsl::DoublingCheck c = rsl::doubling_identity_check(f, x, tol);
      t.rows.push_back({x, c.lhs, c.rhs, std::fabs(c.lhs - c.rhs), std::log1p(-x)});
      std::cout << "x = " << fmt(x) << ": lhs = " << fmt(c.lhs)
                << ", rhs = " << fmt(c.rhs) << ", log(1-x) = " << fmt(std::log1p(-x))
                << "\n";
    }
    rsl::write_table(out, t, format);
    std::vector<ManifestEntry> params{{"tol", fmt(tol)}, {"format", format}};
    for (double x : points) params.push_back({"x", fmt(x)});
    rsl::write_manifest(manifest_path(out), "identity", params, 0, {out});
  }
};

// ----------------------------------------------------------------- equiv ---

struct EquivCmd {
  std::int64_t pmax = 200;
  std::int64_t nmax = 16;
  std::vector<double> energies;
  std::string out = "equiv.csv";
  std::string format = "csv";

  void run() const {
    std::vector<double> es = energies.empty() ? std::vector<double>{10.0} : energies;
    rsl::TruncationSpec trunc = rsl::TruncationSpec::closed_set(pmax, nmax);
    Table t;
    t.columns = {"E", "orbit_form", "prime_form", "abs_diff"};
    for (double e : es) {
      rsl::EquivalenceResult r = rsl::equivalence_check(e, trunc);
      t.rows.push_back({e, r.orbit_form, r.prime_form,
                        std::fabs(r.orbit_form - r.prime_form)});
      std::cout << "E = " << fmt(e) << ": orbit form = " << fmt(r.orbit_form)
                << ", prime form = " << fmt(r.prime_form) << "\n";
    }
    rsl::write_table(out, t, format);
    std::vector<ManifestEntry> params{{"pmax", std::to_string(pmax)},
                                      {"nmax", std::to_string(nmax)},
                                      {"format", format}};
    for (double e : es) params.push_back({"energy", fmt(e)});
    rsl::write_manifest(manifest_path(out), "equiv", params, 0, {out});
  }
};

// ------------------------------------------------------------------- rmt ---

struct RmtCmd {
  std::string cls = "gue";
  int n = 100;
  std::int64_t samples = 100;
  double sigma2 = 1.0;
  std::uint64_t seed = 12345;
  int threads = 0;
  std::string out = "spectra.csv";
  std::string format = "csv";

  void run() const {
    rsl::EnsembleSpec spec;
    std::string c = cls;
    for (char& ch : c) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (c == "gue")
      spec.ensemble = rsl::EnsembleClass::gue;
    else if (c == "c")
      spec.ensemble = rsl::EnsembleClass::class_c;
    else if (c == "d")
      spec.ensemble = rsl::EnsembleClass::class_d;
    else
      throw std::invalid_argument("rmt: unknown class '" + cls + "' (gue, c, d)");
    spec.base_dim = n;
    spec.sigma2 = sigma2;
    spec.seed = seed;
    std::vector<rsl::SpectrumSample> batch = rsl::sample_batch(spec, samples, threads);
    Table t;
    t.columns = {"sample", "k", "lambda"};
    double worst_pairing = 0.0;
    for (const rsl::SpectrumSample& s : batch) {
      if (spec.ensemble != rsl::EnsembleClass::gue)
        worst_pairing = std::max(worst_pairing, rsl::pairing_residual(s));
      for (std::size_t k = 0; k < s.eigenvalues.size(); ++k)
        t.rows.push_back({static_cast<double>(s.sample_index),
                          static_cast<double>(k + 1), s.eigenvalues[k]});
    }
    rsl::write_table(out, t, format);
    rsl::write_manifest(manifest_path(out), "rmt",
                        {{"class", c},
                         {"n", std::to_string(n)},
                         {"samples", std::to_string(samples)},
                         {"sigma2", fmt(sigma2)},
                         {"threads", std::to_string(threads)},
                         {"format", format}},
                        seed, {out});
    std::cout << batch.size() << " spectra written to " << out;
    if (spec.ensemble != rsl::EnsembleClass::gue)
      std::cout << " (max pairing residual " << fmt(worst_pairing) << ")";
    std::cout << "\n";
  }
};

// ----------------------------------------------------------------- stats ---

struct StatsCmd {
  std::string input;
  std::string kind = "spacing";  // spacing | pair | nearzero
  std::string reference = "gue";
  double bulk_fraction = 0.6;
  double window_width = 0.1;
  double grid_max = 3.0;
  double bin_width = 0.0;  // 0 = quarter mean spacing, estimated
  std::string out = "stats.csv";
  std::string format = "csv";

  // The input is either a zero table ("k,gamma") or an ensemble spectra
  // table ("sample,k,lambda"); detected by header.
  void run() const {
    std::ifstream in(input);
    if (!in) throw std::invalid_argument("stats: cannot open " + input);
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    in.close();

    std::vector<rsl::UnfoldedSequence> seqs;
    std::vector<rsl::SpectrumSample> samples;
    bool ensemble_input = false;
    if (header == "sample,k,lambda") {
      ensemble_input = true;
      samples = read_spectra(input);
      if (kind != "nearzero")
        for (const rsl::SpectrumSample& s : samples)
          seqs.push_back(rsl::unfold_ensemble(s, bulk_fraction));
    } else {
      rsl::ZeroList zl = rsl::ingest_zero_table(input);
      seqs.push_back(rsl::unfold_zeros(zl));
    }

    rsl::SpacingReference ref = reference == "poisson"
                                    ? rsl::SpacingReference::poisson
                                    : rsl::SpacingReference::gue_surmise;
    Table t;
    if (kind == "spacing") {
      std::vector<double> pooled;
      for (const rsl::UnfoldedSequence& s : seqs)
        for (double sp : s.spacings()) pooled.push_back(sp);
      double ks = rsl::spacing_ks(pooled, ref);
      std::sort(pooled.begin(), pooled.end());
      t.columns = {"s", "empirical_cdf", "reference_cdf"};
      double m = static_cast<double>(pooled.size());
      for (std::size_t i = 0; i < pooled.size(); ++i)
        t.rows.push_back({pooled[i], static_cast<double>(i + 1) / m,
                          rsl::spacing_reference_cdf(pooled[i], ref)});
      std::cout << "KS distance vs " << reference << ": " << fmt(ks) << " ("
                << pooled.size() << " spacings)\n";
    } else if (kind == "pair") {
      std::vector<double> grid;
      for (double x = 0.5 * window_width; x <= grid_max + 1e-12; x += window_width)
        grid.push_back(x);
      std::vector<double> r2 = rsl::pair_correlation(seqs, grid, window_width);
      t.columns = {"x", "r2", "reference"};
      double sup = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        double refv = rsl::pair_correlation_reference(grid[i]);
        sup = std::max(sup, std::fabs(r2[i] - refv));
        t.rows.push_back({grid[i], r2[i], refv});
      }
      std::cout << "pair correlation sup deviation from GUE form: " << fmt(sup) << "\n";
    } else if (kind == "nearzero") {
      if (!ensemble_input)
        throw std::invalid_argument("stats: nearzero needs ensemble spectra input");
      double bin = bin_width > 0.0 ? bin_width : rsl::suggest_near_zero_bin(samples);
      rsl::NearZeroDensity d = rsl::near_zero_density(samples, bin);
      t.columns = {"bin_width", "near_zero", "bulk", "ratio"};
      double ratio = d.bulk > 0.0 ? d.near_zero / d.bulk : 0.0;
      t.rows.push_back({bin, d.near_zero, d.bulk, ratio});
      std::cout << "near-zero/bulk density ratio: " << fmt(ratio) << "\n";
    } else {
      throw std::invalid_argument("stats: unknown kind '" + kind + "'");
    }
    rsl::write_table(out, t, format);
    rsl::write_manifest(manifest_path(out), "stats",
                        {{"input", input},
                         {"kind", kind},
                         {"reference", reference},
                         {"bulk_fraction", fmt(bulk_fraction)},
                         {"window_width", fmt(window_width)},
                         {"grid_max", fmt(grid_max)},
                         {"bin_width", fmt(bin_width)},
                         {"format", format}},
                        0, {out});
  }

  static std::vector<rsl::SpectrumSample> read_spectra(const std::string& path) {
    std::ifstream in(path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<rsl::SpectrumSample> samples;
    std::int64_t cur = -1;
    int lineno = 1;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      std::size_t c1 = line.find(',');
      std::size_t c2 = c1 == std::string::npos ? std::string::npos : line.find(',', c1 + 1);
      if (c2 == std::string::npos)
        throw rsl::parse_error("stats: malformed spectra row at line " +
                                   std::to_string(lineno),
                               lineno);
      std::int64_t s = std::stoll(line.substr(0, c1));
      double lambda = std::stod(line.substr(c2 + 1));
      if (s != cur) {
        samples.emplace_back();
        samples.back().sample_index = s;
        cur = s;
      }
      samples.back().eigenvalues.push_back(lambda);
    }
    for (rsl::SpectrumSample& s : samples)
      std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
    return samples;
  }
};

// ---------------------------------------------------------------- family ---

struct FamilyCmd {
  std::int64_t dmax = 200;
  std::vector<std::int64_t> moduli;
  double window = 15.0;
  int threads = 0;
  std::string out = "family.csv";
  std::string format = "csv";

  void run() const {
    std::vector<std::int64_t> ds = moduli.empty() ? rsl::family_moduli(dmax) : moduli;
    std::vector<rsl::FamilyLowZero> rows = rsl::family_low_zeros(ds, window, threads);
    Table t;
    t.columns = {"d", "gamma1", "scaled"};
    for (const rsl::FamilyLowZero& r : rows)
      t.rows.push_back({static_cast<double>(r.modulus), r.gamma1, r.scaled});
    rsl::write_table(out, t, format);
    rsl::write_manifest(manifest_path(out), "family",
                        {{"dmax", std::to_string(dmax)},
                         {"window", fmt(window)},
                         {"threads", std::to_string(threads)},
                         {"format", format}},
                        0, {out});
    std::cout << rows.size() << " moduli written to " << out << "\n";
  }
};

// ------------------------------------------------------------ progression ---

struct ProgressionCmd {
  std::int64_t d = 4;
  double x = 100000.0;
  std::string out = "progression.csv";
  std::string format = "csv";

  void run() const {
    if (d < 2) throw std::invalid_argument("progression: modulus must be >= 2");
    if (!(x > 2.0)) throw std::invalid_argument("progression: bound must exceed 2");
    double expected = rsl::log_integral(x) / static_cast<double>(rsl::totient(d));
    Table t;
    t.columns = {"a", "count", "li_over_phi", "rel_deviation"};
    for (std::int64_t a = 1; a < d; ++a) {
      if (rsl::gcd64(a, d) != 1) continue;
      auto count = static_cast<double>(rsl::prime_count_progression(a, d, x));
      t.rows.push_back({static_cast<double>(a), count, expected,
                        std::fabs(count - expected) / expected});
      std::cout << "a = " << a << ": " << fmt(count) << " primes, Li/phi = "
                << fmt(expected) << "\n";
    }
    rsl::write_table(out, t, format);
    rsl::write_manifest(manifest_path(out), "progression",
                        {{"d", std::to_string(d)}, {"x", fmt(x)}, {"format", format}},
                        0, {out});
  }
};

// ---------------------------------------------------------------- ingest ---

struct IngestCmd {
  std::string in;
  std::string out = "zeros.csv";

  void run() const {
    rsl::ZeroList zl = rsl::ingest_zero_table(in);
    rsl::write_zero_table(out, zl);
    rsl::write_manifest(manifest_path(out), "ingest", {{"in", in}}, 0, {out});
    std::cout << zl.gammas.size() << " ordinates ingested from " << in
              << " and written to " << out << "\n";
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory: zeta zeros, orbit sums, random-matrix spectra"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags override)");
  app.allow_config_extras(false);

  const char* env_cache = std::getenv("RSL_CACHE_DIR");

  ZerosCmd zeros_cmd;
  zeros_cmd.cache_dir = env_cache ? env_cache : "";
  auto* sz = app.add_subcommand("zeros", "find zeros of the Hardy function up to --emax");
  sz->add_option("--emax", zeros_cmd.emax, "upper ordinate bound")
      ->check(CLI::Range(1e-4, 1e4));
  sz->add_option("--out", zeros_cmd.out, "output CSV (k,gamma)");
  sz->add_option("--cache-dir", zeros_cmd.cache_dir,
                 "zero cache directory (default: env RSL_CACHE_DIR)");
  sz->add_flag("--no-cache", zeros_cmd.no_cache, "bypass the zero cache");
  sz->add_option("--base-step", zeros_cmd.base_step, "scan step below E = 100")
      ->check(CLI::PositiveNumber);
  sz->add_option("--threads", zeros_cmd.threads, "worker threads (0 = default)");

  CountCmd count_cmd;
  auto* sc = app.add_subcommand("count", "decompose N(E) into smooth + oscillatory parts");
  sc->add_option("--emin", count_cmd.emin, "grid start");
  sc->add_option("--emax", count_cmd.emax, "grid end");
  sc->add_option("--step", count_cmd.step, "grid step")->check(CLI::PositiveNumber);
  sc->add_option("--out", count_cmd.out, "output table");
  sc->add_option("--format", count_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  OrbitsumCmd orbit_cmd;
  auto* so = app.add_subcommand(
      "orbitsum", "prime / class-C / Gutzwiller orbit sums over an energy grid");
  so->add_option("--form", orbit_cmd.form, "prime, classc, or gutzwiller")
      ->check(CLI::IsMember({"prime", "classc", "gutzwiller"}));
  so->add_option("--emin", orbit_cmd.emin, "grid start");
  so->add_option("--emax", orbit_cmd.emax, "grid end");
  so->add_option("--step", orbit_cmd.step, "grid step")->check(CLI::PositiveNumber);
  so->add_option("--pmax", orbit_cmd.pmax, "prime cutoff")->check(CLI::Range(2, 100000000));
  so->add_option("--rmax", orbit_cmd.rmax, "repetition cutoff")->check(CLI::PositiveNumber);
  so->add_option("--kmax", orbit_cmd.kmax, "doubling cutoff (classc)")
      ->check(CLI::NonNegativeNumber);
  so->add_option("--mu", orbit_cmd.mu, "uniform Maslov phase (gutzwiller)");
  so->add_option("--hbar", orbit_cmd.hbar, "hbar (gutzwiller)")->check(CLI::PositiveNumber);
  so->add_flag("--recon", orbit_cmd.recon, "add the smooth term and Gaussian-smooth");
  so->add_option("--width", orbit_cmd.width, "smoothing width (with --recon)")
      ->check(CLI::NonNegativeNumber);
  so->add_option("--out", orbit_cmd.out, "output table");
  so->add_option("--format", orbit_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  so->add_option("--threads", orbit_cmd.threads, "worker threads (0 = default)");

  IdentityCmd id_cmd;
  auto* si = app.add_subcommand(
      "identity", "doubling identity sum_k sum_r (-1)^r f(2^k r)/r = -sum_r f(r)/r for f = x^n");
  si->add_option("--x", id_cmd.xs, "geometric ratio in (0,1); repeatable");
  si->add_option("--tol", id_cmd.tol, "tail tolerance")->check(CLI::PositiveNumber);
  si->add_option("--out", id_cmd.out, "output table");
  si->add_option("--format", id_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  EquivCmd eq_cmd;
  auto* se = app.add_subcommand(
      "equiv", "closed-truncation orbit sum vs regrouped prime-power sum");
  se->add_option("--pmax", eq_cmd.pmax, "prime cutoff")->check(CLI::Range(2, 100000000));
  se->add_option("--nmax", eq_cmd.nmax, "composite index bound")->check(CLI::PositiveNumber);
  se->add_option("--energy", eq_cmd.energies, "evaluation energy; repeatable");
  se->add_option("--out", eq_cmd.out, "output table");
  se->add_option("--format", eq_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  RmtCmd rmt_cmd;
  auto* sr = app.add_subcommand("rmt", "sample a random-matrix ensemble, emit spectra");
  sr->add_option("--class", rmt_cmd.cls, "gue, c, or d (case-insensitive)")
      ->check(CLI::IsMember({"gue", "c", "d"}, CLI::ignore_case));
  sr->add_option("--n", rmt_cmd.n, "base dimension N")->check(CLI::PositiveNumber);
  sr->add_option("--samples", rmt_cmd.samples, "sample count")->check(CLI::PositiveNumber);
  sr->add_option("--sigma2", rmt_cmd.sigma2, "variance per real parameter")
      ->check(CLI::PositiveNumber);
  sr->add_option("--seed", rmt_cmd.seed, "RNG seed");
  sr->add_option("--threads", rmt_cmd.threads, "worker threads (0 = default)");
  sr->add_option("--out", rmt_cmd.out, "output table");
  sr->add_option("--format", rmt_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  StatsCmd stats_cmd;
  auto* ss = app.add_subcommand("stats",
                                "spacing / pair-correlation / near-zero statistics");
  ss->add_option("--input", stats_cmd.input, "zero table or spectra table")->required();
  ss->add_option("--kind", stats_cmd.kind, "spacing, pair, or nearzero")
      ->check(CLI::IsMember({"spacing", "pair", "nearzero"}));
  ss->add_option("--reference", stats_cmd.reference, "gue or poisson")
      ->check(CLI::IsMember({"gue", "poisson"}));
  ss->add_option("--bulk-fraction", stats_cmd.bulk_fraction,
                 "central fraction kept when unfolding ensembles")
      ->check(CLI::Range(0.05, 1.0));
  ss->add_option("--window-width", stats_cmd.window_width, "pair-correlation bin width")
      ->check(CLI::PositiveNumber);
  ss->add_option("--grid-max", stats_cmd.grid_max, "pair-correlation range")
      ->check(CLI::PositiveNumber);
  ss->add_option("--bin-width", stats_cmd.bin_width,
                 "near-zero bin (0 = quarter mean spacing)");
  ss->add_option("--out", stats_cmd.out, "output table");
  ss->add_option("--format", stats_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  FamilyCmd family_cmd;
  auto* sf = app.add_subcommand("family",
                                "lowest zeros across a quadratic-character family");
  sf->add_option("--dmax", family_cmd.dmax, "modulus bound for the default family")
      ->check(CLI::Range(1, 100000));
  sf->add_option("--moduli", family_cmd.moduli, "explicit moduli; repeatable");
  sf->add_option("--window", family_cmd.window, "search window (0, window]")
      ->check(CLI::PositiveNumber);
  sf->add_option("--threads", family_cmd.threads, "worker threads (0 = default)");
  sf->add_option("--out", family_cmd.out, "output table");
  sf->add_option("--format", family_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  ProgressionCmd prog_cmd;
  auto* sp = app.add_subcommand("progression",
                                "prime counts in residue classes vs Li(x)/phi(d)");
  sp->add_option("--d", prog_cmd.d, "modulus")->check(CLI::Range(2, 1000000));
  sp->add_option("--x", prog_cmd.x, "upper bound")->check(CLI::PositiveNumber);
  sp->add_option("--out", prog_cmd.out, "output table");
  sp->add_option("--format", prog_cmd.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  IngestCmd ingest_cmd;
  auto* sg = app.add_subcommand("ingest", "import a zero table into cache format");
  sg->add_option("--in", ingest_cmd.in, "input table")->required();
  sg->add_option("--out", ingest_cmd.out, "output CSV (k,gamma)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sz->parsed()) zeros_cmd.run();
    if (sc->parsed()) count_cmd.run();
    if (so->parsed()) orbit_cmd.run();
    if (si->parsed()) id_cmd.run();
    if (se->parsed()) eq_cmd.run();
    if (sr->parsed()) rmt_cmd.run();
    if (ss->parsed()) stats_cmd.run();
    if (sf->parsed()) family_cmd.run();
    if (sp->parsed()) prog_cmd.run();
    if (sg->parsed()) ingest_cmd.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
