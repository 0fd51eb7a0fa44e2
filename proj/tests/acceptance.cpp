// Acceptance suite: end-to-end reproduction of the reference power tables,
// finite-sample quantiles, efficiency constants, the matched-sample-size
// comparison, the fast property checks, and the asymptotic-quantile
// stability/convergence diagnostics. Prints one PASS/FAIL line per criterion
// and exits nonzero if any fail.
//
// Runtime is dominated by the Monte-Carlo tables (about 300k fGn
// replications at sample sizes up to 5330); expect a few minutes on two
// cores, well under half an hour on a desktop.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <numeric>
#include <string>
#include <vector>

#include "lrdcp/montecarlo.hpp"
#include "lrdcp/rng.hpp"

using namespace lrdcp;

namespace {

constexpr double kHurst = 0.7;
constexpr double kAlpha = 0.05;
constexpr int kReps = 10000;
constexpr std::uint64_t kSeed = 20240901;

struct Criterion {
    std::string label;
    bool pass = true;
    std::vector<std::string> notes;

    void check(bool ok, const std::string& detail) {
        if (!ok) {
            pass = false;
            notes.push_back(detail);
        }
    }
    void note(const std::string& detail) { notes.push_back(detail); }
};

std::string fmt(const char* format, ...) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof(buf), format, args);
    va_end(args);
    return buf;
}

int threads = 0;

double power_of(const std::vector<PowerCell>& cells, int n, double tau, double shift,
                Method method) {
    for (const auto& c : cells)
        if (c.n == n && std::fabs(c.tau - tau) < 1e-12 &&
            std::fabs(c.shift - shift) < 1e-9 && c.method == method)
            return c.power;
    std::fprintf(stderr, "internal: cell (%d, %g, %g) not found\n", n, tau, shift);
    std::exit(99);
}

// ---- criterion 1: power table, Gaussian data, n = 2000 ------------------

Criterion criterion_gaussian_power(double q_asym) {
    Criterion crit{"criterion 1: Gaussian power table (n=2000, H=0.7, R=10000)"};

    QuantileTable table;
    // asymptotic critical values on the statistic scale; |a1| = 1 and
    // |int J1 dF| = 1/(2 sqrt(pi)) for Gaussian data
    const HermiteSummary summary = compute_summary(Transform::gaussian());
    table.insert(QuantileKey{kAlpha, kHurst, kAsymptotic, Sidedness::TwoSided,
                             Method::Cusum, "gaussian"},
                 QuantileEntry{std::fabs(summary.a1) * q_asym, kReps, 8192, kSeed,
                               "order-ceil"});
    table.insert(QuantileKey{kAlpha, kHurst, kAsymptotic, Sidedness::TwoSided,
                             Method::Wilcoxon, "gaussian"},
                 QuantileEntry{std::fabs(summary.j1_integral) * q_asym, kReps, 8192, kSeed,
                               "order-ceil"});

    PowerStudyConfig config;
    config.sizes = {2000};
    config.taus = {0.05, 0.1, 0.3, 0.5};
    config.shifts = {Shift{false, 0.5}, Shift{false, 1.0}, Shift{false, 2.0}};
    config.transform = "gaussian";
    config.hurst = kHurst;
    config.reps = kReps;
    config.alpha = kAlpha;
    config.base_seed = kSeed;
    config.threads = threads;
    const auto cells = run_power_study(config, table);

    struct Ref {
        double tau, h, cusum, wilcoxon;
    };
    // reference values (10k-replication study, asymptotic 5% critical values)
    const std::vector<Ref> refs = {
        {0.05, 0.5, 0.074, 0.072}, {0.1, 0.5, 0.153, 0.143}, {0.3, 0.5, 0.767, 0.765},
        {0.5, 0.5, 0.874, 0.876},  {0.05, 1.0, 0.153, 0.128}, {0.1, 1.0, 0.694, 0.602},
        {0.3, 1.0, 1.000, 1.000},  {0.5, 1.0, 1.000, 1.000},  {0.05, 2.0, 0.828, 0.321},
        {0.1, 2.0, 1.000, 1.000},  {0.3, 2.0, 1.000, 1.000},  {0.5, 2.0, 1.000, 1.000}};

    for (const Ref& ref : refs) {
        for (Method m : {Method::Cusum, Method::Wilcoxon}) {
            const double expect = (m == Method::Cusum) ? ref.cusum : ref.wilcoxon;
            const double got = power_of(cells, 2000, ref.tau, ref.h, m);
            const char* name = (m == Method::Cusum) ? "cusum" : "wilcoxon";
            if (expect >= 0.999) {
                crit.check(got > 0.99, fmt("%s tau=%.2f h=%.1f: %.3f but reference 1.000 "
                                           "needs > 0.99", name, ref.tau, ref.h, got));
            } else {
                crit.check(std::fabs(got - expect) <= 0.03,
                           fmt("%s tau=%.2f h=%.1f: %.3f vs %.3f (tol 0.03)", name, ref.tau,
                               ref.h, got, expect));
            }
        }
    }

    // spot values and the early-break divergence
    const double c_03_05 = power_of(cells, 2000, 0.3, 0.5, Method::Cusum);
    const double w_03_05 = power_of(cells, 2000, 0.3, 0.5, Method::Wilcoxon);
    const double c_005_2 = power_of(cells, 2000, 0.05, 2.0, Method::Cusum);
    const double w_005_2 = power_of(cells, 2000, 0.05, 2.0, Method::Wilcoxon);
    crit.check(std::fabs(c_03_05 - 0.767) <= 0.03,
               fmt("spot cusum(0.3, 0.5) = %.3f vs 0.767", c_03_05));
    crit.check(std::fabs(w_03_05 - 0.765) <= 0.03,
               fmt("spot wilcoxon(0.3, 0.5) = %.3f vs 0.765", w_03_05));
    crit.check(std::fabs(c_005_2 - 0.828) <= 0.05,
               fmt("spot cusum(0.05, 2) = %.3f vs 0.828 (tol 0.05)", c_005_2));
    crit.check(std::fabs(w_005_2 - 0.321) <= 0.05,
               fmt("spot wilcoxon(0.05, 2) = %.3f vs 0.321 (tol 0.05)", w_005_2));
    crit.check(c_005_2 - w_005_2 > 0.0, "early-break gap must favor cusum");
    crit.check(std::fabs((c_005_2 - w_005_2) - (0.828 - 0.321)) <= 0.05,
               fmt("early-break gap %.3f vs 0.507 (tol 0.05)", c_005_2 - w_005_2));
    crit.note(fmt("spot values: cusum(0.3,0.5)=%.3f wilcoxon(0.3,0.5)=%.3f "
                  "cusum(0.05,2)=%.3f wilcoxon(0.05,2)=%.3f",
                  c_03_05, w_03_05, c_005_2, w_005_2));
    return crit;
}

// ---- criterion 2: finite-sample cusum quantiles, Pareto31 ---------------

Criterion criterion_finite_quantiles(std::vector<double>& quantiles_out) {
    Criterion crit{"criterion 2: finite-sample cusum quantiles (Pareto31, H=0.7)"};
    const std::vector<int> sizes = {266, 1332, 2666, 5330};
    const std::vector<double> expect = {0.73, 0.66, 0.64, 0.63};
    const Transform pareto = Transform::pareto31();
    quantiles_out.clear();
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        const double q = finite_sample_quantile(sizes[i], pareto, kHurst, Method::Cusum,
                                                kAlpha, kReps,
                                                derive_seed(kSeed, 100 + i), threads);
        quantiles_out.push_back(q);
        crit.check(std::fabs(q - expect[i]) <= 0.02,
                   fmt("n=%d: %.4f vs %.2f (tol 0.02)", sizes[i], q, expect[i]));
    }
    for (std::size_t i = 1; i < quantiles_out.size(); ++i)
        crit.check(quantiles_out[i] < quantiles_out[i - 1],
                   fmt("sequence not decreasing at n=%d", sizes[i]));
    crit.note(fmt("quantiles: %.4f %.4f %.4f %.4f", quantiles_out[0], quantiles_out[1],
                  quantiles_out[2], quantiles_out[3]));
    return crit;
}

// ---- criterion 3: efficiency constants ----------------------------------

Criterion criterion_constants() {
    Criterion crit{"criterion 3: ARE constants"};
    const HermiteSummary gauss = compute_summary(Transform::gaussian());
    crit.check(std::fabs(are_lrd(gauss, 0.6).value - 1.0) <= 1e-8,
               fmt("gaussian ARE = %.12f vs 1", are_lrd(gauss, 0.6).value));

    const HermiteSummary pareto = compute_summary(Transform::pareto31());
    crit.check(std::fabs(pareto.shift_ratio - 2.67754) <= 1e-3,
               fmt("shift ratio %.6f vs 2.67754 (tol 1e-3)", pareto.shift_ratio));
    crit.check(std::fabs(pareto.a1 - (-0.6784)) <= 5e-4,
               fmt("a1 = %.6f vs -0.6784 (tol 5e-4)", pareto.a1));
    const double are_pareto = are_lrd(pareto, 0.6).value;
    crit.check(std::fabs(are_pareto - 26.655) <= 0.1,
               fmt("pareto ARE %.4f vs 26.655 (tol 0.1)", are_pareto));

    const double sigma = std::sqrt(1.0 / 12.0);
    const double identity = std::pow(2.0 * sigma * std::sqrt(M_PI), -2.0);
    crit.check(std::fabs(are_iid().value - 3.0 / M_PI) <= 1e-15, "iid ARE must be 3/pi");
    crit.check(std::fabs(identity - 3.0 / M_PI) <= 1e-15,
               "(2 sigma sqrt(pi))^-2 identity failed");
    crit.note(fmt("a1=%.6f shift_ratio=%.6f ARE=%.4f iid=%.6f", pareto.a1,
                  pareto.shift_ratio, are_pareto, are_iid().value));
    return crit;
}

// ---- criterion 4: matched-sample-size study ------------------------------

Criterion criterion_matched(double q_asym, const std::vector<double>& cusum_quantiles) {
    Criterion crit{
        "criterion 4: matched-size power tables (Pareto31, as-published calibration)"};
    const HermiteSummary summary = compute_summary(Transform::pareto31());

    QuantileTable table;
    table.insert(QuantileKey{kAlpha, kHurst, kAsymptotic, Sidedness::TwoSided,
                             Method::Wilcoxon, "pareto31"},
                 QuantileEntry{std::fabs(summary.j1_integral) * q_asym, kReps, 8192, kSeed,
                               "order-ceil"});
    const std::vector<int> n_c = {266, 1332, 2666, 5330};
    for (std::size_t i = 0; i < n_c.size(); ++i)
        table.insert(QuantileKey{kAlpha, kHurst, n_c[i], Sidedness::TwoSided, Method::Cusum,
                                 "pareto31"},
                     QuantileEntry{cusum_quantiles[i], kReps, 0, kSeed, "order-ceil"});

    // reference tables: [c_w][n][tau], tau in {0.05, 0.1, 0.3, 0.5}
    const std::vector<double> taus = {0.05, 0.1, 0.3, 0.5};
    const std::vector<int> n_w = {10, 50, 100, 200};
    const double refs_w[2][4][4] = {
        {{.036, .025, .033, .079}, {.049, .051, .093, .120},
         {.050, .053, .102, .134}, {.051, .055, .103, .134}},
        {{.033, .024, .039, .197}, {.049, .055, .199, .283},
         {.051, .063, .225, .316}, {.054, .066, .242, .338}}};
    const double refs_c[2][4][4] = {
        {{.049, .049, .066, .088}, {.050, .052, .083, .110},
         {.052, .055, .092, .127}, {.051, .054, .099, .130}},
        {{.049, .054, .162, .259}, {.052, .062, .236, .345},
         {.055, .069, .272, .390}, {.054, .074, .287, .402}}};

    double worst = 0.0;
    for (int ci = 0; ci < 2; ++ci) {
        MatchedStudyConfig config;
        config.c_w = ci + 1.0;
        config.taus = taus;
        config.n_w = n_w;
        config.n_c = n_c;
        config.hurst = kHurst;
        config.transform = "pareto31";
        config.reps = kReps;
        config.alpha = kAlpha;
        config.base_seed = derive_seed(kSeed, 4400 + ci);
        config.threads = threads;
        config.calibration = MatchedCalibration::AsPublished;
        const auto pairs = matched_are_study(config, summary, table);

        for (const auto& pair : pairs) {
            int ni = -1, ti = -1;
            for (int i = 0; i < 4; ++i) {
                if (pair.n_w == n_w[i]) ni = i;
                if (std::fabs(pair.tau - taus[i]) < 1e-12) ti = i;
            }
            const double rw = refs_w[ci][ni][ti];
            const double rc = refs_c[ci][ni][ti];
            worst = std::max({worst, std::fabs(pair.wilcoxon.power - rw),
                              std::fabs(pair.cusum.power - rc)});
            crit.check(std::fabs(pair.wilcoxon.power - rw) <= 0.04,
                       fmt("c_w=%d wilcoxon n=%d tau=%.2f: %.3f vs %.3f", ci + 1, pair.n_w,
                           pair.tau, pair.wilcoxon.power, rw));
            crit.check(std::fabs(pair.cusum.power - rc) <= 0.04,
                       fmt("c_w=%d cusum n=%d tau=%.2f: %.3f vs %.3f", ci + 1, pair.n_c,
                           pair.tau, pair.cusum.power, rc));
            // matched absolute shifts up to integer rounding of n_c
            crit.check(std::fabs(pair.h_c - pair.h_w) / pair.h_w < 0.01,
                       fmt("shifts not matched at n_w=%d", pair.n_w));

            // equal-performance claim at matched sizes. It binds for c_w=1;
            // for c_w=2 the reference tables themselves separate by up to
            // 0.074 at tau=0.5 (their values are reproduced above but not
            // required to coincide), so there the pair difference is held to
            // the printed difference instead.
            if (pair.n_w >= 50 && pair.tau >= 0.3 - 1e-12) {
                const double my_diff = std::fabs(pair.cusum.power - pair.wilcoxon.power);
                const double printed_diff = std::fabs(rc - rw);
                if (ci == 0) {
                    crit.check(my_diff <= 0.05,
                               fmt("c_w=1 pair n_w=%d n_c=%d tau=%.2f: cusum %.3f vs "
                                   "wilcoxon %.3f differ by > 0.05",
                                   pair.n_w, pair.n_c, pair.tau, pair.cusum.power,
                                   pair.wilcoxon.power));
                } else {
                    crit.check(std::fabs(my_diff - printed_diff) <= 0.03,
                               fmt("c_w=2 pair n_w=%d tau=%.2f: gap %.3f drifted from the "
                                   "printed gap %.3f",
                                   pair.n_w, pair.tau, my_diff, printed_diff));
                    crit.note(fmt("c_w=2 pair n_w=%d n_c=%d tau=%.2f: gap %.3f (printed "
                                  "gap %.3f)",
                                  pair.n_w, pair.n_c, pair.tau, my_diff, printed_diff));
                }
            }
        }
    }
    crit.note(fmt("worst |power - reference| over 64 cells: %.4f", worst));
    crit.note("calibration: as-published (shift constants scaled by 1/shift_ratio; the "
              "consistent calibration is the library default)");
    return crit;
}

// ---- criterion 5: fast property suite ------------------------------------

std::vector<double> brute_cusum(const Series& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> path(n - 1, 0.0);
    for (int k = 1; k <= n - 1; ++k) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = k; j < n; ++j) acc += x[j] - x[i];
        path[k - 1] = acc;
    }
    return path;
}

std::vector<double> brute_wilcoxon(const Series& x) {
    const int n = static_cast<int>(x.size());
    std::vector<double> path(n - 1, 0.0);
    for (int k = 1; k <= n - 1; ++k) {
        double acc = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = k; j < n; ++j) acc += (x[i] <= x[j] ? 1.0 : 0.0) - 0.5;
        path[k - 1] = acc;
    }
    return path;
}

Criterion criterion_properties() {
    Criterion crit{"criterion 5: property suite"};
    CounterRng rng(424242);

    // brute-force oracle equivalence on 500 random series
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(rng.next_u64() % 199);
        Series x(n);
        for (int i = 0; i < n; ++i) {
            double v = rng.next_normal();
            if (trial % 3 == 0) v = std::round(v * 4.0) / 4.0;  // ties
            x[i] = v;
        }
        const auto cus = cusum_path(x), cus_ref = brute_cusum(x);
        const auto wil = wilcoxon_path(x), wil_ref = brute_wilcoxon(x);
        for (std::size_t k = 0; k < cus.size(); ++k) {
            if (std::fabs(cus[k] - cus_ref[k]) >
                1e-10 * std::max(1.0, std::fabs(cus_ref[k]))) {
                crit.check(false, fmt("cusum oracle mismatch, trial %d k=%zu", trial, k));
                break;
            }
        }
        if (wil != wil_ref) crit.check(false, fmt("wilcoxon oracle mismatch, trial %d", trial));

        // shift invariance / scale equivariance / monotone invariance
        Series shifted = x, scaled = x, mapped = x;
        for (double& v : shifted) v += 7.25;
        for (double& v : scaled) v *= 3.0;
        for (double& v : mapped) v = std::exp(v);
        const auto cus_shift = cusum_path(shifted);
        const auto cus_scale = cusum_path(scaled);
        for (std::size_t k = 0; k < cus.size(); ++k) {
            if (std::fabs(cus_shift[k] - cus[k]) >
                1e-9 * std::max(1.0, std::fabs(cus[k]))) {
                crit.check(false, fmt("cusum shift invariance, trial %d", trial));
                break;
            }
            if (std::fabs(cus_scale[k] - 3.0 * cus[k]) >
                1e-9 * std::max(1.0, std::fabs(cus[k]))) {
                crit.check(false, fmt("cusum scale equivariance, trial %d", trial));
                break;
            }
        }
        if (trial % 3 != 0 && wilcoxon_path(mapped) != wil)
            crit.check(false, fmt("wilcoxon monotone invariance, trial %d", trial));
        for (int k = 1; k <= n - 1; ++k)
            if (std::fabs(wil[k - 1]) > 0.5 * k * (n - k) + 1e-9) {
                crit.check(false, fmt("wilcoxon path bound, trial %d", trial));
                break;
            }
    }

    // null size calibration at n = 500 with finite-sample quantiles
    {
        QuantileTable table;
        for (Method m : {Method::Cusum, Method::Wilcoxon}) {
            const double q = finite_sample_quantile(
                500, Transform::gaussian(), kHurst, m, kAlpha, kReps,
                derive_seed(kSeed, 500), threads);
            table.insert(QuantileKey{kAlpha, kHurst, 500, Sidedness::TwoSided, m, "gaussian"},
                         QuantileEntry{q, kReps, 0, kSeed, "order-ceil"});
        }
        PowerStudyConfig config;
        config.sizes = {500};
        config.taus = {0.5};
        config.shifts = {Shift{false, 0.0}};
        config.reps = 2000;
        config.hurst = kHurst;
        config.base_seed = derive_seed(kSeed, 501);
        config.threads = threads;
        const auto cells = run_power_study(config, table);
        const double band = 3.0 * std::sqrt(kAlpha * (1 - kAlpha) / 2000.0);
        for (const auto& cell : cells) {
            crit.check(std::fabs(cell.power - kAlpha) <= band,
                       fmt("null size %.3f outside %.3f +- %.3f", cell.power, kAlpha, band));
            crit.note(fmt("null size (%s, n=500): %.4f (band %.4f)",
                          cell.method == Method::Cusum ? "cusum" : "wilcoxon", cell.power,
                          band));
        }
    }

    // fGn covariance fidelity at lags 1, 2, 5, 10
    {
        const LrdSpec spec(kHurst);
        const int n = 256, nseries = 800;
        FgnSampler sampler(n, spec);
        std::vector<std::vector<double>> series(nseries);
        for (int s = 0; s < nseries; ++s) series[s] = sampler.generate(777 + s).values;
        for (int lag : {1, 2, 5, 10}) {
            std::vector<double> means(nseries);
            for (int s = 0; s < nseries; ++s) {
                double acc = 0.0;
                for (int i = 0; i + lag < n; ++i) acc += series[s][i] * series[s][i + lag];
                means[s] = acc / (n - lag);
            }
            const double mean =
                std::accumulate(means.begin(), means.end(), 0.0) / nseries;
            double var = 0.0;
            for (double m : means) var += (m - mean) * (m - mean);
            const double se = std::sqrt(var / (nseries - 1) / nseries);
            crit.check(std::fabs(mean - fgn_autocovariance(spec, lag)) <= 3.0 * se,
                       fmt("acvf lag %d: %.4f vs %.4f (3se %.4f)", lag, mean,
                           fgn_autocovariance(spec, lag), 3 * se));
        }
    }

    // d_n exact-vs-asymptotic ratio approaches kappa_1 = 25/7
    {
        const LrdSpec spec(kHurst);
        const double ratio =
            std::pow(dn(100000, spec, true), 2.0) / std::pow(100000.0, 1.4);
        crit.check(std::fabs(ratio / (25.0 / 7.0) - 1.0) <= 0.05,
                   fmt("dn ratio %.4f vs kappa_1 %.4f", ratio, 25.0 / 7.0));
        crit.note(fmt("dn^2/n^{2-D} at n=1e5: %.4f (kappa_1 = %.4f)", ratio, 25.0 / 7.0));
    }
    return crit;
}

// ---- criterion 6: asymptotic quantile stability ---------------------------

Criterion criterion_asymptotic_stability(double q_8192, double* q_out) {
    Criterion crit{"criterion 6: fBm-bridge quantile stability and convergence"};
    const double q_16384 = asymptotic_quantile(kHurst, kAlpha, Sidedness::TwoSided, 16384,
                                               kReps, derive_seed(kSeed, 7), threads);
    crit.check(std::fabs(q_16384 - q_8192) <= 0.01,
               fmt("grid doubling moved q from %.4f to %.4f (tol 0.01)", q_8192, q_16384));
    crit.note(fmt("q(grid 8192) = %.4f, q(grid 16384) = %.4f", q_8192, q_16384));
    *q_out = q_16384;
    return crit;
}

void criterion6_convergence(Criterion& crit, double q_asym,
                            const std::vector<double>& cusum_quantiles) {
    // the finite-sample cusum quantiles should drift toward |a1| * q
    const HermiteSummary pareto = compute_summary(Transform::pareto31());
    const double limit = std::fabs(pareto.a1) * q_asym;
    const double gap_first = std::fabs(cusum_quantiles.front() - limit);
    const double gap_last = std::fabs(cusum_quantiles.back() - limit);
    crit.check(gap_last < gap_first,
               fmt("finite-sample quantiles do not approach |a1|*q = %.4f", limit));
    crit.check(std::fabs(limit - 0.59) <= 0.02,
               fmt("|a1|*q = %.4f vs the 0.59 asymptotic entry (tol 0.02)", limit));
    crit.note(fmt("|a1|*q = %.4f; finite-sample sequence %.4f -> %.4f approaches it",
                  limit, cusum_quantiles.front(), cusum_quantiles.back()));
}

}  // namespace

int main(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc)
            threads = std::atoi(argv[++i]);
    }

    std::printf("asymptotic two-sided 5%% bridge quantile (H=0.7, grid 8192, %d reps)...\n",
                kReps);
    std::fflush(stdout);
    const double q_asym = asymptotic_quantile(kHurst, kAlpha, Sidedness::TwoSided, 8192,
                                              kReps, derive_seed(kSeed, 6), threads);
    std::printf("  q = %.4f\n", q_asym);
    std::fflush(stdout);

    std::vector<Criterion> results;

    std::vector<double> cusum_quantiles;
    results.push_back(criterion_constants());
    results.push_back(criterion_properties());
    results.push_back(criterion_finite_quantiles(cusum_quantiles));
    double q_fine = q_asym;
    results.push_back(criterion_asymptotic_stability(q_asym, &q_fine));
    criterion6_convergence(results.back(), q_asym, cusum_quantiles);
    results.push_back(criterion_gaussian_power(q_asym));
    results.push_back(criterion_matched(q_asym, cusum_quantiles));

    std::sort(results.begin(), results.end(),
              [](const Criterion& a, const Criterion& b) { return a.label < b.label; });

    bool all_pass = true;
    std::printf("\n");
    for (const Criterion& c : results) {
        std::printf("%s: %s\n", c.label.c_str(), c.pass ? "PASS" : "FAIL");
        for (const std::string& note : c.notes) std::printf("    %s\n", note.c_str());
        all_pass &= c.pass;
    }
    std::printf("\nacceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return all_pass ? 0 : 1;
}
