#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lrdcp/hermite.hpp"
#include "lrdcp/stats.hpp"
#include "lrdcp/transform.hpp"

// Monte-Carlo estimation of critical values (asymptotic fractional-bridge
// quantiles and finite-sample quantiles of the test statistics) and the
// power-study harness.
//
// Statistics are tabulated on the "table" scale extremum / (n d_n), so
// asymptotic critical values absorb the Hermite factor: they are stored as
// hermite_scale * q where q is the raw bridge quantile. Replications are the
// unit of parallel work; replication r of a cell uses a seed derived from
// (base_seed, cell hash, r), so results are bit-identical for any thread
// count and every cell is independently reproducible.

namespace lrdcp {

int resolve_threads(int threads);  // 0 = hardware concurrency

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Upper-alpha quantile: ascending order statistic at ceil((1-alpha)*reps),
// 1-based, clamped to [1, reps].
double upper_quantile(std::vector<double> sample, double alpha);

inline constexpr int kAsymptotic = -1;

struct QuantileKey {
    double alpha;
    double hurst;
    int sample_size;  // kAsymptotic for the limit distribution
    Sidedness sidedness;
    Method method;
    std::string transform;

    bool operator<(const QuantileKey& o) const;
};

struct QuantileEntry {
    double critical_value;
    long replications;
    int grid_n;  // 0 for finite-sample entries
    std::uint64_t base_seed;
    std::string estimator;  // "order-ceil"
};

class QuantileTable {
  public:
    void insert(const QuantileKey& key, const QuantileEntry& entry);
    const QuantileEntry* find(const QuantileKey& key) const;
    // Exact key first, then the asymptotic entry with the same remainder.
    const QuantileEntry* lookup(const QuantileKey& key) const;
    std::size_t size() const { return entries_.size(); }
    const std::map<QuantileKey, QuantileEntry>& entries() const { return entries_; }

    void save_csv(std::ostream& out) const;
    static QuantileTable load_csv(std::istream& in);

  private:
    std::map<QuantileKey, QuantileEntry> entries_;
};

// Raw upper-alpha quantile of sup over [0,1] of the fractional bridge
// B_H(l) - l B_H(1) (two-sided: of its absolute value), simulated as
// cumulative fGn sums scaled by grid_n^{-H}. pre: grid_n >= 1024, reps >= 1000.
double asymptotic_quantile(double hurst, double alpha, Sidedness sidedness, int grid_n,
                           int reps, std::uint64_t seed, int threads = 0);

// Upper-alpha quantile of the null statistic extremum / (n d_n) at sample
// size n. pre: reps >= 1000.
double finite_sample_quantile(int n, const Transform& transform, double hurst,
                              Method method, double alpha, int reps, std::uint64_t seed,
                              int threads = 0, Sidedness sidedness = Sidedness::TwoSided);

// Closed-form Brownian-bridge sup quantiles (iid mode):
// one-sided P(sup BB > x) = exp(-2x^2); two-sided by series inversion.
double brownian_bridge_sup_quantile(double alpha, Sidedness sidedness);

struct Shift {
    bool is_constant;  // true: h = value * n^{-D/2}; false: absolute h
    double value;
};

struct PowerStudyConfig {
    std::vector<int> sizes;
    std::vector<double> taus;
    std::vector<Shift> shifts;
    std::string transform = "gaussian";
    double hurst = 0.7;
    int reps = 10000;
    double alpha = 0.05;
    std::vector<Method> methods{Method::Cusum, Method::Wilcoxon};
    Sidedness sidedness = Sidedness::TwoSided;
    std::uint64_t base_seed = 0;
    int threads = 0;

    void validate() const;
};

struct PowerCell {
    int n = 0;
    double tau = 0.0;
    double shift = 0.0;  // resolved absolute shift
    std::optional<double> shift_constant;
    Method method = Method::Cusum;
    double critical_value = 0.0;
    long rejections = 0;
    int reps = 0;
    double power = 0.0;
    double std_error = 0.0;
};

// Methods share each replication's series; rejection counts are aggregated by
// order-independent integer addition. Missing critical values raise
// MissingQuantile before any simulation starts.
std::vector<PowerCell> run_power_study(const PowerStudyConfig& config,
                                       const QuantileTable& quantiles);

void write_power_csv(std::ostream& out, const std::vector<PowerCell>& cells,
                     const PowerStudyConfig& config);
void write_power_json(std::ostream& out, const std::vector<PowerCell>& cells,
                      const PowerStudyConfig& config);

enum class MatchedCalibration {
    // c_C = shift_ratio * c_W with the supplied c_W: identical absolute
    // shifts at matched sizes, per the ARE construction.
    Consistent,
    // Both constants additionally divided by shift_ratio; this is the
    // calibration that reproduces the published matched power tables.
    AsPublished,
};

struct MatchedStudyConfig {
    double c_w = 1.0;
    std::vector<double> taus;
    std::vector<int> n_w;
    std::vector<int> n_c;  // empty: round(b * n_w)
    double hurst = 0.7;
    std::string transform = "pareto31";
    int reps = 10000;
    double alpha = 0.05;
    Sidedness sidedness = Sidedness::TwoSided;
    std::uint64_t base_seed = 0;
    int threads = 0;
    MatchedCalibration calibration = MatchedCalibration::Consistent;
};

struct MatchedPair {
    int n_w = 0, n_c = 0;
    double tau = 0.0;
    double h_w = 0.0, h_c = 0.0;
    PowerCell wilcoxon, cusum;
};

// Wilcoxon runs at n_w with the asymptotic critical value, CUSUM at n_c with
// its finite-sample quantile; both shifts come from the same constant family
// so the absolute shifts match up to the integer rounding of n_c.
std::vector<MatchedPair> matched_are_study(const MatchedStudyConfig& config,
                                           const HermiteSummary& summary,
                                           const QuantileTable& quantiles);

// Diagnostic estimate of psi(t) = P(sup (bridge + t phi_tau) >= q_alpha) on a
// fixed simulated bridge ensemble (one-sided), monotone in t.
struct PsiCurve {
    std::vector<double> t_values;
    std::vector<double> psi;

    // Smallest tabulated t with psi(t) >= beta; +inf when not reached.
    double inverse(double beta) const;
};

PsiCurve psi_curve(double hurst, double tau, double q_alpha,
                   const std::vector<double>& t_values, int grid_n, int reps,
                   std::uint64_t seed, int threads = 0);

}  // namespace lrdcp
