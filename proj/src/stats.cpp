#include "lrdcp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "lrdcp/errors.hpp"

namespace lrdcp {

namespace {

void validate_series(const Series& s) {
    if (s.size() < 2) throw InvalidLength("series must have length >= 2");
    for (double v : s)
        if (!std::isfinite(v)) throw InputError("series contains a non-finite value");
}

// Neumaier compensated running sum; n can reach 1e6 in stress runs.
struct CompensatedSum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        comp += (std::fabs(sum) >= std::fabs(v)) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + comp; }
};

// Fenwick tree over compressed ranks 1..size.
class Fenwick {
  public:
    explicit Fenwick(int size) : tree_(size + 1, 0) {}
    void add(int i, int v) {
        for (; i < static_cast<int>(tree_.size()); i += i & -i) tree_[i] += v;
    }
    // count of inserted ranks <= i
    std::int64_t prefix(int i) const {
        std::int64_t s = 0;
        for (; i > 0; i -= i & -i) s += tree_[i];
        return s;
    }
    std::int64_t total() const { return prefix(static_cast<int>(tree_.size()) - 1); }

  private:
    std::vector<std::int64_t> tree_;
};

// Compressed ranks in 1..r; equal values share a rank so the <= indicator is
// exact under ties.
std::vector<int> compress_ranks(const Series& s, int& max_rank) {
    const int n = static_cast<int>(s.size());
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return s[a] < s[b]; });
    std::vector<int> rank(n);
    int r = 0;
    for (int i = 0; i < n; ++i) {
        if (i == 0 || s[order[i]] != s[order[i - 1]]) ++r;
        rank[order[i]] = r;
    }
    max_rank = r;
    return rank;
}

}  // namespace

std::vector<double> cusum_path(const Series& series) {
    validate_series(series);
    const int n = static_cast<int>(series.size());
    CompensatedSum total;
    for (double v : series) total.add(v);
    const double sn = total.value();

    std::vector<double> path(n - 1);
    CompensatedSum prefix;
    for (int k = 1; k <= n - 1; ++k) {
        prefix.add(series[k - 1]);
        path[k - 1] = static_cast<double>(k) * sn - static_cast<double>(n) * prefix.value();
    }
    return path;
}

std::vector<double> wilcoxon_path(const Series& series) {
    validate_series(series);
    const int n = static_cast<int>(series.size());
    int max_rank = 0;
    const std::vector<int> rank = compress_ranks(series, max_rank);

    Fenwick left(max_rank), right(max_rank);
    for (int i = 0; i < n; ++i) right.add(rank[i], 1);

    // Moving the split k -> k+1: pairs (i, k+1) with X_i <= X_{k+1} leave the
    // cross set, pairs (k+1, j), j >= k+2 with X_{k+1} <= X_j enter it.
    std::vector<double> path(n - 1);
    std::int64_t count = 0;
    for (int k = 1; k <= n - 1; ++k) {
        const int r = rank[k - 1];
        const std::int64_t below_left = left.prefix(r);  // #{i <= k-1 : X_i <= X_k}
        right.add(r, -1);
        const std::int64_t at_least_right = right.total() - right.prefix(r - 1);
        count += at_least_right - below_left;
        left.add(r, 1);
        path[k - 1] = static_cast<double>(count) -
                      0.5 * static_cast<double>(k) * static_cast<double>(n - k);
    }
    return path;
}

double dn(int n, const LrdSpec& spec, bool exact) {
    if (n < 1) throw InvalidLength("dn: n must be >= 1");
    const double d = spec.d();
    if (!exact) return std::pow(static_cast<double>(n), 1.0 - 0.5 * d);
    const double var = partial_sum_variance(
        n, [d](int k) { return k == 0 ? 1.0 : std::pow(static_cast<double>(k), -d); });
    return std::sqrt(var);
}

double phi_tau(double tau, double lambda) {
    return (lambda <= tau) ? lambda * (1.0 - tau) : (1.0 - lambda) * tau;
}

Normalization Normalization::lrd(Method method, int n, const LrdSpec& spec,
                                 double hermite_scale, bool exact_dn) {
    if (!(hermite_scale > 0.0))
        throw InconsistentNormalization("hermite_scale must be positive");
    return Normalization{method, Mode::Lrd, n, lrdcp::dn(n, spec, exact_dn), hermite_scale};
}

Normalization Normalization::iid(Method method, int n) {
    const double scale = (method == Method::Cusum) ? 1.0 : std::sqrt(1.0 / 12.0);
    return Normalization{method, Mode::Iid, n, std::sqrt(static_cast<double>(n)), scale};
}

double path_extremum(const std::vector<double>& path, Sidedness sidedness, int* argmax_k) {
    double best = -std::numeric_limits<double>::infinity();
    int best_k = 1;
    for (int k = 1; k <= static_cast<int>(path.size()); ++k) {
        const double v = (sidedness == Sidedness::TwoSided) ? std::fabs(path[k - 1])
                                                            : path[k - 1];
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    if (argmax_k) *argmax_k = best_k;
    return best;
}

TestReport test_statistic(const Series& series, Method method, Mode mode,
                          Sidedness sidedness, const Normalization& norm,
                          double critical_value) {
    if (norm.method != method || norm.mode != mode)
        throw InconsistentNormalization("normalization does not match method/mode");
    if (norm.n != static_cast<int>(series.size()))
        throw InconsistentNormalization("normalization built for a different sample size");
    if (!(norm.dn > 0.0) || !(norm.hermite_scale > 0.0))
        throw InconsistentNormalization("normalization scales must be positive");
    if (mode == Mode::Iid) {
        const double expect = (method == Method::Cusum) ? 1.0 : std::sqrt(1.0 / 12.0);
        if (std::fabs(norm.hermite_scale - expect) > 1e-12)
            throw InconsistentNormalization("iid-mode scale must be the fixed convention");
    }

    TestReport report;
    report.method = method;
    report.mode = mode;
    report.sidedness = sidedness;
    report.raw_path = (method == Method::Cusum) ? cusum_path(series) : wilcoxon_path(series);
    const double extremum = path_extremum(report.raw_path, sidedness, &report.argmax_k);
    const double n = static_cast<double>(series.size());
    report.statistic = extremum / (n * norm.dn * norm.hermite_scale);
    report.critical_value = critical_value;
    report.reject = report.statistic >= critical_value;
    return report;
}

}  // namespace lrdcp
