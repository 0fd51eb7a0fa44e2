#pragma once

#include <vector>

#include "lrdcp/fgn.hpp"

// Change-point statistics over all split points k = 1..n-1:
//
//   cusum:    path[k] = sum_{i<=k} sum_{j>k} (X_j - X_i) = k*S_n - n*S_k
//   wilcoxon: path[k] = sum_{i<=k} sum_{j>k} (1{X_i <= X_j} - 1/2)
//
// The normalized statistic is the path extremum (two-sided: max |path|)
// divided by n * d_n * hermite_scale, where d_n is the LRD normalization and
// hermite_scale carries |a_1| (cusum) or |int J_1 dF| (wilcoxon); the
// "table" scale fixes hermite_scale = 1 so the statistic is the bare
// max|path| / (n d_n), with the Hermite factor absorbed into the critical
// value instead. In iid mode n*d_n = n^{3/2} and the scales are 1 and
// sqrt(1/12).

namespace lrdcp {

using Series = std::vector<double>;

enum class Method { Cusum, Wilcoxon };
enum class Mode { Lrd, Iid };
enum class Sidedness { OneSided, TwoSided };

std::vector<double> cusum_path(const Series& series);
std::vector<double> wilcoxon_path(const Series& series);

// d_n normalization. exact=false: n^{1-D/2} (the simulation convention).
// exact=true: sqrt(Var sum_{i<=n} Y_i) under the model ACF rho(k) = k^{-D},
// which satisfies d_n^2 / n^{2-D} -> kappa_1 = 2/((1-D)(2-D)).
double dn(int n, const LrdSpec& spec, bool exact = false);

// Variance of the n-term partial sum for an arbitrary ACF, via lag counts:
// n*acf(0) + 2*sum_{k=1}^{n-1} (n-k)*acf(k).
template <class Acf>
double partial_sum_variance(int n, Acf&& acf) {
    double total = n * acf(0);
    for (int k = 1; k < n; ++k) total += 2.0 * (n - k) * acf(k);
    return total;
}

// Tent-shaped drift: lambda(1-tau) for lambda <= tau, (1-lambda)tau above;
// peak tau(1-tau) at lambda = tau.
double phi_tau(double tau, double lambda);

struct Normalization {
    Method method;
    Mode mode;
    int n;
    double dn;             // n^{1-D/2} or exact (lrd); sqrt(n) (iid)
    double hermite_scale;  // |a_1| / |int J_1 dF| (lrd); 1 / sqrt(1/12) (iid)

    // hermite_scale = 1 is the table scale used for quantile tabulation.
    static Normalization lrd(Method method, int n, const LrdSpec& spec,
                             double hermite_scale = 1.0, bool exact_dn = false);
    static Normalization iid(Method method, int n);
};

struct TestReport {
    Method method;
    Mode mode;
    Sidedness sidedness;
    double statistic = 0.0;
    std::vector<double> raw_path;  // unnormalized, k = 1..n-1
    int argmax_k = 0;              // smallest k attaining the extremum
    double critical_value = 0.0;
    bool reject = false;
};

TestReport test_statistic(const Series& series, Method method, Mode mode,
                          Sidedness sidedness, const Normalization& norm,
                          double critical_value);

// Extremum of a path under the given sidedness with smallest-k tie breaking;
// argmax_k is 1-based.
double path_extremum(const std::vector<double>& path, Sidedness sidedness, int* argmax_k = nullptr);

}  // namespace lrdcp
