#include "lrdcp/hermite.hpp"

#include <Eigen/Dense>

#include <cmath>

#include "lrdcp/errors.hpp"
#include "lrdcp/normal.hpp"

namespace lrdcp {

namespace {

const double kJ1Constant = -1.0 / (2.0 * std::sqrt(M_PI));

double gh_integrate(const GaussHermiteRule& rule, const std::function<double(double)>& f) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
    return acc;
}

double simpson_rec(const std::function<double(double)>& f, double a, double fa, double b,
                   double fb, double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    if (depth <= 0)
        throw QuadratureNonConvergence("adaptive Simpson: depth exhausted before tolerance");
    return simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

// int f^2 over the transform's support, closed-form tail beyond cfg.tail_cut.
double f_squared_integral(const Transform& t, const QuadratureConfig& cfg) {
    auto f2 = [&t](double x) {
        const double v = t.density(x);
        return v * v;
    };
    double lo = t.support_lo();
    double hi = t.support_hi();
    // Normal-like densities vanish beyond +-40 at double precision.
    if (std::isinf(lo)) lo = -40.0;
    double tail = 0.0;
    if (hi > cfg.tail_cut) {
        if (t.has_f_sq_tail()) {
            tail = t.f_sq_tail(cfg.tail_cut);
            hi = cfg.tail_cut;
        } else if (std::isinf(hi)) {
            hi = 40.0;  // no closed-form tail supplied; rely on decay
        }
    }
    return adaptive_simpson(f2, lo, hi, cfg.adaptive_tol) + tail;
}

}  // namespace

double hermite_poly(int q, double x) {
    if (q < 0 || q > 10) throw UnsupportedOrder("hermite_poly supports 0 <= q <= 10");
    double prev = 1.0;  // H_0
    if (q == 0) return prev;
    double cur = x;  // H_1
    for (int i = 1; i < q; ++i) {
        const double next = x * cur - static_cast<double>(i) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

GaussHermiteRule gauss_hermite(int n) {
    if (n < 1) throw Error("gauss_hermite: need at least one node");
    // Golub-Welsch nodes: eigenvalues of the Jacobi matrix (zero diagonal,
    // off-diagonal beta_k = sqrt(k)). Weights via the Christoffel function
    // w_i = 1 / sum_{k<n} p_k(x_i)^2 with orthonormal probabilists' Hermite
    // polynomials; the ratio keeps full relative accuracy at extreme nodes,
    // where squared-eigenvector weights are pure rounding noise.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd sub(n - 1 > 0 ? n - 1 : 0);
    for (int k = 1; k < n; ++k) sub[k - 1] = std::sqrt(static_cast<double>(k));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);

    GaussHermiteRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        const double x = solver.eigenvalues()[i];
        rule.nodes[i] = x;
        // p_0 = 1, p_1 = x, p_{k+1} = (x p_k - sqrt(k) p_{k-1}) / sqrt(k+1)
        double prev = 1.0, cur = x, sum = 1.0 + x * x;
        for (int k = 1; k < n - 1; ++k) {
            const double next =
                (x * cur - std::sqrt(static_cast<double>(k)) * prev) /
                std::sqrt(static_cast<double>(k + 1));
            prev = cur;
            cur = next;
            sum += next * next;
        }
        // overflow of the sum means the true weight underflows; zero is exact
        rule.weights[i] = std::isfinite(sum) ? 1.0 / sum : 0.0;
    }
    return rule;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

HermiteSummary compute_summary(const Transform& t, const QuadratureConfig& cfg) {
    auto integrand = [&t](double x) { return x * t.g(x); };
    const double a1 = gh_integrate(gauss_hermite(cfg.gauss_hermite_nodes), integrand);
    const double a1_fine =
        gh_integrate(gauss_hermite(2 * cfg.gauss_hermite_nodes + 1), integrand);
    if (std::fabs(a1 - a1_fine) > cfg.refine_tol)
        throw QuadratureNonConvergence("a1 quadrature did not stabilize: " +
                                       std::to_string(a1) + " vs " + std::to_string(a1_fine));

    // sign of a1 = int phi dG follows the monotonicity direction of G
    if ((t.increasing() && a1_fine <= 0.0) || (!t.increasing() && a1_fine >= 0.0))
        throw QuadratureNonConvergence("a1 sign inconsistent with the transform's "
                                       "monotonicity direction");

    HermiteSummary s;
    s.a1 = a1_fine;
    s.j1_integral = kJ1Constant;
    s.f_sq_integral = f_squared_integral(t, cfg);
    s.shift_ratio = std::fabs(s.a1) * s.f_sq_integral / std::fabs(s.j1_integral);
    return s;
}

double j1_integral_by_quadrature(const Transform& t, const QuadratureConfig& cfg) {
    // int J_1 dF = E[J_1(G(xi))] with J_1(x) = E[eta 1{G(eta) <= x}]; for
    // monotone G the inner integral is +-phi(G^{-1}(x)), so pushing forward
    // through x = G(xi) gives -E[phi(xi)] (increasing) or +E[phi(xi)]
    // (decreasing). Evaluate the double integral directly anyway.
    const GaussHermiteRule outer = gauss_hermite(cfg.gauss_hermite_nodes);
    const GaussHermiteRule inner = gauss_hermite(cfg.gauss_hermite_nodes);
    double acc = 0.0;
    for (std::size_t i = 0; i < outer.nodes.size(); ++i) {
        const double x = t.g(outer.nodes[i]);
        double j1 = 0.0;
        for (std::size_t k = 0; k < inner.nodes.size(); ++k)
            if (t.g(inner.nodes[k]) <= x) j1 += inner.weights[k] * inner.nodes[k];
        acc += outer.weights[i] * j1;
    }
    return acc;
}

AreResult are_lrd(const HermiteSummary& summary, double d) {
    if (!(d > 0.0 && d < 1.0)) throw Error("are_lrd: D must lie in (0,1)");
    const double value = std::pow(summary.shift_ratio, 2.0 / d);
    return AreResult{AreRegime::Lrd, value, 1.0 / value, d};
}

AreResult are_iid() {
    const double value = 3.0 / M_PI;
    return AreResult{AreRegime::Iid, value, 1.0 / value, 1.0};
}

}  // namespace lrdcp
