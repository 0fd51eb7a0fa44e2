#pragma once

#include <vector>

#include "lrdcp/transform.hpp"

// Hermite polynomials (probabilists' convention), the first-order expansion
// coefficients a_1 = E[xi G(xi)] and int J_1 dF, the density integral
// int f^2, and the asymptotic-relative-efficiency formulas
//
//   shift_ratio = |a_1| int f^2 / |int J_1 dF|
//   ARE_lrd     = shift_ratio^{2/D},    b = shift_ratio^{-2/D}
//   ARE_iid     = (2 sigma sqrt(pi))^{-2} = 3/pi   with sigma^2 = 1/12.
//
// int J_1 dF equals -1/(2 sqrt(pi)) for every strictly monotone G with
// continuous F and is kept as an analytic constant (sign follows the
// increasing-G convention; only the magnitude enters the formulas). A signed
// quadrature evaluation is available as a diagnostic.

namespace lrdcp {

// q-th probabilists' Hermite polynomial via the recurrence
// H_{q+1}(x) = x H_q(x) - q H_{q-1}(x); supported for 0 <= q <= 10.
double hermite_poly(int q, double x);

struct QuadratureConfig {
    int gauss_hermite_nodes = 201;
    double refine_tol = 1e-7;   // |a1(N) - a1(2N+1)| must stay below this
    double adaptive_tol = 1e-10;
    double tail_cut = 1e3;      // integrate f^2 in closed form beyond this
};

// Gauss-Hermite rule for the probabilists' weight; weights sum to 1, so
// E[f(xi)] ~ sum w_i f(x_i).
struct GaussHermiteRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermiteRule gauss_hermite(int n);

// Adaptive Simpson bisection to absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

struct HermiteSummary {
    double a1;            // E[xi G(xi)]
    double j1_integral;   // analytic constant -1/(2 sqrt(pi))
    double f_sq_integral; // int f^2(x) dx
    double shift_ratio;   // |a1| f_sq / |j1|
};

HermiteSummary compute_summary(const Transform& t, const QuadratureConfig& cfg = {});

// Signed int J_1 dF by double quadrature (diagnostic, not on the main path):
// J_1(x) = E[xi 1{G(xi) <= x}], integrated against dF via the pushforward.
double j1_integral_by_quadrature(const Transform& t, const QuadratureConfig& cfg = {});

enum class AreRegime { Lrd, Iid };

struct AreResult {
    AreRegime regime;
    double value;  // ARE(W, C)
    double b;      // sample-size inflation factor, value * b = 1
    double d;      // D for the LRD regime, 1 for iid
};

AreResult are_lrd(const HermiteSummary& summary, double d);
AreResult are_iid();

}  // namespace lrdcp
