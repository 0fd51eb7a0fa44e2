#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lrdcp/fgn.hpp"

// Instantaneous transforms X = G(xi) with their distributional data (CDF F,
// density f), plus level-shift injection for the change-point alternative.
//
// Both built-in transforms are normalized against the standard normal law:
// E[G(xi)] = 0, E[G^2(xi)] = 1, and strictly monotone (which pins the Hermite
// rank of G and of the indicator class at 1). Gaussian is the identity;
// Pareto31 maps to a standardized Pareto(3,1):
//   G(t) = ((Phi(t))^{-1/3} - 3/2) / sqrt(3/4)   (strictly decreasing).

namespace lrdcp {

enum class TransformKind { Gaussian, Pareto31, Custom };

double pareto_density(double x);

class Transform {
  public:
    static Transform gaussian();
    static Transform pareto31();
    // User-supplied (G, F, f) triple. support bounds delimit the density's
    // carrier for quadrature; f_sq_tail, when given, supplies the closed-form
    // value of int_x^inf f^2 for the unbounded part.
    static Transform custom(std::string name,
                            std::function<double(double)> g,
                            std::function<double(double)> cdf,
                            std::function<double(double)> pdf,
                            double support_lo, double support_hi,
                            std::function<double(double)> f_sq_tail = nullptr,
                            bool increasing = true);

    TransformKind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    bool increasing() const { return increasing_; }
    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }

    double g(double t) const { return g_(t); }
    double cdf(double x) const { return cdf_(x); }
    double density(double x) const { return pdf_(x); }
    bool has_f_sq_tail() const { return static_cast<bool>(f_sq_tail_); }
    double f_sq_tail(double x) const { return f_sq_tail_(x); }

    // Quadrature self-check of E[G] = 0, E[G^2] = 1 for xi ~ N(0,1).
    // Throws QuadratureNonConvergence when either moment is off by > tol.
    void verify_moments(double tol = 1e-6) const;

  private:
    Transform() = default;
    TransformKind kind_ = TransformKind::Custom;
    std::string name_;
    bool increasing_ = true;
    double support_lo_ = -std::numeric_limits<double>::infinity();
    double support_hi_ = std::numeric_limits<double>::infinity();
    std::function<double(double)> g_, cdf_, pdf_, f_sq_tail_;
};

Transform transform_by_name(const std::string& name);

struct ChangeSpec {
    double tau = 1.0;                      // relative break position in [0,1]
    std::optional<double> shift;           // absolute level shift h
    std::optional<double> shift_constant;  // c with h = c * n^{-D/2}

    // Resolves the absolute shift at sample size n. Exactly one of shift /
    // shift_constant must be set.
    double resolve_shift(int n, const LrdSpec& spec) const;
};

// Break index convention: values at positions 1..floor(n*tau) are unchanged,
// positions floor(n*tau)+1..n get +h (1-based).
std::vector<double> inject_shift(std::vector<double> series, double tau, double h);

std::vector<double> apply_transform(const NoisePath& noise, const Transform& t);
std::vector<double> apply_transform(const std::vector<double>& values, const Transform& t);

}  // namespace lrdcp
