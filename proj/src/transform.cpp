#include "lrdcp/transform.hpp"

#include <cmath>

#include "lrdcp/errors.hpp"
#include "lrdcp/normal.hpp"

namespace lrdcp {

namespace {

const double kSqrt34 = std::sqrt(0.75);        // sqrt(3/4)
const double kParetoLo = -std::sqrt(1.0 / 3.0);

// Gauss-Legendre 40-point panel quadrature of f over [-12, 12] against the
// normal weight is ample for the moment self-check (tol 1e-6).
double normal_moment(const std::function<double(double)>& f) {
    const int panels = 96;
    const double lo = -12.0, hi = 12.0;
    const double hstep = (hi - lo) / panels;
    // 5-point Gauss-Legendre nodes/weights on [-1,1].
    static const double gx[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                 0.5384693101056831, 0.9061798459386640};
    static const double gw[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                 0.4786286704993665, 0.2369268850561891};
    double acc = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double a = lo + p * hstep;
        const double mid = a + 0.5 * hstep;
        for (int j = 0; j < 5; ++j) {
            const double x = mid + 0.5 * hstep * gx[j];
            acc += 0.5 * hstep * gw[j] * f(x) * normal_pdf(x);
        }
    }
    return acc;
}

}  // namespace

double pareto_density(double x) {
    if (x < kParetoLo) return 0.0;
    const double base = kSqrt34 * x + 1.5;
    return 3.0 * kSqrt34 / (base * base * base * base);
}

Transform Transform::gaussian() {
    Transform t;
    t.kind_ = TransformKind::Gaussian;
    t.name_ = "gaussian";
    t.increasing_ = true;
    t.g_ = [](double x) { return x; };
    t.cdf_ = [](double x) { return normal_cdf(x); };
    t.pdf_ = [](double x) { return normal_pdf(x); };
    return t;
}

Transform Transform::pareto31() {
    Transform t;
    t.kind_ = TransformKind::Pareto31;
    t.name_ = "pareto31";
    t.increasing_ = false;
    t.support_lo_ = kParetoLo;
    t.g_ = [](double x) {
        // Phi underflows below x ~ -38; the clamp keeps G finite there
        // (weights at such nodes are zero to double precision anyway).
        const double u = std::max(normal_cdf(x), 2.2250738585072014e-308);
        return (std::pow(u, -1.0 / 3.0) - 1.5) / kSqrt34;
    };
    t.cdf_ = [](double x) {
        if (x < kParetoLo) return 0.0;
        const double base = kSqrt34 * x + 1.5;
        return 1.0 - 1.0 / (base * base * base);
    };
    t.pdf_ = pareto_density;
    // int_x^inf f^2 = (9 sqrt(3/4) / 7) * (sqrt(3/4) x + 3/2)^{-7}
    t.f_sq_tail_ = [](double x) {
        const double base = kSqrt34 * x + 1.5;
        return 9.0 * kSqrt34 / 7.0 * std::pow(base, -7.0);
    };
    return t;
}

Transform Transform::custom(std::string name, std::function<double(double)> g,
                            std::function<double(double)> cdf,
                            std::function<double(double)> pdf, double support_lo,
                            double support_hi, std::function<double(double)> f_sq_tail,
                            bool increasing) {
    Transform t;
    t.kind_ = TransformKind::Custom;
    t.name_ = std::move(name);
    t.increasing_ = increasing;
    t.support_lo_ = support_lo;
    t.support_hi_ = support_hi;
    t.g_ = std::move(g);
    t.cdf_ = std::move(cdf);
    t.pdf_ = std::move(pdf);
    t.f_sq_tail_ = std::move(f_sq_tail);
    return t;
}

void Transform::verify_moments(double tol) const {
    const double mean = normal_moment([this](double x) { return g_(x); });
    const double second = normal_moment([this](double x) {
        const double v = g_(x);
        return v * v;
    });
    if (std::fabs(mean) > tol || std::fabs(second - 1.0) > tol)
        throw QuadratureNonConvergence("transform '" + name_ + "' moments off: E[G]=" +
                                       std::to_string(mean) + ", E[G^2]=" +
                                       std::to_string(second));
}

Transform transform_by_name(const std::string& name) {
    if (name == "gaussian") return Transform::gaussian();
    if (name == "pareto31") return Transform::pareto31();
    throw Error("unknown transform '" + name + "'");
}

double ChangeSpec::resolve_shift(int n, const LrdSpec& spec) const {
    if (shift.has_value() == shift_constant.has_value())
        throw Error("ChangeSpec: exactly one of shift / shift_constant must be set");
    if (shift) return *shift;
    return *shift_constant * std::pow(static_cast<double>(n), -0.5 * spec.d());
}

std::vector<double> inject_shift(std::vector<double> series, double tau, double h) {
    if (series.empty()) throw InvalidLength("inject_shift: empty series");
    if (!(tau >= 0.0 && tau <= 1.0)) throw Error("inject_shift: tau must lie in [0,1]");
    if (!std::isfinite(h)) throw Error("inject_shift: shift must be finite");
    const auto n = series.size();
    const auto brk = static_cast<std::size_t>(std::floor(static_cast<double>(n) * tau));
    for (std::size_t i = brk; i < n; ++i) series[i] += h;
    return series;
}

std::vector<double> apply_transform(const std::vector<double>& values, const Transform& t) {
    if (t.kind() == TransformKind::Gaussian) return values;
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = t.g(values[i]);
    return out;
}

std::vector<double> apply_transform(const NoisePath& noise, const Transform& t) {
    return apply_transform(noise.values, t);
}

}  // namespace lrdcp
