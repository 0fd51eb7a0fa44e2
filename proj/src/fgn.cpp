#include "lrdcp/fgn.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>

#include "lrdcp/rng.hpp"

namespace lrdcp {

namespace {

// FFTW plan creation/destruction is not thread-safe; executions on distinct
// plans are.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

constexpr double kEigenvalueFloor = -1e-9;

}  // namespace

double fgn_autocovariance(const LrdSpec& spec, std::int64_t lag) {
    if (lag < 0) throw Error("fgn_autocovariance: lag must be >= 0");
    if (lag == 0) return 1.0;
    const double h2 = 2.0 * spec.hurst;
    const double k = static_cast<double>(lag);
    return 0.5 * (std::pow(k + 1.0, h2) - 2.0 * std::pow(k, h2) + std::pow(k - 1.0, h2));
}

struct FgnSampler::Impl {
    int m = 0;                 // embedding size 2(n-1)
    std::vector<double> amp;   // per-frequency amplitude, k = 0..m/2
    fftw_complex* in = nullptr;
    double* out = nullptr;
    fftw_plan plan = nullptr;

    ~Impl() {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        if (plan) fftw_destroy_plan(plan);
        if (in) fftw_free(in);
        if (out) fftw_free(out);
    }
};

FgnSampler::FgnSampler(int n, LrdSpec spec)
    : n_(n), spec_(spec), impl_(std::make_unique<Impl>()) {
    if (n < 2) throw InvalidLength("generate_fgn: n must be >= 2");
    const int m = 2 * (n - 1);
    impl_->m = m;

    // First row of the circulant: rho(0..n-1) mirrored.
    std::vector<double> row(m);
    for (int k = 0; k < n; ++k) row[k] = fgn_autocovariance(spec, k);
    for (int k = n; k < m; ++k) row[k] = row[m - k];

    // Eigenvalues = real DFT of the (symmetric) row.
    std::vector<double> lambda(m / 2 + 1);
    {
        fftw_complex* spec_out;
        double* spec_in;
        fftw_plan p;
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            spec_in = fftw_alloc_real(m);
            spec_out = fftw_alloc_complex(m / 2 + 1);
            p = fftw_plan_dft_r2c_1d(m, spec_in, spec_out, FFTW_ESTIMATE);
        }
        for (int k = 0; k < m; ++k) spec_in[k] = row[k];
        fftw_execute(p);
        for (int k = 0; k <= m / 2; ++k) lambda[k] = spec_out[k][0];
        {
            std::lock_guard<std::mutex> lock(fftw_planner_mutex());
            fftw_destroy_plan(p);
            fftw_free(spec_in);
            fftw_free(spec_out);
        }
    }

    impl_->amp.resize(m / 2 + 1);
    for (int k = 0; k <= m / 2; ++k) {
        double ev = lambda[k];
        if (ev < 0.0) {
            if (ev < kEigenvalueFloor)
                throw EmbeddingNotPsd("circulant embedding eigenvalue " + std::to_string(ev) +
                                      " below tolerance at frequency " + std::to_string(k));
            ev = 0.0;
        }
        // Interior frequencies appear twice in the spectrum; their real and
        // imaginary Gaussian parts each carry half the eigenvalue mass.
        const bool boundary = (k == 0 || k == m / 2);
        impl_->amp[k] = std::sqrt(ev / (boundary ? m : 2.0 * m));
    }

    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        impl_->in = fftw_alloc_complex(m / 2 + 1);
        impl_->out = fftw_alloc_real(m);
        impl_->plan = fftw_plan_dft_c2r_1d(m, impl_->in, impl_->out, FFTW_ESTIMATE);
    }
}

FgnSampler::~FgnSampler() = default;

void FgnSampler::generate_into(std::uint64_t seed, std::vector<double>& out) {
    const int m = impl_->m;
    const int half = m / 2;
    CounterRng rng(seed);

    impl_->in[0][0] = impl_->amp[0] * rng.next_normal();
    impl_->in[0][1] = 0.0;
    for (int k = 1; k < half; ++k) {
        const double re = rng.next_normal();
        const double im = rng.next_normal();
        impl_->in[k][0] = impl_->amp[k] * re;
        impl_->in[k][1] = impl_->amp[k] * im;
    }
    impl_->in[half][0] = impl_->amp[half] * rng.next_normal();
    impl_->in[half][1] = 0.0;

    fftw_execute(impl_->plan);

    out.assign(impl_->out, impl_->out + n_);
}

NoisePath FgnSampler::generate(std::uint64_t seed) {
    NoisePath path{.values = {}, .spec = spec_, .seed = seed};
    generate_into(seed, path.values);
    return path;
}

NoisePath generate_fgn(int n, LrdSpec spec, std::uint64_t seed) {
    FgnSampler sampler(n, spec);
    return sampler.generate(seed);
}

}  // namespace lrdcp
