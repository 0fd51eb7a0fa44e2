#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "lrdcp/errors.hpp"

// Exact synthesis of stationary fractional Gaussian noise by circulant
// embedding of the covariance, so that a sample of length n has covariance
// matrix exactly Toeplitz(rho(0..n-1)) with
//   rho(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
// This satisfies rho(k) ~ H(2H-1) k^{2H-2} = const * k^{-D}, D = 2-2H, and
// makes the partial-sum variance n^{2H} exact.

namespace lrdcp {

struct LrdSpec {
    double hurst;          // [0.5, 1); 0.5 is the white-noise boundary
    int hermite_rank = 1;  // fixed at 1 throughout

    explicit LrdSpec(double h) : hurst(h) {
        if (!(h >= 0.5 && h < 1.0))
            throw Error("LrdSpec: hurst must lie in [0.5, 1)");
    }

    double d() const { return 2.0 - 2.0 * hurst; }
};

struct NoisePath {
    std::vector<double> values;
    LrdSpec spec;
    std::uint64_t seed;
};

double fgn_autocovariance(const LrdSpec& spec, std::int64_t lag);

// One sampler per thread: owns the embedding factors and FFT workspace.
// generate() is a pure function of (n, spec, seed); the eigenvalue
// precomputation is shared across seeds at a fixed n.
class FgnSampler {
  public:
    FgnSampler(int n, LrdSpec spec);
    ~FgnSampler();
    FgnSampler(const FgnSampler&) = delete;
    FgnSampler& operator=(const FgnSampler&) = delete;

    int size() const { return n_; }
    const LrdSpec& spec() const { return spec_; }

    NoisePath generate(std::uint64_t seed);
    void generate_into(std::uint64_t seed, std::vector<double>& out);

  private:
    struct Impl;
    int n_;
    LrdSpec spec_;
    std::unique_ptr<Impl> impl_;
};

// Convenience wrapper constructing a sampler for a single draw.
NoisePath generate_fgn(int n, LrdSpec spec, std::uint64_t seed);

}  // namespace lrdcp
