#pragma once

// Haar-random reference ensembles and the effective-environment-size
// estimator: invert m |-> mean lambda(R_m), R_m = (1/m) sum |r_n><r_n|,
// to find how many random states reproduce a measured witness value.

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "spinladder/entanglement.hpp"

namespace spinladder::random_ref {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr int kMaxQubits = 14;
inline constexpr int kDefaultCapLog2 = 14;

// deterministic per-trial stream: mt19937_64 seeded through splitmix64
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t stream) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// normalized complex Gaussian vector: Haar-distributed on the sphere
inline Vec haar_state(int qubits, std::mt19937_64& eng) {
    if (qubits < 1 || qubits > kMaxQubits)
        throw std::length_error("haar_state: qubits must be in [1, 14]");
    const auto d = std::int64_t{1} << qubits;
    auto uniform = [&eng] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    constexpr double tau = 6.283185307179586;
    Vec v(d);
    for (std::int64_t i = 0; i < d; ++i) {
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        v(i) = Complex{r * std::cos(tau * u2), r * std::sin(tau * u2)};
    }
    v.normalize();
    return v;
}

inline Vec haar_state(int qubits, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    return haar_state(qubits, eng);
}

// R = (1/m) sum_n |r_n><r_n|; rank <= m, trace 1
inline Mat random_mixture(int qubits, int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("random_mixture: m >= 1");
    const auto d = std::int64_t{1} << qubits;
    Mat g(d, m);
    std::mt19937_64 eng(seed);
    for (int n = 0; n < m; ++n) g.col(n) = haar_state(qubits, eng);
    return (g * g.adjoint()) / static_cast<double>(m);
}

struct LambdaStats {
    double mean = 0.0;
    double stderr_mean = 0.0;
    std::vector<double> samples;  // per-trial minima
};

// min negativity eigenvalue of R_m under a PT of the last `split` qubits,
// averaged over independent mixtures
inline LambdaStats lambda_of_mixture(int qubits, int m, int split, int trials,
                                     std::uint64_t seed) {
    if (trials < 8) throw std::invalid_argument("lambda_of_mixture: trials >= 8");
    LambdaStats st;
    st.samples.reserve(trials);
    double acc = 0.0;
    for (int t = 0; t < trials; ++t) {
        const Mat r = random_mixture(qubits, m, mix_seed(seed, t));
        const Eigen::MatrixXcd pt = partial_transpose(r, high_block_mask(qubits, split));
        const double lam = dense::hermitian_eigenvalues(pt)(0);
        st.samples.push_back(lam);
        acc += lam;
    }
    st.mean = acc / trials;
    double var = 0.0;
    for (double s : st.samples) var += (s - st.mean) * (s - st.mean);
    st.stderr_mean = std::sqrt(var / (trials - 1) / trials);
    return st;
}

struct MEstimate {
    double m = 1.0;       // interpolated estimate
    double m_low = 1.0;   // bracketing grid values
    double m_high = 1.0;
    bool at_cap = false;  // target indistinguishable from 0; reported as >= cap
};

// Inverts the monotone map m -> mean lambda(m) on the integer-log2 grid
// 1, 2, 4, ..., 2^cap with linear interpolation in log2 m. Targets within
// two standard errors below the m = 1 floor clamp to m = 1; anything lower
// is outside the achievable range.
inline MEstimate estimate_m(double lambda_target, int qubits, int split, int trials,
                            std::uint64_t seed, int cap_log2 = kDefaultCapLog2) {
    if (lambda_target > 0.0)
        throw std::invalid_argument("estimate_m: target must be nonpositive");
    const LambdaStats floor = lambda_of_mixture(qubits, 1, split, trials, seed);
    if (lambda_target < floor.mean - 2.0 * floor.stderr_mean)
        throw std::domain_error("estimate_m: target below the m = 1 achievable range");
    if (lambda_target <= floor.mean) return {1.0, 1.0, 1.0, false};

    double lo_mean = floor.mean;
    int lo_log = 0;
    for (int lg = 1; lg <= cap_log2; ++lg) {
        const LambdaStats st =
            lambda_of_mixture(qubits, 1 << lg, split, trials, mix_seed(seed, 1000 + lg));
        if (st.mean >= lambda_target) {
            // interpolate in log2 m between the bracketing grid points
            const double f = (lambda_target - lo_mean) / (st.mean - lo_mean);
            MEstimate out;
            out.m_low = std::ldexp(1.0, lo_log);
            out.m_high = std::ldexp(1.0, lg);
            out.m = std::exp2(lo_log + f * (lg - lo_log));
            return out;
        }
        lo_mean = st.mean;
        lo_log = lg;
    }
    MEstimate out;
    out.m = std::ldexp(1.0, cap_log2);
    out.m_low = out.m;
    out.m_high = out.m;
    out.at_cap = true;
    return out;
}

}  // namespace spinladder::random_ref
