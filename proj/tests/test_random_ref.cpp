#include <catch2/catch_amalgamated.hpp>

#include "spinladder/entanglement.hpp"
#include "spinladder/random_ref.hpp"

using namespace spinladder;
namespace rr = spinladder::random_ref;

namespace {
double skewness(const std::vector<double>& xs) {
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= xs.size();
    double m2 = 0.0, m3 = 0.0;
    for (double x : xs) {
        const double d = x - mean;
        m2 += d * d;
        m3 += d * d * d;
    }
    m2 /= xs.size();
    m3 /= xs.size();
    return m3 / std::pow(m2, 1.5);
}
}  // namespace

TEST_CASE("haar states") {
    SECTION("unit norm") {
        for (std::uint64_t seed : {1ull, 2ull, 3ull})
            REQUIRE(rr::haar_state(6, seed).norm() == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("mean |amplitude|^2 is 1/d within Monte Carlo error") {
        const int q = 4, d = 1 << q, draws = 400;
        std::vector<double> means(d, 0.0);
        for (int t = 0; t < draws; ++t) {
            const auto v = rr::haar_state(q, rr::mix_seed(99, t));
            for (int i = 0; i < d; ++i) means[i] += std::norm(v(i));
        }
        // each |amp|^2 averages to 1/d; variance of a single draw is ~1/d^2
        const double sigma = 1.0 / d / std::sqrt(static_cast<double>(draws));
        for (int i = 0; i < d; ++i)
            REQUIRE(std::abs(means[i] / draws - 1.0 / d) < 3.5 * sigma);
    }
    SECTION("Page-type behavior: half-register entropy is near maximal") {
        const int n = 5;  // 2n = 10 qubits
        double acc = 0.0;
        const int draws = 100;
        std::vector<int> keep;
        for (int q = 0; q < n; ++q) keep.push_back(q);
        for (int t = 0; t < draws; ++t) {
            const auto v = rr::haar_state(2 * n, rr::mix_seed(7, t));
            const DensityMatrix rho =
                reduce(std::span<const Complex>(v.data(), static_cast<std::size_t>(v.size())),
                       2 * n, keep);
            acc += von_neumann_entropy(rho);
        }
        REQUIRE(acc / draws > n - 1.0);
    }
    SECTION("reproducibility: identical seeds, identical states") {
        const auto a = rr::haar_state(8, 12345ull);
        const auto b = rr::haar_state(8, 12345ull);
        REQUIRE((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
    SECTION("size guard") { REQUIRE_THROWS_AS(rr::haar_state(15, 1ull), std::length_error); }
}

TEST_CASE("random mixtures") {
    SECTION("trace one, PSD, rank <= m") {
        const auto r = rr::random_mixture(6, 3, 42);
        REQUIRE(r.trace().real() == Catch::Approx(1.0).margin(1e-12));
        const auto w = dense::hermitian_eigenvalues(r);
        REQUIRE(w(0) > -1e-12);
        int rank = 0;
        for (Eigen::Index i = 0; i < w.size(); ++i)
            if (w(i) > 1e-12) ++rank;
        REQUIRE(rank <= 3);
    }
}

TEST_CASE("lambda of mixtures") {
    SECTION("monotone in m beyond three standard errors (10 qubits, half split)") {
        const auto s1 = rr::lambda_of_mixture(10, 1, 5, 8, 11);
        const auto s16 = rr::lambda_of_mixture(10, 16, 5, 8, 11);
        const auto s256 = rr::lambda_of_mixture(10, 256, 5, 8, 11);
        REQUIRE(s1.mean + 3 * (s1.stderr_mean + s16.stderr_mean) < s16.mean);
        REQUIRE(s16.mean + 3 * (s16.stderr_mean + s256.stderr_mean) < s256.mean);
    }
    SECTION("m=1 supports O(1/d)-scale negative bulk") {
        const auto s1 = rr::lambda_of_mixture(8, 1, 4, 8, 21);
        // pure-state PT minima sit well below zero but scale with 1/d_A
        REQUIRE(s1.mean < -0.05);
        REQUIRE(s1.mean > -0.5);
    }
    SECTION("trials guard") {
        REQUIRE_THROWS_AS(rr::lambda_of_mixture(6, 1, 3, 4, 1), std::invalid_argument);
    }
}

TEST_CASE("negativity spectrum shape: MP-like at m=1, Wigner-like at large m") {
    // the asymmetric (Marchenko-Pastur convolution) regime needs a transposed
    // block smaller than half the register; 10 qubits with a 3-qubit block
    const int q = 10, split = 3;
    auto pooled = [&](int m, int trials, std::uint64_t seed) {
        std::vector<double> all;
        for (int t = 0; t < trials; ++t) {
            const auto r = rr::random_mixture(q, m, rr::mix_seed(seed, t));
            const auto pt = partial_transpose(r, high_block_mask(q, split));
            const auto w = dense::hermitian_eigenvalues(pt);
            all.insert(all.end(), w.data(), w.data() + w.size());
        }
        return all;
    };
    REQUIRE(skewness(pooled(1, 8, 31)) > 0.3);
    REQUIRE(std::abs(skewness(pooled(1 << 10, 4, 33))) < 0.1);
}

TEST_CASE("estimate_m inversion") {
    const int q = 8, split = 4, trials = 8;
    const std::uint64_t seed = 77;
    SECTION("target at the m=1 mean returns m ~ 1") {
        const auto floor = rr::lambda_of_mixture(q, 1, split, trials, seed);
        const auto est = rr::estimate_m(floor.mean, q, split, trials, seed);
        REQUIRE(est.m == Catch::Approx(1.0));
    }
    SECTION("target near zero hits the cap") {
        const auto est = rr::estimate_m(-1e-9, q, split, trials, seed, 8);
        REQUIRE(est.at_cap);
        REQUIRE(est.m == Catch::Approx(256.0));
    }
    SECTION("round trip: lambda(m) target recovers m within the bracket") {
        const auto s16 = rr::lambda_of_mixture(q, 16, split, trials, rr::mix_seed(seed, 1016));
        const auto est = rr::estimate_m(s16.mean, q, split, trials, seed);
        REQUIRE(est.m_low <= 16.0);
        REQUIRE(est.m_high >= 4.0);
        REQUIRE(est.m == Catch::Approx(16.0).epsilon(1.0));  // within a factor of two
    }
    SECTION("target below the achievable floor is rejected") {
        REQUIRE_THROWS_AS(rr::estimate_m(-0.9, q, split, trials, seed), std::domain_error);
        REQUIRE_THROWS_AS(rr::estimate_m(0.5, q, split, trials, seed), std::invalid_argument);
    }
}
