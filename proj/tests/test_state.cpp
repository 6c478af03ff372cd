#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "spinladder/automaton.hpp"
#include "spinladder/state.hpp"

using namespace spinladder;

namespace {
double max_amp_diff(const PureState& a, const oracles::Vec& b) {
    double worst = 0.0;
    for (std::uint64_t n = 0; n < a.dim(); ++n)
        worst = std::max(worst, std::abs(a.amps[n] - b(static_cast<Eigen::Index>(n))));
    return worst;
}
}  // namespace

TEST_CASE("plus product state") {
    SECTION("L=1 amplitudes") {
        PureState s = build_plus_product(LatticeLayout(1));
        REQUIRE(s.dim() == 4);
        for (const auto& a : s.amps) {
            REQUIRE(a.real() == Catch::Approx(0.5).margin(1e-15));
            REQUIRE(a.imag() == 0.0);
        }
    }
    SECTION("L=2 amplitudes all 1/4") {
        PureState s = build_plus_product(LatticeLayout(2));
        for (const auto& a : s.amps) REQUIRE(a.real() == Catch::Approx(0.25).margin(1e-15));
    }
    SECTION("unit norm for several L") {
        for (int L : {1, 3, 5, 8})
            REQUIRE(norm_squared(build_plus_product(LatticeLayout(L))) ==
                    Catch::Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("cluster-plus state against dense CZ oracle") {
    SECTION("L=2 periodic: double CZ leaves |11> sign positive") {
        LatticeLayout lay(2);
        PureState s = build_cluster_plus(lay);
        REQUIRE(max_amp_diff(s, oracles::dense_cluster_plus(lay)) < 1e-15);
        // both CZ bonds act on the same A pair: sign flips twice
        for (const auto& a : s.amps) REQUIRE(a.real() == Catch::Approx(0.25).margin(1e-15));
    }
    SECTION("L=3 open: A-pattern |110| picks up the single bond sign") {
        LatticeLayout lay(3, Boundary::open);
        PureState s = build_cluster_plus(lay);
        REQUIRE(max_amp_diff(s, oracles::dense_cluster_plus(lay)) < 1e-15);
        // A bits on qubits 0 and 2 set, qubit 4 clear, B register zeroed
        const std::uint64_t idx = (1u << 0) | (1u << 2);
        REQUIRE(s.amps[idx].real() == Catch::Approx(-1.0 / 8.0).margin(1e-15));
    }
    SECTION("stabilizer expectations are +1 on every site (periodic)") {
        LatticeLayout lay(5);
        PureState s = build_cluster_plus(lay);
        for (int x = 0; x < lay.cells; ++x) {
            auto st = cluster_stabilizer(lay, x);
            const double e = st.phase.real() * expectation_pauli(s, st.string);
            REQUIRE(e == Catch::Approx(1.0).margin(1e-12));
        }
    }
}

TEST_CASE("cluster gate closed form") {
    SECTION("J=0 is the identity") {
        LatticeLayout lay(3);
        std::mt19937_64 eng(5);
        PureState s = random_state(lay, eng);
        PureState t = s;
        apply_cluster_gate(t, 1, 0.0);
        REQUIRE(state_distance(s, t) < 1e-15);
    }
    SECTION("acts as cos J + i sin J ZXZ on |+++> x B") {
        // on the acted A-triple: cos J |+++> + i sin J |-+->
        LatticeLayout lay(3, Boundary::open);
        PureState s = build_plus_product(lay);
        const double J = 0.7;
        apply_cluster_gate(s, 1, J);
        // <+++|psi_A> = cos J, <-+-|psi_A> = i sin J (B register untouched)
        PureState plus = build_plus_product(lay);
        PureState minus = build_plus_product(lay);
        apply_pauli_string(minus, PauliString{{{lay.a_qubit(0), Axis::Z}}});
        apply_pauli_string(minus, PauliString{{{lay.a_qubit(2), Axis::Z}}});
        REQUIRE(std::abs(inner_product(plus, s) - Complex{std::cos(J), 0.0}) < 1e-12);
        REQUIRE(std::abs(inner_product(minus, s) - Complex{0.0, std::sin(J)}) < 1e-12);
    }
    SECTION("J=pi/2 multiplies the cluster state by i") {
        LatticeLayout lay(4);
        PureState s = build_cluster_plus(lay);
        PureState t = s;
        apply_cluster_gate(t, 2, M_PI / 2);
        for (std::uint64_t n = 0; n < s.dim(); ++n)
            REQUIRE(std::abs(t.amps[n] - Complex{0.0, 1.0} * s.amps[n]) < 1e-12);
    }
    SECTION("matches the dense matrix exponential on random states") {
        LatticeLayout lay(3);
        const double J = 0.43;
        std::mt19937_64 eng(11);
        PureState s = random_state(lay, eng);
        oracles::Vec ref = spinladder::dense::expi_hermitian(
                               spinladder::dense::pauli_string_matrix(
                                   lay.qubits(), cluster_stabilizer(lay, 0)),
                               J) *
                           oracles::to_vec(s);
        apply_cluster_gate(s, 0, J);
        REQUIRE(max_amp_diff(s, ref) < 1e-13);
    }
}

TEST_CASE("swap gate closed form") {
    LatticeLayout lay(1);
    SECTION("g=0 identity, g=pi/2 iSWAP, g=pi sign flip") {
        // basis on (A,B): |00>,|10>,|01>,|11> with A = bit 0
        PureState s(lay);
        s.amps = {0.0, 1.0, 0.0, 0.0};  // A=1, B=0
        PureState t = s;
        apply_swap_gate(t, 0, 0.0);
        REQUIRE(state_distance(s, t) < 1e-15);
        apply_swap_gate(t, 0, M_PI / 2);
        REQUIRE(std::abs(t.amps[2] - Complex{0.0, 1.0}) < 1e-15);  // i|01>
        PureState u = s;
        apply_swap_gate(u, 0, M_PI);
        REQUIRE(std::abs(u.amps[1] - Complex{-1.0, 0.0}) < 1e-15);
    }
    SECTION("diagonal states are untouched") {
        PureState s(lay);
        s.amps = {0.6, 0.0, 0.0, 0.8};
        PureState t = s;
        apply_swap_gate(t, 0, 1.234);
        REQUIRE(state_distance(s, t) < 1e-15);
    }
    SECTION("4x4 matrix equals cos^2(g/2) I + sin^2(g/2) ZZ + (i/2) sin g (XX+YY)") {
        namespace d = spinladder::dense;
        const double g = 0.83;
        oracles::Mat m(4, 4);
        for (int col = 0; col < 4; ++col) {
            PureState e(lay);
            e.amps.assign(4, 0.0);
            e.amps[col] = 1.0;
            apply_swap_gate(e, 0, g);
            for (int row = 0; row < 4; ++row) m(row, col) = e.amps[row];
        }
        const oracles::Mat id = oracles::Mat::Identity(4, 4);
        const oracles::Mat zz = d::pauli_string_matrix(2, PauliString{{{0, Axis::Z}, {1, Axis::Z}}});
        const oracles::Mat xx = d::pauli_string_matrix(2, PauliString{{{0, Axis::X}, {1, Axis::X}}});
        const oracles::Mat yy = d::pauli_string_matrix(2, PauliString{{{0, Axis::Y}, {1, Axis::Y}}});
        const double c = std::cos(g / 2), s2 = std::sin(g / 2);
        const oracles::Mat ref = c * c * id + s2 * s2 * zz +
                                 Complex{0.0, 0.5} * std::sin(g) * (xx + yy);
        REQUIRE((m - ref).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("gate unitarity and norm preservation") {
    LatticeLayout lay(3);
    std::mt19937_64 eng(21);
    PureState a = random_state(lay, eng);
    PureState b = random_state(lay, eng);
    const Complex before = inner_product(a, b);
    std::mt19937_64 par(3);
    for (int rep = 0; rep < 20; ++rep) {
        const int x = static_cast<int>(par() % 3);
        const double theta = static_cast<double>(par() % 1000) / 300.0 - 1.5;
        if (par() & 1) {
            apply_cluster_gate(a, x, theta);
            apply_cluster_gate(b, x, theta);
        } else {
            apply_swap_gate(a, x, theta);
            apply_swap_gate(b, x, theta);
        }
    }
    REQUIRE(std::abs(inner_product(a, b) - before) < 1e-12);
    REQUIRE(std::abs(norm_squared(a) - 1.0) < 20 * 1e-12);
}

TEST_CASE("cluster gates commute") {
    LatticeLayout lay(4);
    std::mt19937_64 eng(31);
    PureState s = random_state(lay, eng);
    PureState fwd = s, rev = s;
    for (int x = 0; x < 4; ++x) apply_cluster_gate(fwd, x, 0.37);
    for (int x = 3; x >= 0; --x) apply_cluster_gate(rev, x, 0.37);
    REQUIRE(state_distance(fwd, rev) < 1e-12);
}

TEST_CASE("expectation values") {
    LatticeLayout lay(3);
    PureState plus = build_plus_product(lay);
    REQUIRE(expectation_pauli(plus, PauliString{{{2, Axis::X}}}) ==
            Catch::Approx(1.0).margin(1e-12));
    REQUIRE(expectation_pauli(plus, PauliString{{{2, Axis::Z}}}) ==
            Catch::Approx(0.0).margin(1e-12));
    PureState cl = build_cluster_plus(lay);
    auto st = cluster_stabilizer(lay, 1);
    REQUIRE(st.phase.real() * expectation_pauli(cl, st.string) ==
            Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("inner products") {
    LatticeLayout lay(3);
    std::mt19937_64 eng(41);
    PureState s = random_state(lay, eng);
    REQUIRE(std::abs(inner_product(s, s) - Complex{1.0, 0.0}) < 1e-12);

    PureState e0(lay), e1(lay);
    e0.amps[0] = 1.0;
    e1.amps[1] = 1.0;
    REQUIRE(std::abs(inner_product(e0, e1)) < 1e-15);

    PureState plus = build_plus_product(lay);
    REQUIRE(inner_product(plus, e0).real() == Catch::Approx(0.125).margin(1e-15));

    PureState other(LatticeLayout(2));
    REQUIRE_THROWS_AS(inner_product(s, other), std::invalid_argument);
}
