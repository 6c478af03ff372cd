#include <catch2/catch_amalgamated.hpp>

#include "spinladder/order.hpp"

using namespace spinladder;

TEST_CASE("string order of reference states") {
    SECTION("open-boundary cluster state: W = 1 exactly") {
        for (int L : {4, 5, 6, 8}) {
            LatticeLayout lay(L, Boundary::open);
            REQUIRE(string_order(build_cluster_plus(lay)) ==
                    Catch::Approx(1.0).margin(1e-10));
        }
    }
    SECTION("plus product: W = 0") {
        LatticeLayout lay(6, Boundary::open);
        REQUIRE(string_order(build_plus_product(lay)) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("L < 4 rejected") {
        LatticeLayout lay(3, Boundary::open);
        REQUIRE_THROWS_AS(string_order(build_plus_product(lay)), std::invalid_argument);
    }
    SECTION("|W| <= 1 on evolved states") {
        LatticeLayout lay(4, Boundary::open);
        PureState psi = build_cluster_plus(lay);
        for (int t = 0; t < 10; ++t) {
            step(psi, {lay, 0.4, 0.7});
            REQUIRE(std::abs(string_order(psi)) <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("two code paths agree: applied string vs diagonal expectation") {
    LatticeLayout lay(5, Boundary::open);
    PureState psi = build_cluster_plus(lay);
    for (int t = 0; t < 6; ++t) {
        const double via_apply = string_order(psi);
        const double sign = (lay.cells % 2 == 0) ? 1.0 : -1.0;
        const double via_expect = sign * expectation_pauli(psi, string_order_operator(lay));
        REQUIRE(via_apply == Catch::Approx(via_expect).margin(1e-12));
        step(psi, {lay, 0.3, 0.5});
    }
}

TEST_CASE("string order trajectory") {
    SECTION("gbar = 0: W stays 1 for all recorded times") {
        Trajectory traj;
        traj.params = {LatticeLayout(4, Boundary::open), 0.37, 0.0};
        traj.steps = 30;
        const auto series = string_order_trajectory(traj);
        REQUIRE(series.w.size() == 31);
        for (double w : series.w) REQUIRE(w == Catch::Approx(1.0).margin(1e-10));
        REQUIRE(series.w_infinity == Catch::Approx(1.0).margin(1e-10));
    }
    SECTION("strong coupling decays towards zero") {
        Trajectory traj;
        traj.params = {LatticeLayout(6, Boundary::open), 0.3, 0.75};  // gbar = 2.5
        traj.steps = 300;
        const auto series = string_order_trajectory(traj);
        REQUIRE(std::abs(series.w_infinity) < 0.15);
        REQUIRE(series.window_start >= series.w.size() * 3 / 4 - 1);
    }
    SECTION("W(0) = 1 for the open cluster start regardless of couplings") {
        Trajectory traj;
        traj.params = {LatticeLayout(5, Boundary::open), 0.2, 0.9};
        traj.steps = 2;
        const auto series = string_order_trajectory(traj);
        REQUIRE(series.w.front() == Catch::Approx(1.0).margin(1e-10));
    }
}
