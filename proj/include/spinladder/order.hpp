#pragma once

// String order parameter of the cluster chain:
//   W(t, L) = (-1)^L <psi| Z_1 Y_2 (prod_{x=3}^{L-2} X_x) Y_{L-1} Z_L |psi>,
// acting on the A sublattice only. Equals 1 on the open-boundary cluster
// state and vanishes in the trivial phase.

#include <cmath>
#include <vector>

#include "spinladder/automaton.hpp"
#include "spinladder/state.hpp"

namespace spinladder {

inline PauliString string_order_operator(const LatticeLayout& lay) {
    const int L = lay.cells;
    if (L < 4) throw std::invalid_argument("string_order_operator: needs L >= 4");
    PauliString p;
    p.terms.push_back({lay.a_qubit(0), Axis::Z});
    p.terms.push_back({lay.a_qubit(1), Axis::Y});
    for (int x = 2; x <= L - 3; ++x) p.terms.push_back({lay.a_qubit(x), Axis::X});
    p.terms.push_back({lay.a_qubit(L - 2), Axis::Y});
    p.terms.push_back({lay.a_qubit(L - 1), Axis::Z});
    return p;
}

// evaluated by applying the string and taking the overlap, which keeps this
// an independent code path from expectation_pauli
inline double string_order(const PureState& psi) {
    const int L = psi.layout.cells;
    PureState acted = psi;
    apply_pauli_string(acted, string_order_operator(psi.layout));
    const double sign = (L % 2 == 0) ? 1.0 : -1.0;
    return sign * inner_product(psi, acted).real();
}

struct StringOrderSeries {
    Trajectory trajectory;
    std::vector<int> times;
    std::vector<double> w;
    double w_infinity = 0.0;
    std::size_t window_start = 0;  // record index where the averaging window begins
};

// evolves the trajectory and records W at each cadence point; W_inf is the
// mean over the stationary window (shared definition with the entropy-based
// saturation detector)
inline StringOrderSeries string_order_trajectory(const Trajectory& traj) {
    if (traj.params.layout.qubits() > traj.max_qubits)
        throw std::length_error("string_order_trajectory: register exceeds resource guard");
    StringOrderSeries out;
    out.trajectory = traj;
    PureState psi = initial_state(traj.params.layout, traj.init);
    std::vector<double> entropy_series;
    out.times.push_back(0);
    out.w.push_back(string_order(psi));
    entropy_series.push_back(von_neumann_entropy(reduce(psi, half_ladder_qubits(psi.layout))));
    for (int t = 1; t <= traj.steps; ++t) {
        step(psi, traj.params);
        if (t % traj.cadence == 0) {
            out.times.push_back(t);
            out.w.push_back(string_order(psi));
            entropy_series.push_back(
                von_neumann_entropy(reduce(psi, half_ladder_qubits(psi.layout))));
        }
    }
    out.window_start = stationary_start(entropy_series);
    double acc = 0.0;
    for (std::size_t i = out.window_start; i < out.w.size(); ++i) acc += out.w[i];
    out.w_infinity = acc / static_cast<double>(out.w.size() - out.window_start);
    return out;
}

}  // namespace spinladder
