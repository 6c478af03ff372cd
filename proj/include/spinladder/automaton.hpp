#pragma once

// One automaton time step U(J,g), trajectory evolution with entanglement
// diagnostics, the global symmetry checks, and the continuous-time
// (Trotter) comparison against the dense Hamiltonian.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "spinladder/dense.hpp"
#include "spinladder/entanglement.hpp"
#include "spinladder/state.hpp"

namespace spinladder {

struct AutomatonParams {
    LatticeLayout layout;
    double J = 0.0;  // cluster coupling, radians per step
    double g = 0.0;  // exchange coupling, radians per step

    double gbar() const {
        if (J == 0.0) throw std::domain_error("gbar undefined at J = 0");
        return g / J;
    }
};

// one step: all swap gates, then all cluster gates (Eq. reads right to left;
// gates within each layer commute, so the intra-layer order is irrelevant)
inline void step(PureState& state, const AutomatonParams& p) {
    if (!(state.layout == p.layout)) throw std::invalid_argument("step: layout mismatch");
    for (int x = 0; x < p.layout.cells; ++x) apply_swap_gate(state, x, p.g);
    for (int x = 0; x < p.layout.cells; ++x) apply_cluster_gate(state, x, p.J);
}

// Pauli strings of the two global symmetries
inline PauliString parity_string(const LatticeLayout& lay) {
    PauliString p;
    for (int q = 0; q < lay.qubits(); ++q) p.terms.push_back({q, Axis::X});
    return p;
}

inline PauliString mirror_string(const LatticeLayout& lay) {
    PauliString p;
    for (int x = 0; x < lay.cells; ++x) p.terms.push_back({lay.a_qubit(x), Axis::Z});
    return p;
}

inline PureState random_state(const LatticeLayout& lay, std::mt19937_64& eng) {
    PureState s(lay);
    // Box-Muller on explicit 53-bit uniforms, reproducible across platforms
    auto uniform = [&eng] { return static_cast<double>(eng() >> 11) * 0x1.0p-53; };
    constexpr double tau = 6.283185307179586;
    double nrm = 0.0;
    for (auto& a : s.amps) {
        const double u1 = uniform(), u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        a = Complex{r * std::cos(tau * u2), r * std::sin(tau * u2)};
        nrm += std::norm(a);
    }
    nrm = 1.0 / std::sqrt(nrm);
    for (auto& a : s.amps) a *= nrm;
    return s;
}

inline double state_distance(const PureState& a, const PureState& b) {
    double acc = 0.0;
    for (std::uint64_t n = 0; n < a.dim(); ++n) acc += std::norm(a.amps[n] - b.amps[n]);
    return std::sqrt(acc);
}

// max over random states of || U P psi - P U psi ||, P = prod X_x^A X_x^B
inline double check_parity_symmetry(const AutomatonParams& p, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_parity_symmetry: trials >= 1");
    std::mt19937_64 eng(seed);
    const PauliString par = parity_string(p.layout);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        PureState psi = random_state(p.layout, eng);
        PureState lhs = psi;
        apply_pauli_string(lhs, par);
        step(lhs, p);
        PureState rhs = psi;
        step(rhs, p);
        apply_pauli_string(rhs, par);
        worst = std::max(worst, state_distance(lhs, rhs));
    }
    return worst;
}

// Spectral mirror: conjugating the step by C = prod Z_x^A negates both
// couplings layer by layer, so C U(J,g) C = U(-J,-g) exactly (same layer
// order). U(-J,-g) is isospectral to U(J,g)^dagger; the literal adjoint
// also reverses the layer order and differs from C U C at O(Jg).
inline double check_mirror_symmetry(const AutomatonParams& p, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_mirror_symmetry: trials >= 1");
    std::mt19937_64 eng(seed);
    const PauliString mir = mirror_string(p.layout);
    const AutomatonParams neg{p.layout, -p.J, -p.g};
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        PureState psi = random_state(p.layout, eng);
        PureState lhs = psi;
        apply_pauli_string(lhs, mir);
        step(lhs, p);
        apply_pauli_string(lhs, mir);
        PureState rhs = psi;
        step(rhs, neg);
        worst = std::max(worst, state_distance(lhs, rhs));
    }
    return worst;
}

// dense continuous-time Hamiltonian of the ladder (Eq. (5) form):
// H = -J sum ZXZ^A - (g/2) sum (X^A X^B + Y^A Y^B)
inline dense::Mat hamiltonian_dense(const AutomatonParams& p) {
    const int nq = p.layout.qubits();
    dense::Mat h = dense::Mat::Zero(std::int64_t{1} << nq, std::int64_t{1} << nq);
    for (int x = 0; x < p.layout.cells; ++x) {
        // cluster term, with the same boundary truncation as the gates
        h -= p.J * dense::pauli_string_matrix(nq, cluster_stabilizer(p.layout, x));
        PauliString xx{{{p.layout.a_qubit(x), Axis::X}, {p.layout.b_qubit(x), Axis::X}}};
        PauliString yy{{{p.layout.a_qubit(x), Axis::Y}, {p.layout.b_qubit(x), Axis::Y}}};
        h -= 0.5 * p.g * (dense::pauli_string_matrix(nq, xx) + dense::pauli_string_matrix(nq, yy));
    }
    return h;
}

// || U(sJ, sg) psi - exp(-i s H(J,g)) psi ||, maximized over a fixed set of
// seeded random states; second order in s since the two gate layers do not
// commute. Dense oracle, guarded to small registers.
inline double trotter_error(const AutomatonParams& p, double scale, int states = 5,
                            std::uint64_t seed = 0x7a11edUL, int guard_qubits = 10) {
    if (p.layout.qubits() > guard_qubits)
        throw std::length_error("trotter_error: register exceeds dense-oracle guard");
    const dense::Mat u_cont = dense::expi_hermitian(hamiltonian_dense(p), -scale);
    const AutomatonParams scaled{p.layout, scale * p.J, scale * p.g};
    std::mt19937_64 eng(seed);
    double worst = 0.0;
    for (int t = 0; t < states; ++t) {
        PureState psi = random_state(p.layout, eng);
        PureState stepped = psi;
        step(stepped, scaled);
        Eigen::Map<const dense::Vec> v(psi.amps.data(), static_cast<Eigen::Index>(psi.dim()));
        dense::Vec ref = u_cont * v;
        double acc = 0.0;
        for (std::uint64_t n = 0; n < psi.dim(); ++n)
            acc += std::norm(stepped.amps[n] - ref(static_cast<Eigen::Index>(n)));
        worst = std::max(worst, std::sqrt(acc));
    }
    return worst;
}

enum class InitialState { cluster_plus, plus_plus };

struct Trajectory {
    AutomatonParams params;
    InitialState init = InitialState::cluster_plus;
    int steps = 2000;
    int cadence = 1;          // record every `cadence` steps
    std::uint64_t seed = 0;   // recorded for provenance; the dynamics is deterministic
    int split_sites = 0;      // PT block within A, 0 = L/2 default
    int max_qubits = 24;      // resource guard

    int effective_split() const {
        return split_sites > 0 ? split_sites : params.layout.cells / 2;
    }
};

struct ObservableRecord {
    int t = 0;
    double entropy_half = 0.0;
    double entropy_b = 0.0;
    double log_negativity = 0.0;
    double lambda_min = 0.0;
    std::vector<double> x_site;  // <X_q> for q = 0..2L-1 (even A, odd B)
};

struct ObservableSeries {
    Trajectory trajectory;
    std::vector<ObservableRecord> records;
};

inline PureState initial_state(const LatticeLayout& lay, InitialState init) {
    return init == InitialState::cluster_plus ? build_cluster_plus(lay)
                                              : build_plus_product(lay);
}

inline ObservableRecord measure_observables(const PureState& psi, int t, int split_sites) {
    const LatticeLayout& lay = psi.layout;
    ObservableRecord rec;
    rec.t = t;
    rec.entropy_half = von_neumann_entropy(reduce(psi, half_ladder_qubits(lay)));
    rec.entropy_b = von_neumann_entropy(reduce(psi, b_register_qubits(lay)));
    const DensityMatrix rho_a = reduce(psi, a_register_qubits(lay));
    const SpectrumReport rep = negativity_report(rho_a, lay.cells, split_sites, t);
    rec.log_negativity = rep.log_negativity;
    rec.lambda_min = rep.lambda_min;
    rec.x_site.resize(lay.qubits());
    for (int q = 0; q < lay.qubits(); ++q)
        rec.x_site[q] = expectation_pauli(psi, PauliString{{{q, Axis::X}}});
    return rec;
}

inline ObservableSeries evolve(const Trajectory& traj) {
    if (traj.steps < 0 || traj.cadence < 1)
        throw std::invalid_argument("evolve: bad steps/cadence");
    if (traj.params.layout.qubits() > traj.max_qubits)
        throw std::length_error("evolve: register exceeds resource guard");
    ObservableSeries out;
    out.trajectory = traj;
    PureState psi = initial_state(traj.params.layout, traj.init);
    const int split = traj.effective_split();
    out.records.push_back(measure_observables(psi, 0, split));
    for (int t = 1; t <= traj.steps; ++t) {
        step(psi, traj.params);
        if (t % traj.cadence == 0)
            out.records.push_back(measure_observables(psi, t, split));
    }
    return out;
}

// First record index from which the series is treated as stationary: the
// windowed mean of S (window of `window` records) changes by less than
// rel_tol between consecutive windows. The averaging window used downstream
// is the last quarter of the records, or from saturation onward if that is
// later. Falls back to the last quarter when saturation is never detected.
inline std::size_t stationary_start(const std::vector<double>& entropy_series,
                                    std::size_t window = 50, double rel_tol = 0.01) {
    const std::size_t n = entropy_series.size();
    std::size_t sat = n;
    if (n >= 2 * window) {
        for (std::size_t i = 0; i + 2 * window <= n; ++i) {
            double m1 = 0.0, m2 = 0.0;
            for (std::size_t k = 0; k < window; ++k) {
                m1 += entropy_series[i + k];
                m2 += entropy_series[i + window + k];
            }
            m1 /= static_cast<double>(window);
            m2 /= static_cast<double>(window);
            const double scale = std::max(std::abs(m1), 1e-12);
            if (std::abs(m2 - m1) / scale < rel_tol) {
                sat = i;
                break;
            }
        }
    }
    const std::size_t last_quarter = n - n / 4;
    const std::size_t start = (sat == n) ? last_quarter : std::max(sat, last_quarter);
    return n == 0 ? 0 : std::min(start, n - 1);
}

}  // namespace spinladder
