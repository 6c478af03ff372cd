#pragma once

// Markov-approximation channel on the cluster register: the Kraus family of
// the one-step map, the coherent all-flip branch, the symmetry grading of
// the jumps, and the Lindblad limit.
//
// The register holds the L cluster sites only (site x = bit x, periodic).
// Exactness: <n_B| U |+_B^L> factorizes into the cluster layer times the
// per-site swap expectation values, so
//   M_n = u0(g) cos^{L-f}(g/2) sin^f(g/2) prod_{x in n+} e^{-i g X_x} Y_x,
//   u0(g) = exp(i J sum ZXZ) * exp(i (g/2) sum X)   (two commuting-sum layers).
// Each layer is exponentiated exactly; collapsing u0 into exp(-i H_0) of the
// effective Hamiltonian H_0 = -J sum ZXZ - (g/2) sum X is a continuum
// statement and breaks the one-step oracle identity at O(Jg).

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spinladder/dense.hpp"
#include "spinladder/layout.hpp"

namespace spinladder::channel {

using Mat = Eigen::MatrixXcd;

inline constexpr int kMaxSites = 6;

// K+ = <+_B|SW|+_B> = cos(g/2) e^{i g X / 2}
// K- = <-_B|SW|+_B> = sin(g/2) e^{-i g X / 2} Y
inline std::pair<Eigen::Matrix2cd, Eigen::Matrix2cd> swap_expectations(double g) {
    const Complex i{0.0, 1.0};
    Eigen::Matrix2cd x = dense::pauli_matrix(Axis::X);
    Eigen::Matrix2cd y = dense::pauli_matrix(Axis::Y);
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd kp =
        std::cos(g / 2) * (std::cos(g / 2) * id + i * std::sin(g / 2) * x);
    Eigen::Matrix2cd km =
        std::sin(g / 2) * (std::cos(g / 2) * id - i * std::sin(g / 2) * x) * y;
    return {kp, km};
}

// ring layout over the A sites only (bit x = site x)
inline LatticeLayout ring_layout(int sites) { return LatticeLayout(sites, Boundary::periodic); }

inline PauliString site_string(int sites, int x, Axis a) {
    (void)sites;
    return PauliString{{{x, a}}};
}

inline ComposedPauli ring_stabilizer(int sites, int x) {
    auto wrap = [sites](int v) { return ((v % sites) + sites) % sites; };
    return compose_pauli(
        {{wrap(x - 1), Axis::Z}, {x, Axis::X}, {wrap(x + 1), Axis::Z}});
}

inline Mat cluster_hamiltonian(int sites) {
    const auto d = std::int64_t{1} << sites;
    Mat h = Mat::Zero(d, d);
    for (int x = 0; x < sites; ++x)
        h += dense::pauli_string_matrix(sites, ring_stabilizer(sites, x));
    return h;
}

inline Mat x_field(int sites) {
    const auto d = std::int64_t{1} << sites;
    Mat h = Mat::Zero(d, d);
    for (int x = 0; x < sites; ++x)
        h += dense::pauli_string_matrix(sites, site_string(sites, x, Axis::X));
    return h;
}

// effective Hamiltonian H_0 = -J sum ZXZ - (g/2) sum X (Lindblad limit and
// diagnostics; not used to build the Kraus family)
inline Mat effective_hamiltonian(int sites, double J, double g) {
    return -J * cluster_hamiltonian(sites) - 0.5 * g * x_field(sites);
}

// u0(g): cluster layer times X-rotation layer, each exact
inline Mat u0_operator(int sites, double J, double g) {
    return dense::expi_hermitian(cluster_hamiltonian(sites), J) *
           dense::expi_hermitian(x_field(sites), 0.5 * g);
}

struct KrausSet {
    int sites = 0;
    double J = 0.0, g = 0.0;
    Mat u0;
    std::vector<Mat> ops;          // M_n, n = 0..2^L-1; bit x of n flips site x
    std::vector<int> flip_count;   // |n+|
};

inline KrausSet build_kraus(int sites, double J, double g) {
    if (sites < 2 || sites > kMaxSites)
        throw std::length_error("build_kraus: sites must be in [2, 6]");
    KrausSet ks;
    ks.sites = sites;
    ks.J = J;
    ks.g = g;
    ks.u0 = u0_operator(sites, J, g);

    // per-site flip factor e^{-i g X_x} Y_x embedded on the register
    std::vector<Mat> site_flip(sites);
    for (int x = 0; x < sites; ++x) {
        Mat f = dense::pauli_string_matrix(sites, PauliString{{{x, Axis::Y}}});
        Mat xr = dense::expi_hermitian(
            dense::pauli_string_matrix(sites, PauliString{{{x, Axis::X}}}), -g);
        site_flip[x] = xr * f;
    }

    const std::uint64_t count = std::uint64_t{1} << sites;
    const double c = std::cos(g / 2), s = std::sin(g / 2);
    ks.ops.reserve(count);
    ks.flip_count.reserve(count);
    for (std::uint64_t n = 0; n < count; ++n) {
        const int f = std::popcount(n);
        Mat m = ks.u0 * std::pow(c, sites - f) * std::pow(s, f);
        for (int x = 0; x < sites; ++x)
            if ((n >> x) & 1) m = m * site_flip[x];
        ks.ops.push_back(std::move(m));
        ks.flip_count.push_back(f);
    }
    return ks;
}

inline double completeness_deviation(const KrausSet& ks) {
    const auto d = std::int64_t{1} << ks.sites;
    Mat acc = Mat::Zero(d, d);
    for (const auto& m : ks.ops) acc += m.adjoint() * m;
    return (acc - Mat::Identity(d, d)).cwiseAbs().maxCoeff();
}

struct ChannelState {
    Mat rho;
    int step_count = 0;
};

inline ChannelState markov_step(const ChannelState& st, const KrausSet& ks) {
    if (st.rho.rows() != (std::int64_t{1} << ks.sites))
        throw std::invalid_argument("markov_step: dimension mismatch");
    Mat out = Mat::Zero(st.rho.rows(), st.rho.cols());
    for (const auto& m : ks.ops) out += m * st.rho * m.adjoint();
    return {std::move(out), st.step_count + 1};
}

struct CoherentStepResult {
    ChannelState state;
    double raw_weight = 0.0;  // sin^{2L}(g/2), the discarded trace weight
};

// the single all-flip term of the Markov equation: unitary conjugation by
// u0(-g) (prod Y) once the trace is restored
inline CoherentStepResult coherent_step(const ChannelState& st, int sites, double J, double g) {
    const double s = std::sin(g / 2);
    if (s == 0.0) throw std::domain_error("coherent_step: weight vanishes at g = 0");
    PauliString ally;
    for (int x = 0; x < sites; ++x) ally.terms.push_back({x, Axis::Y});
    const Mat u = u0_operator(sites, J, -g) * dense::pauli_string_matrix(sites, ally);
    CoherentStepResult res;
    res.raw_weight = std::pow(s * s, sites);
    res.state.rho = u * st.rho * u.adjoint();
    const Complex tr = res.state.rho.trace();
    res.state.rho /= tr.real();
    res.state.step_count = st.step_count + 1;
    return res;
}

enum class SymmetryClass { strong, weak };

// jumps with an even flip count are strong symmetries: P M_n P = (-1)^{|n+|} M_n
// with P = prod X. Verified numerically on the stored operator.
inline SymmetryClass classify_symmetry(const KrausSet& ks, std::uint64_t n, double tol = 1e-12) {
    if (n >= ks.ops.size()) throw std::out_of_range("classify_symmetry: index");
    PauliString allx;
    for (int x = 0; x < ks.sites; ++x) allx.terms.push_back({x, Axis::X});
    const Mat p = dense::pauli_string_matrix(ks.sites, allx);
    const int f = ks.flip_count[n];
    const double sign = (f % 2 == 0) ? 1.0 : -1.0;
    const double dev = (p * ks.ops[n] * p - sign * ks.ops[n]).cwiseAbs().maxCoeff();
    if (dev > tol) throw std::runtime_error("classify_symmetry: sign rule violated");
    return f % 2 == 0 ? SymmetryClass::strong : SymmetryClass::weak;
}

struct LindbladRecord {
    double t = 0.0;
    double trace = 0.0;
    double purity = 0.0;
};

struct LindbladResult {
    std::vector<ChannelState> states;  // recorded at each cadence point
    std::vector<LindbladRecord> records;
    double max_trace_drift = 0.0;
};

// d rho/dt = -i [H_0bar, rho] + (gbar^2/4) sum_x (Y rho Y - rho),
// H_0bar = -sum (ZXZ + (gbar/2) X), units J = hbar = 1. Classical RK4 with
// per-step Hermitization; rejects the step size if the trace drifts.
inline LindbladResult lindblad_evolve(const Mat& rho0, int sites, double gbar, double dt,
                                      double t_final, int cadence = 1,
                                      double trace_tol = 1e-8,
                                      bool include_hamiltonian = true) {
    if (sites < 1 || sites > kMaxSites)
        throw std::length_error("lindblad_evolve: sites must be in [1, 6]");
    if (dt <= 0.0 || dt > 0.01)
        throw std::invalid_argument("lindblad_evolve: need 0 < dt <= 0.01");
    const auto d = std::int64_t{1} << sites;
    if (rho0.rows() != d) throw std::invalid_argument("lindblad_evolve: dimension mismatch");

    Mat h = Mat::Zero(d, d);
    if (include_hamiltonian) {
        if (sites < 2)
            throw std::invalid_argument("lindblad_evolve: cluster term needs sites >= 2");
        h = -1.0 * cluster_hamiltonian(sites) - 0.5 * gbar * x_field(sites);
    }
    std::vector<Mat> ys(sites);
    for (int x = 0; x < sites; ++x)
        ys[x] = dense::pauli_string_matrix(sites, PauliString{{{x, Axis::Y}}});

    const double rate = gbar * gbar / 4.0;
    auto rhs = [&](const Mat& r) {
        const Complex i{0.0, 1.0};
        Mat out = -i * (h * r - r * h);
        for (const auto& y : ys) out += rate * (y * r * y - r);
        return out;
    };

    LindbladResult res;
    Mat rho = rho0;
    const int nsteps = static_cast<int>(std::llround(t_final / dt));
    for (int n = 0; n <= nsteps; ++n) {
        if (n % cadence == 0) {
            res.states.push_back({rho, n});
            res.records.push_back({n * dt, rho.trace().real(),
                                   (rho * rho).trace().real()});
        }
        if (n == nsteps) break;
        const Mat k1 = rhs(rho);
        const Mat k2 = rhs(rho + 0.5 * dt * k1);
        const Mat k3 = rhs(rho + 0.5 * dt * k2);
        const Mat k4 = rhs(rho + dt * k3);
        rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        rho = 0.5 * (rho + rho.adjoint().eval());
        const double drift = std::abs(rho.trace().real() - 1.0);
        res.max_trace_drift = std::max(res.max_trace_drift, drift);
        if (drift > trace_tol)
            throw std::runtime_error("lindblad_evolve: trace drift exceeded bound");
    }
    return res;
}

}  // namespace spinladder::channel
