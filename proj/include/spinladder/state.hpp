#pragma once

// Statevector of the 2L-qubit ladder with closed-form kernels for the two
// automaton gates, CZ state preparation, and Pauli-string expectations.
//
// Every Pauli string P acts on a basis state as P|n> = c(n)|n ^ xmask| with
// c(n) = i^{#Y} (-1)^{popcount(n & sign_mask)}, which is all the kernels
// below need. Gates update amplitude pairs in place; there is no dense
// matrix application in the hot path.

#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "spinladder/layout.hpp"

namespace spinladder {

struct PureState {
    LatticeLayout layout;
    std::vector<Complex> amps;

    explicit PureState(const LatticeLayout& lay)
        : layout(lay), amps(lay.dim(), Complex{0.0, 0.0}) {}

    std::uint64_t dim() const { return amps.size(); }
};

// masks describing one Pauli string on the full register
struct PauliMasks {
    std::uint64_t flip = 0;   // qubits carrying X or Y
    std::uint64_t sign = 0;   // qubits carrying Y or Z
    int y_count = 0;

    static PauliMasks of(const PauliString& p) {
        PauliMasks m;
        for (const auto& t : p.terms) {
            const std::uint64_t bit = std::uint64_t{1} << t.qubit;
            if (t.axis != Axis::Z) m.flip |= bit;
            if (t.axis != Axis::X) m.sign |= bit;
            if (t.axis == Axis::Y) ++m.y_count;
        }
        return m;
    }

    // phase c(n) of P|n> = c(n)|n ^ flip>
    Complex phase(std::uint64_t n) const {
        static const Complex ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        int k = y_count & 3;
        if (std::popcount(n & sign) & 1) k = (k + 2) & 3;
        return ipow[k];
    }
};

inline double norm_squared(const PureState& s) {
    double acc = 0.0;
    for (const auto& a : s.amps) acc += std::norm(a);
    return acc;
}

// |+>^{2L}: every amplitude 2^{-L}
inline PureState build_plus_product(const LatticeLayout& lay) {
    PureState s(lay);
    const double amp = std::ldexp(1.0, -lay.cells);
    for (auto& a : s.amps) a = amp;
    return s;
}

// CZ = diag(1,1,1,-1) between two qubits, in place
inline void apply_cz(PureState& s, int qa, int qb) {
    const std::uint64_t ma = std::uint64_t{1} << qa, mb = std::uint64_t{1} << qb;
    const std::uint64_t both = ma | mb;
    for (std::uint64_t n = 0; n < s.dim(); ++n)
        if ((n & both) == both) s.amps[n] = -s.amps[n];
}

// cluster state on the A register, |+>^L on B. Periodic chains apply CZ on
// all L bonds, open chains on the L-1 interior bonds.
inline PureState build_cluster_plus(const LatticeLayout& lay) {
    PureState s = build_plus_product(lay);
    const int bonds = lay.boundary == Boundary::periodic ? lay.cells : lay.cells - 1;
    for (int x = 0; x < bonds; ++x) apply_cz(s, lay.a_qubit(x), lay.a_qubit(x + 1));
    return s;
}

// exp(i * theta * P) for a Pauli string with real sign in {+1,-1}
// (P^2 = I, so the exponential is cos(theta) I + i sin(theta) sign P).
inline void apply_pauli_exponential(PureState& s, double theta, const ComposedPauli& cp) {
    if (std::abs(cp.phase.imag()) > 1e-15)
        throw std::invalid_argument("apply_pauli_exponential: phase must be real");
    const double th = theta * cp.phase.real();
    const Complex c{std::cos(th), 0.0}, is{0.0, std::sin(th)};
    const PauliMasks m = PauliMasks::of(cp.string);

    if (m.flip == 0) {
        // diagonal string: amp *= exp(i th * (+-1))
        const Complex ep = c + is, em = c - is;
        for (std::uint64_t n = 0; n < s.dim(); ++n)
            s.amps[n] *= (std::popcount(n & m.sign) & 1) ? em : ep;
        return;
    }

    const std::uint64_t pivot = m.flip & (~m.flip + 1);  // lowest flip bit
    const std::uint64_t lo = pivot - 1;
    const std::uint64_t half = s.dim() >> 1;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t n = ((i & ~lo) << 1) | (i & lo);  // bit at pivot clear
        const std::uint64_t p = n ^ m.flip;
        const Complex cn = m.phase(n), cpph = m.phase(p);
        const Complex an = s.amps[n], ap = s.amps[p];
        s.amps[n] = c * an + is * cpph * ap;  // <n|P|p> = c(p)
        s.amps[p] = c * ap + is * cn * an;
    }
}

// cluster gate C_A(J,x) = exp(i J Z_{x-1} X_x Z_{x+1}) on the A register
inline void apply_cluster_gate(PureState& s, int x, double J) {
    if (s.layout.boundary == Boundary::open && (x < 0 || x >= s.layout.cells))
        throw std::out_of_range("apply_cluster_gate: cell out of range");
    apply_pauli_exponential(s, J, cluster_stabilizer(s.layout, x));
}

// SW_AB(g,x) = exp(i g (XX + YY)/2) on the cell pair (A_x, B_x):
// identity on |00>,|11>; rotation by g in the span of |01>,|10>.
inline void apply_swap_gate(PureState& s, int x, double g) {
    const int qa = s.layout.a_qubit(x), qb = s.layout.b_qubit(x);
    const std::uint64_t ma = std::uint64_t{1} << qa, mb = std::uint64_t{1} << qb;
    const Complex c{std::cos(g), 0.0}, is{0.0, std::sin(g)};
    // enumerate indices with A bit set, B bit clear; partner swaps the two
    const std::uint64_t quarter = s.dim() >> 2;
    const std::uint64_t lo = ma - 1;              // qb = qa + 1
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t n10 = ((i & ~lo) << 2) | (i & lo) | ma;
        const std::uint64_t n01 = (n10 ^ ma) | mb;
        const Complex a10 = s.amps[n10], a01 = s.amps[n01];
        s.amps[n10] = c * a10 + is * a01;
        s.amps[n01] = c * a01 + is * a10;
    }
}

// P|psi> in place
inline void apply_pauli_string(PureState& s, const PauliString& p) {
    p.validate(s.layout.qubits());
    const PauliMasks m = PauliMasks::of(p);
    if (m.flip == 0) {
        for (std::uint64_t n = 0; n < s.dim(); ++n) s.amps[n] *= m.phase(n);
        return;
    }
    const std::uint64_t pivot = m.flip & (~m.flip + 1);
    const std::uint64_t lo = pivot - 1;
    const std::uint64_t half = s.dim() >> 1;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t n = ((i & ~lo) << 1) | (i & lo);
        const std::uint64_t p2 = n ^ m.flip;
        const Complex an = s.amps[n], ap = s.amps[p2];
        s.amps[n] = m.phase(p2) * ap;
        s.amps[p2] = m.phase(n) * an;
    }
}

inline Complex inner_product(const PureState& a, const PureState& b) {
    if (!(a.layout == b.layout))
        throw std::invalid_argument("inner_product: layout mismatch");
    Complex acc{0.0, 0.0};
    for (std::uint64_t n = 0; n < a.dim(); ++n)
        acc += std::conj(a.amps[n]) * b.amps[n];
    return acc;
}

// <psi|P|psi>, real for any Hermitian Pauli string; single pass, serial
// accumulation order so results are reproducible bit for bit.
inline double expectation_pauli(const PureState& s, const PauliString& p) {
    p.validate(s.layout.qubits());
    const PauliMasks m = PauliMasks::of(p);
    Complex acc{0.0, 0.0};
    for (std::uint64_t n = 0; n < s.dim(); ++n) {
        const std::uint64_t q = n ^ m.flip;
        acc += std::conj(s.amps[n]) * m.phase(q) * s.amps[q];
    }
    return acc.real();
}

}  // namespace spinladder
