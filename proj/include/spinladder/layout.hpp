#pragma once

// Ladder geometry and Pauli-string bookkeeping.
//
// The lattice is a chain of L cells, each holding one cluster-chain spin (A)
// and one free spin (B). Qubits are interleaved little-endian: the A site of
// cell x lives on qubit 2x, the B site on qubit 2x+1, and qubit 0 is the
// least significant bit of a basis-state index. Cell-local gates therefore
// touch adjacent bits.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinladder {

using Complex = std::complex<double>;

enum class Boundary { periodic, open };

struct LatticeLayout {
    int cells = 0;
    Boundary boundary = Boundary::periodic;

    LatticeLayout() = default;
    LatticeLayout(int L, Boundary b = Boundary::periodic) : cells(L), boundary(b) {
        if (L <= 0) throw std::invalid_argument("LatticeLayout: cells must be positive");
    }

    int qubits() const { return 2 * cells; }
    std::uint64_t dim() const { return std::uint64_t{1} << qubits(); }

    // cell index modulo L (periodic neighbor arithmetic)
    int wrap(int x) const {
        int m = x % cells;
        return m < 0 ? m + cells : m;
    }
    int a_qubit(int x) const { return 2 * wrap(x); }
    int b_qubit(int x) const { return 2 * wrap(x) + 1; }

    bool operator==(const LatticeLayout& o) const {
        return cells == o.cells && boundary == o.boundary;
    }
};

enum class Axis : std::uint8_t { X, Y, Z };

inline char axis_name(Axis a) {
    switch (a) {
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        default: return 'Z';
    }
}

struct PauliTerm {
    int qubit;
    Axis axis;
};

// A Pauli string with at most one axis per qubit (indices pairwise distinct).
struct PauliString {
    std::vector<PauliTerm> terms;

    bool empty() const { return terms.empty(); }

    void validate(int nqubits) const {
        std::vector<bool> seen(nqubits, false);
        for (const auto& t : terms) {
            if (t.qubit < 0 || t.qubit >= nqubits)
                throw std::out_of_range("PauliString: qubit index out of range");
            if (seen[t.qubit])
                throw std::invalid_argument("PauliString: repeated qubit");
            seen[t.qubit] = true;
        }
    }
};

// Product of (possibly repeated) single-qubit factors, reduced to a proper
// PauliString times a phase in {1, -1, i, -i}. Factors are listed left to
// right as written; the rightmost acts first.
struct ComposedPauli {
    Complex phase{1.0, 0.0};
    PauliString string;
};

inline ComposedPauli compose_pauli(const std::vector<PauliTerm>& factors) {
    // per-qubit running product, multiplying from the right
    struct Slot { Axis axis{}; bool identity = true; };
    int maxq = -1;
    for (const auto& f : factors) maxq = std::max(maxq, f.qubit);
    std::vector<Slot> slots(maxq + 1);
    Complex phase{1.0, 0.0};

    auto mul = [&phase](Axis a, Slot& s) {
        // computes a * current, where current is applied first
        if (s.identity) {
            s.axis = a;
            s.identity = false;
            return;
        }
        if (a == s.axis) {
            s.identity = true;
            return;
        }
        static const Complex plus_i{0.0, 1.0}, minus_i{0.0, -1.0};
        // XY=iZ, YZ=iX, ZX=iY and the reversed orders pick up -i
        auto cyclic = [](Axis l, Axis r) {
            return (l == Axis::X && r == Axis::Y) || (l == Axis::Y && r == Axis::Z) ||
                   (l == Axis::Z && r == Axis::X);
        };
        Axis result = static_cast<Axis>(3 - static_cast<int>(a) - static_cast<int>(s.axis));
        phase *= cyclic(a, s.axis) ? plus_i : minus_i;
        s.axis = result;
        s.identity = false;
    };

    for (auto it = factors.rbegin(); it != factors.rend(); ++it) mul(it->axis, slots[it->qubit]);

    ComposedPauli out;
    out.phase = phase;
    for (int q = 0; q <= maxq; ++q)
        if (!slots[q].identity) out.string.terms.push_back({q, slots[q].axis});
    return out;
}

// The ZXZ cluster stabilizer for cell x. Periodic chains wrap; open chains
// use the truncated edge stabilizers X_0 Z_1 and Z_{L-2} X_{L-1}, which keep
// the open cluster state a fixed point. Coincident neighbors (L <= 2) are
// reduced by Pauli algebra, so the phase can be -1 (L = 1: ZXZ = -X).
inline ComposedPauli cluster_stabilizer(const LatticeLayout& lay, int x) {
    const int L = lay.cells;
    if (lay.boundary == Boundary::open) {
        if (L < 2) throw std::invalid_argument("cluster_stabilizer: open chain needs L >= 2");
        if (x < 0 || x >= L) throw std::out_of_range("cluster_stabilizer: cell out of range");
        if (x == 0) return compose_pauli({{lay.a_qubit(0), Axis::X}, {lay.a_qubit(1), Axis::Z}});
        if (x == L - 1)
            return compose_pauli({{lay.a_qubit(L - 2), Axis::Z}, {lay.a_qubit(L - 1), Axis::X}});
        return compose_pauli({{lay.a_qubit(x - 1), Axis::Z},
                              {lay.a_qubit(x), Axis::X},
                              {lay.a_qubit(x + 1), Axis::Z}});
    }
    return compose_pauli({{lay.a_qubit(x - 1), Axis::Z},
                          {lay.a_qubit(x), Axis::X},
                          {lay.a_qubit(x + 1), Axis::Z}});
}

}  // namespace spinladder
