#pragma once

// Test-only reference implementations, kept deliberately naive and
// index-looped so they stay independent of the library's kernels.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "spinladder/dense.hpp"
#include "spinladder/state.hpp"

namespace oracles {

using spinladder::Complex;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Vec to_vec(const spinladder::PureState& s) {
    return Eigen::Map<const Vec>(s.amps.data(), static_cast<Eigen::Index>(s.amps.size()));
}

inline spinladder::PureState from_vec(const spinladder::LatticeLayout& lay, const Vec& v) {
    spinladder::PureState s(lay);
    for (Eigen::Index i = 0; i < v.size(); ++i) s.amps[i] = v(i);
    return s;
}

// rho[i,j] = sum_e psi[idx(i,e)] conj(psi[idx(j,e)]) with explicit bit packing
inline Mat reduce_naive(const std::vector<Complex>& amps, int nqubits,
                        std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    std::vector<int> env;
    for (int q = 0; q < nqubits; ++q)
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) env.push_back(q);
    const std::uint64_t dk = std::uint64_t{1} << keep.size();
    const std::uint64_t de = std::uint64_t{1} << env.size();
    auto pack = [&](std::uint64_t k, std::uint64_t e) {
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < keep.size(); ++i) n |= ((k >> i) & 1) << keep[i];
        for (std::size_t i = 0; i < env.size(); ++i) n |= ((e >> i) & 1) << env[i];
        return n;
    };
    Mat rho = Mat::Zero(dk, dk);
    for (std::uint64_t i = 0; i < dk; ++i)
        for (std::uint64_t j = 0; j < dk; ++j)
            for (std::uint64_t e = 0; e < de; ++e)
                rho(i, j) += amps[pack(i, e)] * std::conj(amps[pack(j, e)]);
    return rho;
}

// element-by-element partial transpose over the masked subindex bits
inline Mat partial_transpose_naive(const Mat& rho, std::uint64_t mask) {
    const auto d = static_cast<std::uint64_t>(rho.rows());
    Mat out(d, d);
    for (std::uint64_t i = 0; i < d; ++i)
        for (std::uint64_t j = 0; j < d; ++j) {
            const std::uint64_t it = (i & ~mask) | (j & mask);
            const std::uint64_t jt = (j & ~mask) | (i & mask);
            out(i, j) = rho(it, jt);
        }
    return out;
}

// dense one-step unitary built from Kronecker products and matrix
// exponentials only (no statevector kernels)
inline Mat dense_step_unitary(const spinladder::LatticeLayout& lay, double J, double g) {
    namespace d = spinladder::dense;
    using spinladder::Axis;
    using spinladder::PauliString;
    const int nq = lay.qubits();
    const auto dim = std::int64_t{1} << nq;
    Mat u = Mat::Identity(dim, dim);
    for (int x = 0; x < lay.cells; ++x) {
        PauliString xx{{{lay.a_qubit(x), Axis::X}, {lay.b_qubit(x), Axis::X}}};
        PauliString yy{{{lay.a_qubit(x), Axis::Y}, {lay.b_qubit(x), Axis::Y}}};
        const Mat gen =
            0.5 * (d::pauli_string_matrix(nq, xx) + d::pauli_string_matrix(nq, yy));
        u = d::expi_hermitian(gen, g) * u;
    }
    for (int x = 0; x < lay.cells; ++x) {
        const Mat stab = d::pauli_string_matrix(nq, spinladder::cluster_stabilizer(lay, x));
        u = d::expi_hermitian(stab, J) * u;
    }
    return u;
}

// dense cluster-plus construction from explicit CZ matrices
inline Vec dense_cluster_plus(const spinladder::LatticeLayout& lay) {
    const int nq = lay.qubits();
    const auto dim = std::int64_t{1} << nq;
    Vec v = Vec::Constant(dim, std::pow(2.0, -lay.cells));
    const int bonds = lay.boundary == spinladder::Boundary::periodic ? lay.cells
                                                                     : lay.cells - 1;
    for (int b = 0; b < bonds; ++b) {
        const int q1 = lay.a_qubit(b), q2 = lay.a_qubit(b + 1);
        for (std::int64_t n = 0; n < dim; ++n)
            if (((n >> q1) & 1) && ((n >> q2) & 1)) v(n) = -v(n);
    }
    return v;
}

}  // namespace oracles
