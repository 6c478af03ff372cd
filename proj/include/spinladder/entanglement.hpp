#pragma once

// Reduced density matrices, entropies, partial transpose, and the negativity
// spectrum witness. Logs are base 2 throughout.
//
// A reduced state on k kept qubits indexes its rows by the kept bits in
// ascending qubit order: bit i of the row index is the i-th kept qubit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "spinladder/dense.hpp"
#include "spinladder/state.hpp"

namespace spinladder {

using DensityMatrix = Eigen::MatrixXcd;

inline constexpr int kDefaultReduceGuard = 14;

// partial trace of |amps><amps| onto `keep` (ascending qubit indices):
// reshape the vector into a (kept x traced) matrix M and form M M^dagger.
inline DensityMatrix reduce(std::span<const Complex> amps, int nqubits,
                            const std::vector<int>& keep,
                            int guard_qubits = kDefaultReduceGuard) {
    if (keep.empty()) throw std::invalid_argument("reduce: keep set empty");
    if (static_cast<int>(keep.size()) >= nqubits)
        throw std::invalid_argument("reduce: keep must be a proper subset");
    if (static_cast<int>(keep.size()) > guard_qubits)
        throw std::length_error("reduce: kept register exceeds size guard");

    std::vector<int> ks = keep;
    std::sort(ks.begin(), ks.end());
    std::uint64_t kmask = 0;
    for (int q : ks) {
        if (q < 0 || q >= nqubits) throw std::out_of_range("reduce: qubit out of range");
        if (kmask & (std::uint64_t{1} << q))
            throw std::invalid_argument("reduce: repeated qubit in keep");
        kmask |= std::uint64_t{1} << q;
    }

    const int nk = static_cast<int>(ks.size());
    const int ne = nqubits - nk;
    Eigen::MatrixXcd m(std::uint64_t{1} << nk, std::uint64_t{1} << ne);
    std::vector<int> env;
    env.reserve(ne);
    for (int q = 0; q < nqubits; ++q)
        if (!(kmask & (std::uint64_t{1} << q))) env.push_back(q);

    for (std::uint64_t n = 0; n < amps.size(); ++n) {
        std::uint64_t ik = 0, ie = 0;
        for (int i = 0; i < nk; ++i) ik |= ((n >> ks[i]) & 1) << i;
        for (int i = 0; i < ne; ++i) ie |= ((n >> env[i]) & 1) << i;
        m(ik, ie) = amps[n];
    }
    return m * m.adjoint();
}

inline DensityMatrix reduce(const PureState& s, const std::vector<int>& keep,
                            int guard_qubits = kDefaultReduceGuard) {
    return reduce(std::span<const Complex>(s.amps), s.layout.qubits(), keep, guard_qubits);
}

// -sum p log2 p over the spectrum; eigenvalues in (-1e-10, 0) are clipped to
// zero, anything below -1e-8 is rejected as unphysical.
inline double von_neumann_entropy(const DensityMatrix& rho) {
    const Eigen::VectorXd w = dense::hermitian_eigenvalues(rho);
    double s = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        const double p = w(i);
        if (p < -1e-8) throw std::domain_error("von_neumann_entropy: negative eigenvalue");
        if (p <= 1e-10) continue;
        s -= p * std::log2(p);
    }
    return s;
}

// transpose the tensor factor selected by `mask` (bits of the row/column
// subindex): rho'[(i,j)] = rho[(j_M i_R),(i_M j_R)]
inline Eigen::MatrixXcd partial_transpose(const Eigen::MatrixXcd& rho, std::uint64_t mask) {
    const auto d = static_cast<std::uint64_t>(rho.rows());
    Eigen::MatrixXcd out(rho.rows(), rho.cols());
    for (std::uint64_t i = 0; i < d; ++i)
        for (std::uint64_t j = 0; j < d; ++j)
            out((i & ~mask) | (j & mask), (j & ~mask) | (i & mask)) = rho(i, j);
    return out;
}

inline std::uint64_t high_block_mask(int nqubits, int block) {
    std::uint64_t mask = 0;
    for (int q = nqubits - block; q < nqubits; ++q) mask |= std::uint64_t{1} << q;
    return mask;
}

// full eigenvalue list of a density matrix, ascending
inline std::vector<double> entanglement_spectrum(const DensityMatrix& rho) {
    const Eigen::VectorXd w = dense::hermitian_eigenvalues(rho);
    return {w.data(), w.data() + w.size()};
}

struct SpectrumReport {
    std::vector<double> eigenvalues;  // of the partial transpose, ascending
    double lambda_min = 0.0;
    double log_negativity = 0.0;      // log2 sum |lambda_n|, clipped at 0
    std::string partition;
    double time = 0.0;
};

// negativity spectrum of rho under partial transposition of the last
// `split` qubits of its register.
inline SpectrumReport negativity_report(const DensityMatrix& rho, int nqubits, int split,
                                        double time = 0.0) {
    if (split <= 0 || split >= nqubits)
        throw std::invalid_argument("negativity_report: split must cut the register");
    const Eigen::MatrixXcd pt = partial_transpose(rho, high_block_mask(nqubits, split));
    const Eigen::VectorXd w = dense::hermitian_eigenvalues(pt);
    SpectrumReport rep;
    rep.eigenvalues.assign(w.data(), w.data() + w.size());
    rep.lambda_min = w(0);
    double abs_sum = 0.0;
    for (Eigen::Index i = 0; i < w.size(); ++i) abs_sum += std::abs(w(i));
    rep.log_negativity = std::max(0.0, std::log2(abs_sum));
    rep.partition = "block:" + std::to_string(nqubits - split) + "|" + std::to_string(split);
    rep.time = time;
    return rep;
}

// qubit keep-lists for the three partitions of the ladder
inline std::vector<int> half_ladder_qubits(const LatticeLayout& lay) {
    if (lay.cells % 2 != 0)
        throw std::invalid_argument("half_ladder_qubits: needs an even cell count");
    std::vector<int> q;
    for (int x = 0; x < lay.cells / 2; ++x) {
        q.push_back(lay.a_qubit(x));
        q.push_back(lay.b_qubit(x));
    }
    return q;
}

inline std::vector<int> a_register_qubits(const LatticeLayout& lay) {
    std::vector<int> q;
    for (int x = 0; x < lay.cells; ++x) q.push_back(lay.a_qubit(x));
    return q;
}

inline std::vector<int> b_register_qubits(const LatticeLayout& lay) {
    std::vector<int> q;
    for (int x = 0; x < lay.cells; ++x) q.push_back(lay.b_qubit(x));
    return q;
}

inline std::vector<int> a_block_qubits(const LatticeLayout& lay, int sites) {
    if (sites <= 0 || sites > lay.cells)
        throw std::invalid_argument("a_block_qubits: bad block size");
    std::vector<int> q;
    for (int x = 0; x < sites; ++x) q.push_back(lay.a_qubit(x));
    return q;
}

}  // namespace spinladder
