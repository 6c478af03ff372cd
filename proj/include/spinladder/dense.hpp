#pragma once

// Dense operator construction on small registers (Eigen). Used by the
// continuous-time oracle, the channel module, and verification paths; the
// statevector kernels never touch these.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "spinladder/layout.hpp"

namespace spinladder::dense {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Eigen::Matrix2cd pauli_matrix(Axis a) {
    Eigen::Matrix2cd m;
    switch (a) {
        case Axis::X: m << 0, 1, 1, 0; break;
        case Axis::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Pauli string as a dense operator on an n-qubit register (bit q of the
// basis index is qubit q, little-endian: qubit 0 is the rightmost kron factor).
inline Mat pauli_string_matrix(int nqubits, const PauliString& p, Complex phase = {1.0, 0.0}) {
    p.validate(nqubits);
    std::vector<const Eigen::Matrix2cd*> site(nqubits, nullptr);
    std::vector<Eigen::Matrix2cd> mats;
    mats.reserve(p.terms.size());
    for (const auto& t : p.terms) mats.push_back(pauli_matrix(t.axis));
    for (std::size_t i = 0; i < p.terms.size(); ++i) site[p.terms[i].qubit] = &mats[i];

    Mat out = Mat::Identity(1, 1);
    for (int q = nqubits - 1; q >= 0; --q) {
        if (site[q]) out = kron(out, *site[q]);
        else out = kron(out, Eigen::Matrix2cd::Identity());
    }
    return phase * out;
}

inline Mat pauli_string_matrix(int nqubits, const ComposedPauli& cp) {
    return pauli_string_matrix(nqubits, cp.string, cp.phase);
}

// exp(i * scale * H) for Hermitian H, by spectral decomposition
inline Mat expi_hermitian(const Mat& h, double scale) {
    Eigen::SelfAdjointEigenSolver<Mat> es(h);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("expi_hermitian: eigensolver failed");
    Vec ph(h.rows());
    for (Eigen::Index i = 0; i < h.rows(); ++i)
        ph(i) = std::polar(1.0, scale * es.eigenvalues()(i));
    return es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
}

inline bool is_hermitian(const Mat& m, double tol = 1e-12) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// ascending eigenvalues of a Hermitian matrix
inline Eigen::VectorXd hermitian_eigenvalues(const Mat& m) {
    Eigen::SelfAdjointEigenSolver<Mat> es(m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
    return es.eigenvalues();
}

}  // namespace spinladder::dense
