#pragma once

// Mean-field band structure of the fermionized ladder and the environment
// magnetization self-consistency.
//
// Conventions (units J = 1 unless J is passed explicitly):
//   eps_k   = 2 sqrt((J s - g)^2 s^2 + g^2 + 4 J s^3 g sin^2 k)
//   d_k     = 2 g s - 2 J s^2 e^{2ik}
//   H_MF(k) : 4x4 Bogoliubov-de Gennes block in the spinor
//             (a_k, a_-k^dag, b_k, b_-k^dag), with |d_k|^2 + 4 g^2 = eps_k^2
//             and spectrum {0, 0, +-eps_k} for every (k, J, g, s).
// The diagonal magnetization entries carry 2 g s; the paper's displayed
// matrix prints g s, which is inconsistent with its own block form and
// dispersion (the 2 g s version reproduces both).
//
// Self-consistency: s = I(s, g) - 1 with
//   I(s, g) = (1/2pi) int dk 2 g^2 / (eps_k^2 - 2 g^2),
// whose closed form is gbar^2 / sqrt(R(s)),
//   R(s) = 4 s^8 - 8 gb^2 s^6 + 4 gb^2 (1 + gb^2) s^4 + gb^4 (4 s^2 + 1).
// The printed integral equation selects the negative-s branch; the positive
// branch follows from the (g, s) -> (-g, -s) invariance of the integral.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinladder::meanfield {

using Complex = std::complex<double>;
using Mat4 = Eigen::Matrix4cd;

inline double dispersion(double k, double J, double g, double s_b) {
    const double sk = std::sin(k);
    const double rad = (J * s_b - g) * (J * s_b - g) * s_b * s_b + g * g +
                       4.0 * J * s_b * s_b * s_b * g * sk * sk;
    if (rad < -1e-12) throw std::domain_error("dispersion: negative radicand");
    return 2.0 * std::sqrt(std::max(rad, 0.0));
}

inline Complex d_k(double k, double J, double g, double s_b) {
    return 2.0 * g * s_b - 2.0 * J * s_b * s_b * std::polar(1.0, 2.0 * k);
}

inline Mat4 hmf_matrix(double k, double J, double g, double s_b) {
    const double c2 = std::cos(2.0 * k), s2 = std::sin(2.0 * k);
    const double a = 2.0 * J * s_b * s_b;
    const Complex ig{0.0, g};
    Mat4 h;
    h << -a * c2 + 2.0 * g * s_b, -a * s2, -g, -ig,
         -a * s2, a * c2 - 2.0 * g * s_b, -ig, g,
         -g, std::conj(-ig), 0.0, 0.0,
         std::conj(-ig), g, 0.0, 0.0;
    return h;
}

// max distance of the numerically sorted spectrum from {-eps, 0, 0, +eps}
inline double eigen_check(double k, double J, double g, double s_b) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(hmf_matrix(k, J, g, s_b), Eigen::EigenvaluesOnly);
    const double e = dispersion(k, J, g, s_b);
    const Eigen::Vector4d target{-e, 0.0, 0.0, e};
    return (es.eigenvalues() - target).cwiseAbs().maxCoeff();
}

// quadrature of the self-consistent integral on a uniform grid over (-pi, pi]
// (trapezoid on a periodic integrand); signed g allowed
inline double selfconsistent_rhs_integral(double s_b, double g, int nodes = 1 << 12) {
    const double J = 1.0;
    double acc = 0.0;
    for (int i = 1; i <= nodes; ++i) {
        const double k = -M_PI + 2.0 * M_PI * static_cast<double>(i) / nodes;
        const double e = dispersion(k, J, g, s_b);
        const double den = e * e - 2.0 * g * g;
        if (std::abs(den) < 1e-9)
            throw std::domain_error("selfconsistent_rhs_integral: near-singular integrand");
        acc += 2.0 * g * g / den;
    }
    return acc / nodes - 1.0;
}

inline double selfconsistent_residual_integral(double s_b, double gbar, int nodes = 1 << 12) {
    return selfconsistent_rhs_integral(s_b, gbar, nodes) - s_b;
}

inline double radicand(double s, double gb) {
    const double s2 = s * s, s4 = s2 * s2, g2 = gb * gb;
    return 4.0 * s4 * s4 - 8.0 * g2 * s4 * s2 + 4.0 * g2 * (1.0 + g2) * s4 +
           g2 * g2 * (4.0 * s2 + 1.0);
}

// positive-branch residual: F(s) = s - 1 + gb^2 / sqrt(R(s)); roots in (0, 1]
// pair with the negative branch by s -> -s
inline double branch_residual_plus(double s, double gb) {
    const double r = radicand(s, gb);
    if (r <= 0.0) throw std::domain_error("branch_residual_plus: radicand <= 0");
    return s - 1.0 + gb * gb / std::sqrt(r);
}

enum class Branch { plus, minus, zero };

inline const char* branch_name(Branch b) {
    switch (b) {
        case Branch::plus: return "plus";
        case Branch::minus: return "minus";
        default: return "zero";
    }
}

struct MeanFieldRoot {
    double s_b = 0.0;
    Branch branch = Branch::zero;
};

struct MeanFieldSolution {
    double gbar = 0.0;
    std::vector<MeanFieldRoot> roots;  // all roots found, both signs plus zero
    double selected_s_b = 0.0;         // the stable root (largest |s_b| while it exists)
    Branch selected_branch = Branch::zero;
};

namespace detail {
inline double bisect(const std::function<double(double)>& f, double a, double b, double tol) {
    double fa = f(a);
    for (int it = 0; it < 200 && b - a > tol; ++it) {
        const double m = 0.5 * (a + b), fm = f(m);
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}
}  // namespace detail

// all positive roots of the plus branch, scanned with `brackets` initial
// intervals on (0, 1] and refined by bisection to `tol` in s
inline std::vector<double> positive_branch_roots(double gbar, int brackets = 10000,
                                                 double tol = 1e-12) {
    std::vector<double> roots;
    if (gbar == 0.0) return {1.0};  // F(s) = s - 1 exactly
    auto f = [gbar](double s) { return branch_residual_plus(s, gbar); };
    double prev_s = 1e-9, prev_f = f(prev_s);
    for (int i = 1; i <= brackets; ++i) {
        const double s = static_cast<double>(i) / brackets;
        const double fs = f(s);
        if ((prev_f < 0.0) != (fs < 0.0))
            roots.push_back(detail::bisect(f, prev_s, s, tol));
        else if (fs == 0.0)
            roots.push_back(s);
        prev_s = s;
        prev_f = fs;
    }
    return roots;
}

inline MeanFieldSolution solve_sb(double gbar) {
    if (gbar < 0.0) throw std::invalid_argument("solve_sb: gbar must be nonnegative");
    MeanFieldSolution sol;
    sol.gbar = gbar;
    const std::vector<double> pos = positive_branch_roots(gbar);
    for (double s : pos) sol.roots.push_back({s, Branch::plus});
    for (double s : pos) sol.roots.push_back({-s, Branch::minus});
    sol.roots.push_back({0.0, Branch::zero});
    if (!pos.empty()) {
        sol.selected_s_b = *std::max_element(pos.begin(), pos.end());
        sol.selected_branch = Branch::plus;
    } else {
        sol.selected_s_b = 0.0;
        sol.selected_branch = Branch::zero;
    }
    return sol;
}

// largest gbar for which the polarized branch still has a root; the paper
// reports 0.425 with the endpoint magnetization 0.73
inline double critical_gbar(double tol = 1e-4) {
    double lo = 0.3, hi = 0.6;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (positive_branch_roots(mid, 4000, 1e-10).empty()) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

struct BogoliubovReport {
    double max_residual = 0.0;        // max ||H v - mu v|| over the four pairs
    double max_norm_deviation = 0.0;  // | ||v|| - 1 |
    double cross_sector_overlap = 0.0;  // max |<v_i|v_j>| between distinct eigenvalues
    double zero_pair_overlap = 0.0;     // |<v_01|v_02>| inside the 0 eigenspace
};

// Analytic eigenvectors (the appendix forms). The two zero-eigenvalue
// vectors use d_k; the finite-energy pair associates the first printed
// vector with +eps_k and the second with -eps_k (the printed "-+ order"
// does not match the matrix). The zero pair is normalized but not mutually
// orthogonal: <v01|v02> = -2i g^2 / |d_k|^2.
inline BogoliubovReport verify_bogoliubov(double k, double J, double g, double s_b) {
    const double e = dispersion(k, J, g, s_b);
    if (e <= 1e-12) throw std::domain_error("verify_bogoliubov: degenerate eps_k");
    const Complex d = d_k(k, J, g, s_b);
    const Complex db = std::conj(d);
    const double ad = std::abs(d);
    if (ad < 1e-12 || std::abs(g) < 1e-12)
        throw std::domain_error("verify_bogoliubov: d_k or g too small");
    const Mat4 h = hmf_matrix(k, J, g, s_b);

    using Vec4 = Eigen::Vector4cd;
    const Complex i{0.0, 1.0};
    const double n0 = ad / std::sqrt(ad * ad + 2.0 * g * g);
    Vec4 v01{i * g / db, g / db, 0.0, 1.0};
    Vec4 v02{g / db, -i * g / db, 1.0, 0.0};
    v01 *= n0;
    v02 *= n0;
    const double ne = std::abs(g) / e;
    Vec4 vp{(e + d) / (2.0 * i * g), (e - d) / (2.0 * g), i, 1.0};
    Vec4 vm{-(e - d) / (2.0 * i * g), -(e + d) / (2.0 * g), i, 1.0};
    vp *= ne;
    vm *= ne;

    const Vec4 vecs[4] = {v01, v02, vp, vm};
    const double mus[4] = {0.0, 0.0, e, -e};
    BogoliubovReport rep;
    for (int a = 0; a < 4; ++a) {
        rep.max_residual =
            std::max(rep.max_residual, (h * vecs[a] - mus[a] * vecs[a]).norm() / vecs[a].norm());
        rep.max_norm_deviation =
            std::max(rep.max_norm_deviation, std::abs(vecs[a].norm() - 1.0));
        for (int b = a + 1; b < 4; ++b) {
            const double ov = std::abs(vecs[a].dot(vecs[b]));
            if (mus[a] == mus[b]) rep.zero_pair_overlap = std::max(rep.zero_pair_overlap, ov);
            else rep.cross_sector_overlap = std::max(rep.cross_sector_overlap, ov);
        }
    }
    return rep;
}

struct BandPoint {
    double gbar = 0.0;
    Branch branch = Branch::zero;
    double s_b = 0.0;
    double k = 0.0;
    double epsilon = 0.0;
};

// tabulates eps_k over a (gbar, k) grid for every root branch present
inline std::vector<BandPoint> band_scan(const std::vector<double>& gbars,
                                        const std::vector<double>& ks) {
    std::vector<BandPoint> table;
    table.reserve(gbars.size() * ks.size() * 2);
    for (double gb : gbars) {
        const MeanFieldSolution sol = solve_sb(gb);
        for (const auto& root : sol.roots)
            for (double k : ks)
                table.push_back({gb, root.branch, root.s_b, k, dispersion(k, 1.0, gb, root.s_b)});
    }
    return table;
}

}  // namespace spinladder::meanfield
