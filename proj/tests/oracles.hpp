// Independent oracles used to freeze expected values. Everything here is
// deliberately written via a different route than the library code it
// checks (explicit Kronecker products, brute-force sums, numerical
// quadrature).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Complex = std::complex<double>;

inline Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < a.cols(); ++c)
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    return out;
}

// I (x) ... (x) U (x) ... (x) I with U in tensor slot `pos` of `n` qubits.
inline Mat embed1(const Mat& u, int pos, int n) {
    Mat out = Mat::Identity(1, 1);
    for (int i = 0; i < n; ++i)
        out = kron(out, i == pos ? u : Mat::Identity(2, 2));
    return out;
}

inline Mat pauli(char which) {
    Mat m(2, 2);
    switch (which) {
    case 'I': m << 1, 0, 0, 1; break;
    case 'X': m << 0, 1, 1, 0; break;
    case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default:  m << 1, 0, 0, -1; break;
    }
    return m;
}

// Kraus-operator depolarizing channel on tensor slot `pos`.
inline Mat kraus_depolarize(const Mat& rho, int pos, int n, double p) {
    std::vector<std::pair<double, char>> kraus = {
        {1.0 - 0.75 * p, 'I'}, {0.25 * p, 'X'}, {0.25 * p, 'Y'}, {0.25 * p, 'Z'}};
    Mat out = Mat::Zero(rho.rows(), rho.cols());
    for (auto [w, s] : kraus) {
        Mat k = std::sqrt(w) * embed1(pauli(s), pos, n);
        out += k * rho * k.adjoint();
    }
    return out;
}

// Kraus phase-flip channel with flip probability p/2.
inline Mat kraus_dephase(const Mat& rho, int pos, int n, double p) {
    Mat k0 = std::sqrt(1.0 - 0.5 * p) * embed1(pauli('I'), pos, n);
    Mat k1 = std::sqrt(0.5 * p) * embed1(pauli('Z'), pos, n);
    return k0 * rho * k0.adjoint() + k1 * rho * k1.adjoint();
}

// Brute-force partial trace keeping tensor slots `keep` (in order).
inline Mat partial_trace(const Mat& rho, const std::vector<int>& keep, int n) {
    const int dk = 1 << keep.size();
    std::vector<int> traced;
    for (int i = 0; i < n; ++i)
        if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);
    auto build = [&](int kbits, int tbits) {
        int idx = 0;
        for (int slot = 0; slot < n; ++slot) {
            int bit;
            auto kp = std::find(keep.begin(), keep.end(), slot);
            if (kp != keep.end()) {
                int j = static_cast<int>(kp - keep.begin());
                bit = (kbits >> (static_cast<int>(keep.size()) - 1 - j)) & 1;
            } else {
                int j = static_cast<int>(std::find(traced.begin(), traced.end(), slot) -
                                         traced.begin());
                bit = (tbits >> (static_cast<int>(traced.size()) - 1 - j)) & 1;
            }
            idx = (idx << 1) | bit;
        }
        return idx;
    };
    Mat out = Mat::Zero(dk, dk);
    for (int r = 0; r < dk; ++r)
        for (int c = 0; c < dk; ++c)
            for (int t = 0; t < (1 << traced.size()); ++t)
                out(r, c) += rho(build(r, t), build(c, t));
    return out;
}

// Squared magnitude of the mode overlap of two Gaussian wave packets,
// computed by complex trapezoidal quadrature of the spectral amplitudes.
// sigma_w in rad/ps, centers in THz, times in ps.
inline double overlap_sq_quadrature(double nu1_THz, double t1_ps, double nu2_THz,
                                    double t2_ps, double sigma_w) {
    const double pi = std::numbers::pi;
    const double w1 = 2.0 * pi * nu1_THz;
    const double w2 = 2.0 * pi * nu2_THz;
    const double lo = std::min(w1, w2) - 12.0 * sigma_w;
    const double hi = std::max(w1, w2) + 12.0 * sigma_w;
    const int n = 200000;
    const double h = (hi - lo) / n;
    auto amp = [&](double w, double wc, double t) {
        const double norm = std::pow(2.0 * pi * sigma_w * sigma_w, -0.25);
        return norm * std::exp(-(w - wc) * (w - wc) / (4.0 * sigma_w * sigma_w)) *
               std::exp(Complex(0.0, w * t));
    };
    Complex sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double w = lo + i * h;
        const double weight = (i == 0 || i == n) ? 0.5 : 1.0;
        sum += weight * std::conj(amp(w, w1, t1_ps)) * amp(w, w2, t2_ps);
    }
    sum *= h;
    return std::norm(sum);
}

// High-resolution trapezoid of photon spectral density against a filter
// transmission curve over [lo, hi]. The bounds must be chosen so the
// integrand is smooth inside them (split at filter edges by the caller).
template <typename FilterFn>
double filter_quadrature_range(double mu_THz, double fwhm_GHz, double lo, double hi,
                               FilterFn filter) {
    const double sigma = fwhm_GHz * 1e-3 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    const int n = 400000;
    const double h = (hi - lo) / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double nu = lo + i * h;
        const double z = (nu - mu_THz) / sigma;
        const double s = std::exp(-0.5 * z * z) /
                         (sigma * std::sqrt(2.0 * std::numbers::pi));
        sum += ((i == 0 || i == n) ? 0.5 : 1.0) * s * filter(nu);
    }
    return sum * h;
}

// Convenience overload integrating over the photon's +-10 sigma support.
template <typename FilterFn>
double filter_quadrature(double mu_THz, double fwhm_GHz, FilterFn filter) {
    const double sigma = fwhm_GHz * 1e-3 / (2.0 * std::sqrt(2.0 * std::log(2.0)));
    return filter_quadrature_range(mu_THz, fwhm_GHz, mu_THz - 10.0 * sigma,
                                   mu_THz + 10.0 * sigma, filter);
}

// Wootters concurrence of a 2-qubit density matrix.
inline double concurrence(const Mat& rho) {
    Mat yy = kron(pauli('Y'), pauli('Y'));
    Mat r = rho * yy * rho.conjugate() * yy;
    Eigen::ComplexEigenSolver<Mat> es(r);
    std::vector<double> lam;
    for (int i = 0; i < 4; ++i)
        lam.push_back(std::sqrt(std::max(0.0, es.eigenvalues()(i).real())));
    std::sort(lam.rbegin(), lam.rend());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

} // namespace oracle
