#pragma once

#include "qgal/rational.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

namespace qgal::lattice {

using cplx = std::complex<double>;

struct LatticeParams {
    double a = 0.1;      // spacing
    int sites = 64;      // N, periodic
    double mass = 1.0;
    double hbar = 1.0;

    double length() const { return a * sites; }
    void validate() const {
        if (a <= 0 || mass <= 0 || hbar <= 0) throw error("lattice: parameters must be positive");
        if (sites < 4) throw error("lattice: need at least 4 sites");
    }
};

struct LatticeState {
    std::vector<cplx> amplitudes;
    LatticeParams params;

    double norm() const {
        double s = 0;
        for (auto& z : amplitudes) s += std::norm(z);
        return std::sqrt(params.a * s);
    }
};

inline double wavenumber(int mode, const LatticeParams& p) {
    return 2.0 * std::numbers::pi * mode / p.length();
}

/// Lattice dispersion omega_a(k) = (hbar/m) (1 - cos ka) / a^2 of the
/// q-Casimir equation with beta = -i m / hbar.
inline double dispersion(int mode, const LatticeParams& p) {
    p.validate();
    if (2 * std::abs(mode) > p.sites) throw error("dispersion: mode out of band");
    double k = wavenumber(mode, p);
    return (p.hbar / p.mass) * (1.0 - std::cos(k * p.a)) / (p.a * p.a);
}

inline double continuum_dispersion(double k, const LatticeParams& p) {
    return p.hbar * k * k / (2.0 * p.mass);
}

namespace detail {

inline std::vector<cplx> dft(const std::vector<cplx>& in, int sign) {
    // direct transform; lattices here are small
    int N = static_cast<int>(in.size());
    std::vector<cplx> out(in.size());
    for (int n = 0; n < N; ++n) {
        cplx s = 0;
        for (int j = 0; j < N; ++j) {
            double ph = sign * 2.0 * std::numbers::pi * n * j / N;
            s += in[j] * std::polar(1.0, ph);
        }
        out[n] = s;
    }
    return out;
}

} // namespace detail

/// Spectral propagator of the reduced Casimir equation
/// dphi/dt = -(1/beta) (1 - cosh(a dx))/a^2 phi: each Fourier mode is
/// multiplied by exp(-gamma_k t / beta), gamma_k = (1 - cos k a)/a^2.
/// beta = -i m/hbar gives the unitary phase exp(-i omega_a(k) t).
inline LatticeState evolve_with_beta(const LatticeState& s, double t, cplx beta) {
    s.params.validate();
    int N = s.params.sites;
    auto modes = detail::dft(s.amplitudes, -1);
    for (int n = 0; n < N; ++n) {
        int m = n <= N / 2 ? n : n - N;  // signed mode index
        double k = wavenumber(m, s.params);
        double gamma = (1.0 - std::cos(k * s.params.a)) / (s.params.a * s.params.a);
        modes[n] *= std::exp(-gamma * t / beta);
    }
    auto back = detail::dft(modes, +1);
    LatticeState out{std::move(back), s.params};
    for (auto& z : out.amplitudes) z /= static_cast<double>(N);
    return out;
}

inline LatticeState evolve(const LatticeState& s, double t) {
    cplx beta(0.0, -s.params.mass / s.params.hbar);
    return evolve_with_beta(s, t, beta);
}

inline double check_unitarity(const LatticeState& s, double t) {
    return std::abs(evolve(s, t).norm() - s.norm());
}

struct DispersionRow {
    double a, omega_a, omega_0, abs_err, ratio;  // ratio <= 0 marks "none"
};

/// For a fixed physical wavenumber k, tabulate omega_a(k) against the
/// continuum value over a list of spacings; the ratio column tracks error
/// decay between consecutive rows.
inline std::vector<DispersionRow> dispersion_study(const std::vector<double>& spacings,
                                                   double k, LatticeParams tmpl) {
    std::vector<DispersionRow> rows;
    double prev_err = 0;
    for (double a : spacings) {
        if (k * a > std::numbers::pi) throw error("dispersion_study: k unresolvable at a");
        LatticeParams p = tmpl;
        p.a = a;
        double wa = (p.hbar / p.mass) * (1.0 - std::cos(k * a)) / (a * a);
        double w0 = continuum_dispersion(k, p);
        double err = std::abs(wa - w0);
        double ratio = rows.empty() || err == 0 ? -1.0 : prev_err / err;
        rows.push_back({a, wa, w0, err, ratio});
        prev_err = err;
    }
    return rows;
}

inline std::string dispersion_csv(const std::vector<DispersionRow>& rows) {
    std::ostringstream os;
    os << "a,omega_a,omega_0,abs_err,ratio\n";
    os.precision(12);
    for (auto& r : rows) {
        os << r.a << "," << r.omega_a << "," << r.omega_0 << "," << r.abs_err << ",";
        if (r.ratio > 0) os << r.ratio;
        os << "\n";
    }
    return os.str();
}

/// Gaussian packet exp(-(x - x0)^2 / (2 sigma^2)) e^{i k x} sampled on the lattice.
inline LatticeState gaussian_packet(const LatticeParams& p, double x0, double sigma,
                                    double k) {
    p.validate();
    LatticeState s{std::vector<cplx>(static_cast<size_t>(p.sites)), p};
    for (int j = 0; j < p.sites; ++j) {
        double x = j * p.a;
        double env = std::exp(-(x - x0) * (x - x0) / (2.0 * sigma * sigma));
        s.amplitudes[static_cast<size_t>(j)] = env * std::polar(1.0, k * x);
    }
    return s;
}

inline LatticeState plane_wave(const LatticeParams& p, int mode) {
    p.validate();
    LatticeState s{std::vector<cplx>(static_cast<size_t>(p.sites)), p};
    double k = wavenumber(mode, p);
    for (int j = 0; j < p.sites; ++j)
        s.amplitudes[static_cast<size_t>(j)] = std::polar(1.0, k * j * p.a);
    return s;
}

} // namespace qgal::lattice
