/******************************************************************************
 * Copyright 2026 The zeroclass Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * 	http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * @file dfrft.hpp
 * @brief Sampling-type discrete fractional Fourier transform.
 *
 * The order-p transform (rotation angle alpha = p*pi/2) is computed by the
 * classic chirp decomposition
 *
 *     F^p = c_alpha * C_tau * W^H * D_sigma * W * C_tau
 *
 * where C_tau  = diag(exp(-i*pi*tan(alpha/2)*n^2/L)),
 *       D_sigma= diag(exp(-i*pi*sin(alpha)*n^2/L)),
 *       W      = centered unitary DFT, and n runs over centered indices
 *       n - floor(L/2). Signals are treated as samples on the self-dual grid
 *       with spacing sqrt(2*pi/L) (unit time-bandwidth product), which makes
 *       the grid invariant under W and the factorization exactly unitary.
 *
 * Orders are reduced to (-2, 2] first; |p| in (1, 2) is folded through a full
 * (inverse) Fourier transform so that |tan(alpha/2)| <= 1 in the chirps.
 * Two implementations share this decomposition: a fast O(L log L) path using
 * FFTW and a dense O(L^2) reference kernel used as the in-repo oracle.
 *****************************************************************************/
#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "zeroclass/core.hpp"

namespace zeroclass {

namespace detail {

// One forward + one backward plan per length, created lazily. FFTW's planner
// is not thread-safe, so creation and lookup are serialized; execution via
// fftw_execute_dft on caller buffers is safe concurrently. FFTW_UNALIGNED
// lets the plans run on any heap buffer.
struct FftPlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
    fftw_complex* scratch = nullptr;  // planning buffers, kept alive
};

inline const FftPlanPair& fft_plans(int L) {
    static std::mutex mu;
    static std::map<int, FftPlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it == cache.end()) {
        FftPlanPair p;
        p.scratch = fftw_alloc_complex(static_cast<std::size_t>(2 * L));
        fftw_complex* in = p.scratch;
        fftw_complex* out = p.scratch + L;
        p.fwd = fftw_plan_dft_1d(L, in, out, FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        p.bwd = fftw_plan_dft_1d(L, in, out, FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
        it = cache.emplace(L, p).first;
    }
    return it->second;
}

// exp(2*pi*i * num / den) with the phase reduced modulo den before the
// trigonometric call; keeps twiddles accurate for large index products.
inline cplx unit_root(long long num, long long den) {
    const long long r = ((num % den) + den) % den;
    const double ang = 2.0 * std::numbers::pi * static_cast<double>(r) /
                       static_cast<double>(den);
    return {std::cos(ang), std::sin(ang)};
}

}  // namespace detail

// Centered unitary DFT: X[k'] = L^{-1/2} * sum_n exp(-2*pi*i*k'*n'/L) * x[n]
// over centered indices k' = k - floor(L/2), n' = n - floor(L/2). Reduces to
// a standard FFT with pre/post twiddles:
//   X[k] = e^{-2*pi*i*c^2/L} * e^{+2*pi*i*c*k/L} * FFT(e^{+2*pi*i*c*n/L} x)[k]
// with c = floor(L/2); the inverse conjugates every factor.
inline cvec centered_dft(const cvec& v, bool inverse = false) {
    const int L = static_cast<int>(v.size());
    if (L < 1) throw zc_error("centered_dft: empty input");
    const long long c = L / 2;
    const long long sgn = inverse ? -1 : +1;
    const auto& plans = detail::fft_plans(L);

    cvec work(v.size()), out(v.size());
    for (int n = 0; n < L; ++n)
        work[static_cast<std::size_t>(n)] =
            v[static_cast<std::size_t>(n)] * detail::unit_root(sgn * c * n, L);
    fftw_execute_dft(inverse ? plans.bwd : plans.fwd,
                     reinterpret_cast<fftw_complex*>(work.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    const cplx scale =
        detail::unit_root(-sgn * c * c, L) / std::sqrt(static_cast<double>(L));
    for (int k = 0; k < L; ++k)
        out[static_cast<std::size_t>(k)] *=
            scale * detail::unit_root(sgn * c * k, L);
    return out;
}

// Dense matrix of centered_dft, used by the reference kernel.
inline Eigen::MatrixXcd centered_dft_matrix(int L, bool inverse = false) {
    Eigen::MatrixXcd W(L, L);
    const long long c = L / 2;
    const long long sgn = inverse ? +1 : -1;
    const double norm = 1.0 / std::sqrt(static_cast<double>(L));
    for (int k = 0; k < L; ++k)
        for (int n = 0; n < L; ++n)
            W(k, n) = norm * detail::unit_root(sgn * (k - c) * (n - c), L);
    return W;
}

namespace detail {

struct ChirpFactors {
    double tau;       // tan(alpha/2)
    double sina;      // sin(alpha)
    cplx c_alpha;     // unit-modulus amplitude of the decomposition
};

inline ChirpFactors chirp_factors(double q) {
    const double alpha = q * std::numbers::pi / 2.0;
    ChirpFactors f;
    f.tau = std::tan(alpha / 2.0);
    f.sina = std::sin(alpha);
    const double cosa = std::cos(alpha);
    const double s = f.sina > 0.0 ? 1.0 : -1.0;
    // c_alpha = sqrt(1 - i*cot(alpha)) * e^{i*s*pi/4} * sqrt(|sin(alpha)|),
    // regrouped as sqrt(|sin| - i*cos*s) * e^{i*s*pi/4}: stable near alpha=0.
    f.c_alpha = std::sqrt(cplx(std::abs(f.sina), -cosa * s)) *
                std::polar(1.0, s * std::numbers::pi / 4.0);
    return f;
}

// Chirp diag entry exp(-i*pi*coef*(n-c)^2/L).
inline cplx chirp(double coef, int n, int c, int L) {
    const double d = static_cast<double>(n - c);
    const double ang =
        -std::numbers::pi * coef * d * d / static_cast<double>(L);
    return {std::cos(ang), std::sin(ang)};
}

// Core transform for reduced order q in [-1, 1], q bounded away from 0.
inline cvec frft_core(const cvec& v, double q) {
    const int L = static_cast<int>(v.size());
    const int c = L / 2;
    const ChirpFactors f = chirp_factors(q);

    cvec u(v.size());
    for (int n = 0; n < L; ++n)
        u[static_cast<std::size_t>(n)] =
            v[static_cast<std::size_t>(n)] * chirp(f.tau, n, c, L);
    cvec w = centered_dft(u);
    for (int k = 0; k < L; ++k)
        w[static_cast<std::size_t>(k)] *= chirp(f.sina, k, c, L);
    cvec z = centered_dft(w, /*inverse=*/true);
    for (int n = 0; n < L; ++n)
        z[static_cast<std::size_t>(n)] *= f.c_alpha * chirp(f.tau, n, c, L);
    return z;
}

inline Eigen::MatrixXcd frft_core_matrix(int L, double q) {
    const int c = L / 2;
    const ChirpFactors f = chirp_factors(q);
    Eigen::VectorXcd C(L), D(L);
    for (int n = 0; n < L; ++n) {
        C(n) = chirp(f.tau, n, c, L);
        D(n) = chirp(f.sina, n, c, L);
    }
    Eigen::MatrixXcd M = centered_dft_matrix(L, true) * D.asDiagonal() *
                         centered_dft_matrix(L, false);
    return f.c_alpha * (C.asDiagonal() * M * C.asDiagonal());
}

// Order reduced to (-2, 2]; the transform has period 4 in p.
inline double reduce_order(double p) {
    double r = std::fmod(p, 4.0);
    if (r > 2.0) r -= 4.0;
    else if (r <= -2.0) r += 4.0;
    return r;
}

constexpr double kSpecialOrderTol = 1e-9;

}  // namespace detail

// Fast O(L log L) discrete fractional Fourier transform of order p.
// p = 0 is the identity and p = 2 the index reversal, both exact; these
// branches also catch orders within 1e-9 of the singular angles alpha = n*pi
// where the chirp kernel degenerates.
inline cvec dfrft(const cvec& v, double p) {
    const int L = static_cast<int>(v.size());
    if (L < 3) throw zc_error("dfrft: need length >= 3");
    const double r = detail::reduce_order(p);
    if (std::abs(r) < detail::kSpecialOrderTol) return v;
    if (std::abs(std::abs(r) - 2.0) < detail::kSpecialOrderTol)
        return cvec(v.rbegin(), v.rend());
    if (r > 1.0) return detail::frft_core(centered_dft(v), r - 1.0);
    if (r < -1.0) return detail::frft_core(centered_dft(v, true), r + 1.0);
    return detail::frft_core(v, r);
}

// Dense L-by-L transform kernel; dfrft_reference(v, p) = dfrft_kernel(L,p)*v.
// O(L^2) apply (O(L^3) build), the self-contained oracle for the fast path.
inline Eigen::MatrixXcd dfrft_kernel(int L, double p) {
    if (L < 3) throw zc_error("dfrft_kernel: need length >= 3");
    const double r = detail::reduce_order(p);
    if (std::abs(r) < detail::kSpecialOrderTol)
        return Eigen::MatrixXcd::Identity(L, L);
    if (std::abs(std::abs(r) - 2.0) < detail::kSpecialOrderTol) {
        Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(L, L);
        for (int i = 0; i < L; ++i) J(i, L - 1 - i) = 1.0;
        return J;
    }
    if (r > 1.0)
        return detail::frft_core_matrix(L, r - 1.0) *
               centered_dft_matrix(L, false);
    if (r < -1.0)
        return detail::frft_core_matrix(L, r + 1.0) *
               centered_dft_matrix(L, true);
    return detail::frft_core_matrix(L, r);
}

inline cvec dfrft_reference(const cvec& v, double p) {
    const int L = static_cast<int>(v.size());
    Eigen::MatrixXcd K = dfrft_kernel(L, p);
    Eigen::Map<const Eigen::VectorXcd> x(v.data(), L);
    Eigen::VectorXcd y = K * x;
    return cvec(y.data(), y.data() + L);
}

}  // namespace zeroclass
