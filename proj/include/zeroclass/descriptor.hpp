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
 * @file descriptor.hpp
 * @brief Fractional Fourier shape descriptor of a contour.
 *
 * A contour becomes the complex sequence s(i) = x(i) + j*y(i), is centered
 * on its arithmetic mean, length-normalized to L points by ceiling-index
 * nearest-point resampling (repetition when upsampling, no interpolation),
 * transformed at fractional order p, and reduced to the normalized power
 * spectrum d(i) = |S(i)|^2 / sum |S|^2. The result is exactly invariant to
 * translation (centering) and uniform scaling (linearity + normalization).
 *****************************************************************************/
#pragma once

#include "zeroclass/contour.hpp"
#include "zeroclass/dfrft.hpp"

namespace zeroclass {

constexpr int kDefaultDescriptorLength = 100;
constexpr double kDefaultOrder = 0.9;

// Complex contour sequence shifted so the mean is the origin.
inline cvec center_contour(const Contour& contour) {
    const std::size_t N = contour.size();
    if (N < 3) throw zc_error("center_contour: need at least 3 points");
    double mx = 0.0, my = 0.0;
    for (const auto& p : contour) {
        mx += p.x;
        my += p.y;
    }
    mx /= static_cast<double>(N);
    my /= static_cast<double>(N);
    cvec out(N);
    for (std::size_t i = 0; i < N; ++i)
        out[i] = {contour[i].x - mx, contour[i].y - my};
    return out;
}

// Length normalization: out[i] = in[ceil(i*N/L)] with 1-based indices,
// clamped into [1, N]. Exact integer arithmetic; idempotent when N = L.
inline cvec resample_contour(const cvec& seq, int L) {
    const long long N = static_cast<long long>(seq.size());
    if (N < 3) throw zc_error("resample_contour: need at least 3 points");
    if (L < 3) throw zc_error("resample_contour: need L >= 3");
    cvec out(static_cast<std::size_t>(L));
    for (long long i = 1; i <= L; ++i) {
        long long idx = (i * N + L - 1) / L;  // ceil(i*N/L)
        idx = std::max(1LL, std::min(idx, N));
        out[static_cast<std::size_t>(i - 1)] = seq[static_cast<std::size_t>(idx - 1)];
    }
    return out;
}

// Full descriptor pipeline: center, resample, transform, normalize power.
inline Vec describe_frame(const Contour& contour,
                          int L = kDefaultDescriptorLength,
                          double p = kDefaultOrder) {
    const cvec spectrum = dfrft(resample_contour(center_contour(contour), L), p);
    Vec d(L);
    double total = 0.0;
    for (int i = 0; i < L; ++i) {
        d(i) = std::norm(spectrum[static_cast<std::size_t>(i)]);
        total += d(i);
    }
    if (total <= 0.0)
        throw zc_error("describe_frame: all-zero spectrum");
    d /= total;
    return d;
}

inline Vec describe_mask(const SilhouetteMask& mask,
                         int L = kDefaultDescriptorLength,
                         double p = kDefaultOrder) {
    return describe_frame(trace_contour(mask), L, p);
}

}  // namespace zeroclass
