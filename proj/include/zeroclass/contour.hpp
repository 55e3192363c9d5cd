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
 * @file contour.hpp
 * @brief Binary silhouette masks and Moore-neighbor boundary tracing.
 *
 * trace_contour returns the closed outer boundary of the largest
 * 8-connected foreground component, walked clockwise from the topmost
 * (then leftmost) boundary pixel. Termination uses Jacob's criterion
 * (re-entering the start pixel from the original backtrack direction);
 * a repeat of any (pixel, backtrack) state is detected as a fallback so
 * that pathological thin shapes cannot loop forever, in which case the
 * closed cycle between the repeated states is returned. Interior holes
 * are ignored by construction: the walk never leaves the outer boundary.
 *****************************************************************************/
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>

#include "zeroclass/core.hpp"

namespace zeroclass {

struct SilhouetteMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // row-major, nonzero = foreground

    SilhouetteMask() = default;
    SilhouetteMask(int w, int h)
        : width(w), height(h),
          bits(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0) {
        if (w < 1 || h < 1) throw zc_error("SilhouetteMask: empty dimensions");
    }

    std::uint8_t& at(int x, int y) {
        return bits[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                    static_cast<std::size_t>(x)];
    }
    std::uint8_t at(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                    static_cast<std::size_t>(x)];
    }
    bool inside(int x, int y) const {
        return x >= 0 && x < width && y >= 0 && y < height;
    }
    bool foreground(int x, int y) const { return inside(x, y) && at(x, y) != 0; }

    bool operator==(const SilhouetteMask& o) const {
        return width == o.width && height == o.height && bits == o.bits;
    }
};

struct ContourPoint {
    double x = 0.0;
    double y = 0.0;
};

using Contour = std::vector<ContourPoint>;

namespace detail {

// 8-neighborhood in clockwise order starting north (image y grows downward).
inline constexpr int kNbrX[8] = {0, 1, 1, 1, 0, -1, -1, -1};
inline constexpr int kNbrY[8] = {-1, -1, 0, 1, 1, 1, 0, -1};

inline int nbr_index(int dx, int dy) {
    for (int i = 0; i < 8; ++i)
        if (kNbrX[i] == dx && kNbrY[i] == dy) return i;
    throw zc_error("nbr_index: not an 8-neighbor offset");
}

}  // namespace detail

// Mask containing only the largest 8-connected foreground component.
// Components are discovered in row-major scan order; on a size tie the
// first-found component wins, which keeps the choice deterministic.
inline SilhouetteMask largest_component(const SilhouetteMask& mask) {
    const int W = mask.width, H = mask.height;
    std::vector<std::int32_t> label(
        static_cast<std::size_t>(W) * static_cast<std::size_t>(H), -1);
    auto lab = [&](int x, int y) -> std::int32_t& {
        return label[static_cast<std::size_t>(y) * static_cast<std::size_t>(W) +
                     static_cast<std::size_t>(x)];
    };
    int best_label = -1;
    std::size_t best_size = 0;
    int next = 0;
    std::vector<std::pair<int, int>> stack;
    for (int y = 0; y < H; ++y) {
        for (int x = 0; x < W; ++x) {
            if (!mask.foreground(x, y) || lab(x, y) >= 0) continue;
            std::size_t size = 0;
            stack.assign(1, {x, y});
            lab(x, y) = next;
            while (!stack.empty()) {
                auto [px, py] = stack.back();
                stack.pop_back();
                ++size;
                for (int i = 0; i < 8; ++i) {
                    const int nx = px + detail::kNbrX[i];
                    const int ny = py + detail::kNbrY[i];
                    if (mask.foreground(nx, ny) && lab(nx, ny) < 0) {
                        lab(nx, ny) = next;
                        stack.push_back({nx, ny});
                    }
                }
            }
            if (size > best_size) {
                best_size = size;
                best_label = next;
            }
            ++next;
        }
    }
    if (best_label < 0) throw zc_error("largest_component: no foreground pixels");
    SilhouetteMask out(W, H);
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            if (mask.foreground(x, y) && lab(x, y) == best_label) out.at(x, y) = 1;
    return out;
}

inline Contour trace_contour(const SilhouetteMask& mask) {
    if (mask.width < 1 || mask.height < 1)
        throw zc_error("trace_contour: empty mask");
    const SilhouetteMask comp = largest_component(mask);

    // Topmost then leftmost foreground pixel; its north neighbor is
    // guaranteed background within the component, the initial backtrack.
    int sx = -1, sy = -1;
    for (int y = 0; y < comp.height && sx < 0; ++y)
        for (int x = 0; x < comp.width; ++x)
            if (comp.at(x, y)) { sx = x; sy = y; break; }

    using State = std::pair<std::pair<int, int>, std::pair<int, int>>;
    const std::pair<int, int> start{sx, sy};
    const std::pair<int, int> back0{sx, sy - 1};

    std::vector<std::pair<int, int>> pixels{start};
    std::vector<State> states{{start, back0}};
    std::map<State, std::size_t> first_seen{{states[0], 0}};

    std::pair<int, int> cur = start;
    std::pair<int, int> back = back0;
    while (true) {
        const int bi = detail::nbr_index(back.first - cur.first,
                                         back.second - cur.second);
        int found = -1;
        for (int k = 1; k <= 8; ++k) {
            const int i = (bi + k) % 8;
            const int nx = cur.first + detail::kNbrX[i];
            const int ny = cur.second + detail::kNbrY[i];
            if (comp.foreground(nx, ny)) { found = k; break; }
        }
        if (found < 0) break;  // isolated pixel, contour stays {start}
        const int i = (bi + found) % 8;
        const int j = (bi + found - 1) % 8;  // neighbor scanned just before
        back = {cur.first + detail::kNbrX[j], cur.second + detail::kNbrY[j]};
        cur = {cur.first + detail::kNbrX[i], cur.second + detail::kNbrY[i]};
        if (cur == start && back == back0) break;  // Jacob's criterion
        const State st{cur, back};
        auto it = first_seen.find(st);
        if (it != first_seen.end()) {
            // State repeated without meeting Jacob's criterion: the walk from
            // the first occurrence onward is the periodic boundary cycle.
            std::vector<std::pair<int, int>> cyc;
            cyc.reserve(states.size() - it->second);
            for (std::size_t q = it->second; q < states.size(); ++q)
                cyc.push_back(states[q].first);
            auto at_start = std::find(cyc.begin(), cyc.end(), start);
            if (at_start != cyc.end())
                std::rotate(cyc.begin(), at_start, cyc.end());
            pixels.clear();
            for (const auto& p : cyc) pixels.push_back(p);
            break;
        }
        first_seen.emplace(st, states.size());
        states.push_back(st);
        pixels.push_back(cur);
    }

    if (pixels.size() < 3) throw zc_error("degenerate silhouette");
    Contour out;
    out.reserve(pixels.size());
    for (const auto& p : pixels)
        out.push_back({static_cast<double>(p.first), static_cast<double>(p.second)});
    return out;
}

}  // namespace zeroclass
