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
 *****************************************************************************/
#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "zeroclass/contour.hpp"

using namespace zeroclass;

namespace {

SilhouetteMask mask_from(int w, int h, std::initializer_list<std::pair<int, int>> px) {
    SilhouetteMask m(w, h);
    for (auto [x, y] : px) m.at(x, y) = 1;
    return m;
}

bool eight_adjacent(const ContourPoint& a, const ContourPoint& b) {
    const int dx = static_cast<int>(b.x) - static_cast<int>(a.x);
    const int dy = static_cast<int>(b.y) - static_cast<int>(a.y);
    return (dx != 0 || dy != 0) && std::abs(dx) <= 1 && std::abs(dy) <= 1;
}

// Boundary pixel in the 4-connected sense: some edge-neighbor is background.
bool is_boundary(const SilhouetteMask& m, int x, int y) {
    return !m.foreground(x + 1, y) || !m.foreground(x - 1, y) ||
           !m.foreground(x, y + 1) || !m.foreground(x, y - 1);
}

void check_valid_contour(const SilhouetteMask& comp, const Contour& c) {
    REQUIRE(c.size() >= 3);
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        REQUIRE(eight_adjacent(c[i], c[i + 1]));
    REQUIRE(eight_adjacent(c.back(), c.front()));
    for (const auto& p : c) {
        const int x = static_cast<int>(p.x), y = static_cast<int>(p.y);
        REQUIRE(comp.foreground(x, y));
        REQUIRE(is_boundary(comp, x, y));
    }
}

}  // namespace

TEST_CASE("single pixel is degenerate", "[contour]") {
    auto m = mask_from(3, 3, {{1, 1}});
    REQUIRE_THROWS_WITH(trace_contour(m), "degenerate silhouette");
}

TEST_CASE("two-pixel components are degenerate", "[contour]") {
    auto h = mask_from(4, 3, {{1, 1}, {2, 1}});
    REQUIRE_THROWS_WITH(trace_contour(h), "degenerate silhouette");
    auto d = mask_from(4, 4, {{1, 1}, {2, 2}});
    REQUIRE_THROWS_WITH(trace_contour(d), "degenerate silhouette");
}

TEST_CASE("filled 4x4 square traces its 12 perimeter pixels", "[contour]") {
    SilhouetteMask m(6, 6);
    for (int y = 1; y <= 4; ++y)
        for (int x = 1; x <= 4; ++x) m.at(x, y) = 1;
    Contour c = trace_contour(m);
    REQUIRE(c.size() == 12);
    // starts topmost-leftmost and walks clockwise (east first)
    REQUIRE(c[0].x == 1.0);
    REQUIRE(c[0].y == 1.0);
    REQUIRE(c[1].x == 2.0);
    REQUIRE(c[1].y == 1.0);
    std::set<std::pair<int, int>> seen;
    for (const auto& p : c)
        seen.insert({static_cast<int>(p.x), static_cast<int>(p.y)});
    REQUIRE(seen.size() == 12);  // no revisits on a convex blob
    check_valid_contour(m, c);
}

TEST_CASE("largest of two components wins", "[contour]") {
    SilhouetteMask m(24, 12);
    for (int y = 2; y <= 8; ++y)       // 7x7 = 49 + one extra pixel = 50
        for (int x = 2; x <= 8; ++x) m.at(x, y) = 1;
    m.at(9, 8) = 1;
    for (int y = 3; y <= 7; ++y)       // 5x2 = 10
        for (int x = 15; x <= 16; ++x) m.at(x, y) = 1;
    Contour c = trace_contour(m);
    for (const auto& p : c) REQUIRE(p.x <= 9.0);  // never in the small blob
    SilhouetteMask comp = largest_component(m);
    std::size_t n = 0;
    for (auto b : comp.bits) n += b;
    REQUIRE(n == 50);
}

TEST_CASE("thin plus shape terminates with a closed 4-point cycle", "[contour]") {
    auto m = mask_from(3, 3, {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {1, 2}});
    Contour c = trace_contour(m);
    REQUIRE(c.size() == 4);  // arm tips only; the center is interior-like
    REQUIRE(c[0].x == 1.0);
    REQUIRE(c[0].y == 0.0);
    check_valid_contour(largest_component(m), c);
}

TEST_CASE("thin diagonal line revisits pixels but stays closed", "[contour]") {
    auto m = mask_from(8, 8, {{1, 1}, {2, 2}, {3, 3}, {4, 4}});
    Contour c = trace_contour(m);
    check_valid_contour(largest_component(m), c);
}

TEST_CASE("random disk unions trace to valid closed boundaries", "[contour]") {
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        SilhouetteMask m(48, 48);
        const int disks = 1 + static_cast<int>(rng.below(3));
        for (int d = 0; d < disks; ++d) {
            const double cx = rng.uniform(10.0, 38.0);
            const double cy = rng.uniform(10.0, 38.0);
            const double r = rng.uniform(3.0, 9.0);
            for (int y = 0; y < 48; ++y)
                for (int x = 0; x < 48; ++x)
                    if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r)
                        m.at(x, y) = 1;
        }
        Contour c = trace_contour(m);
        check_valid_contour(largest_component(m), c);
    }
}

TEST_CASE("no foreground pixels is an error", "[contour]") {
    SilhouetteMask m(5, 5);
    REQUIRE_THROWS_AS(trace_contour(m), zc_error);
}
