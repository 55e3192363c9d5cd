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

#include <algorithm>
#include <set>
#include <vector>

#include "zeroclass/descriptor.hpp"
#include "zeroclass/partition.hpp"
#include "zeroclass/synthetic.hpp"

using namespace zeroclass;

namespace {

struct Fixture {
    Mat X;
    std::vector<int> labels;
};

// Three well-separated 2-D clusters plus per-sample jitter.
Fixture clustered(Rng& rng, const std::vector<int>& class_sizes) {
    Fixture f;
    int n = 0;
    for (const int s : class_sizes) n += s;
    f.X.resize(n, 2);
    int row = 0;
    for (std::size_t c = 0; c < class_sizes.size(); ++c) {
        for (int i = 0; i < class_sizes[c]; ++i, ++row) {
            f.X(row, 0) = 10.0 * static_cast<double>(c) + rng.uniform(-1.0, 1.0);
            f.X(row, 1) = rng.uniform(-1.0, 1.0);
            f.labels.push_back(static_cast<int>(c) + 1);
        }
    }
    return f;
}

void check_cover(const FramePartition& part, const std::vector<int>& labels,
                 int num_classes) {
    std::set<int> seen;
    for (int c = 0; c < num_classes; ++c) {
        const auto& lst = part.discriminative[static_cast<std::size_t>(c)];
        REQUIRE(std::is_sorted(lst.begin(), lst.end()));
        for (const int i : lst) {
            REQUIRE(labels[static_cast<std::size_t>(i)] == c + 1);
            REQUIRE(seen.insert(i).second);
        }
    }
    REQUIRE(std::is_sorted(part.zeroth.begin(), part.zeroth.end()));
    for (const int i : part.zeroth) REQUIRE(seen.insert(i).second);
    REQUIRE(seen.size() == labels.size());
}

}  // namespace

TEST_CASE("rate one keeps every frame discriminative", "[partition]") {
    Rng rng(31);
    const Fixture f = clustered(rng, {6, 7, 5});
    const FramePartition part = partition_frames(f.X, f.labels, 3, 1.0, 20);
    REQUIRE(part.zeroth.empty());
    check_cover(part, f.labels, 3);
    REQUIRE(part.discriminative[0].size() == 6);
    REQUIRE(part.discriminative[1].size() == 7);
    REQUIRE(part.discriminative[2].size() == 5);
}

TEST_CASE("selection sizes follow the rounding rule", "[partition]") {
    Rng rng(32);
    const Fixture f = clustered(rng, {3, 5, 8});
    const FramePartition part = partition_frames(f.X, f.labels, 3, 0.2, 20);
    // max(1, round(0.2 * n_c)): 3 -> 1, 5 -> 1, 8 -> 2.
    REQUIRE(part.discriminative[0].size() == 1);
    REQUIRE(part.discriminative[1].size() == 1);
    REQUIRE(part.discriminative[2].size() == 2);
    REQUIRE(part.zeroth.size() == 16 - 4);
    check_cover(part, f.labels, 3);
}

TEST_CASE("partition is a disjoint cover at many rates", "[partition]") {
    Rng rng(33);
    const Fixture f = clustered(rng, {9, 4, 11, 6});
    for (const double rate : {0.1, 0.25, 0.5, 0.75, 0.99, 1.0}) {
        const FramePartition part = partition_frames(f.X, f.labels, 4, rate, 15);
        check_cover(part, f.labels, 4);
        for (int c = 0; c < 4; ++c) {
            const auto n_c = static_cast<double>(
                std::count(f.labels.begin(), f.labels.end(), c + 1));
            const auto keep = static_cast<std::size_t>(
                std::max<long>(1, std::lround(rate * n_c)));
            REQUIRE(part.discriminative[static_cast<std::size_t>(c)].size() == keep);
        }
    }
}

TEST_CASE("selection weights are positive and reusable", "[partition]") {
    Rng rng(34);
    const Fixture f = clustered(rng, {8, 8});
    const Vec w = selection_weights(f.X, f.labels, 2, 25);
    for (Eigen::Index i = 0; i < w.size(); ++i) REQUIRE(w(i) > 0.0);
    const FramePartition direct = partition_frames(f.X, f.labels, 2, 0.5, 25);
    const FramePartition reused = partition_from_weights(w, f.labels, 2, 0.5);
    REQUIRE(direct.discriminative == reused.discriminative);
    REQUIRE(direct.zeroth == reused.zeroth);
}

TEST_CASE("partitioning is deterministic", "[partition]") {
    Rng rng(35);
    const Fixture f = clustered(rng, {7, 7, 7});
    const FramePartition a = partition_frames(f.X, f.labels, 3, 0.3, 20);
    const FramePartition b = partition_frames(f.X, f.labels, 3, 0.3, 20);
    REQUIRE(a.discriminative == b.discriminative);
    REQUIRE(a.zeroth == b.zeroth);
    REQUIRE(a.weights == b.weights);
}

TEST_CASE("keep-all partition matches the rate-one layout", "[partition]") {
    Rng rng(36);
    const Fixture f = clustered(rng, {5, 9});
    const FramePartition all = partition_keep_all(f.labels, 2);
    const FramePartition rate1 = partition_frames(f.X, f.labels, 2, 1.0, 10);
    REQUIRE(all.discriminative == rate1.discriminative);
    REQUIRE(all.zeroth.empty());
}

TEST_CASE("invalid rates and labels are rejected", "[partition]") {
    Rng rng(37);
    const Fixture f = clustered(rng, {4, 4});
    REQUIRE_THROWS_AS(partition_frames(f.X, f.labels, 2, 0.0, 10), zc_error);
    REQUIRE_THROWS_AS(partition_frames(f.X, f.labels, 2, 1.5, 10), zc_error);
    REQUIRE_THROWS_AS(partition_frames(f.X, f.labels, 3, 0.5, 10), zc_error);
    std::vector<int> bad = f.labels;
    bad[0] = 7;
    REQUIRE_THROWS_AS(partition_frames(f.X, bad, 2, 0.5, 10), zc_error);
}

TEST_CASE("shared poses sink into the zeroth class", "[partition]") {
    SynthConfig cfg;
    cfg.num_classes = 3;
    cfg.videos_per_class = 6;
    cfg.frames_per_video = 20;
    cfg.shared_frame_rate = 0.3;
    cfg.noise_frame_rate = 0.0;
    cfg.seed = 5;
    const SyntheticDataset data = generate_synthetic(cfg);

    std::vector<int> labels;
    std::vector<bool> shared;
    std::vector<Vec> rows;
    for (std::size_t v = 0; v < data.videos.size(); ++v) {
        for (std::size_t t = 0; t < data.videos[v].frames.size(); ++t) {
            rows.push_back(describe_mask(data.videos[v].frames[t]));
            labels.push_back(data.videos[v].class_label);
            shared.push_back(data.kinds[v][t] == FrameKind::shared);
        }
    }
    Mat X(static_cast<Eigen::Index>(rows.size()), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        X.row(static_cast<Eigen::Index>(i)) = rows[i].transpose();

    const FramePartition part = partition_frames(X, labels, cfg.num_classes, 0.6);
    check_cover(part, labels, cfg.num_classes);

    std::size_t shared_total = 0, shared_zeroth = 0;
    std::vector<char> in_zeroth(labels.size(), 0);
    for (const int i : part.zeroth) in_zeroth[static_cast<std::size_t>(i)] = 1;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!shared[i]) continue;
        ++shared_total;
        if (in_zeroth[i]) ++shared_zeroth;
    }
    REQUIRE(shared_total > 0);
    REQUIRE(static_cast<double>(shared_zeroth) >=
            0.7 * static_cast<double>(shared_total));
}
