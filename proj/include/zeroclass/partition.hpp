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
 * @file partition.hpp
 * @brief Discriminative-frame selection via one-vs-rest boosting weights.
 *
 * One Gentle AdaBoost pass runs per class (that class positive, the rest
 * negative). A frame's selection weight is its final weight in the pass
 * where its own class is positive: frames the booster keeps struggling
 * with (shared poses, noise) end up heavy. Per class, the max(1,
 * round(R*n_c)) lightest frames stay discriminative; everything else is
 * relabeled to the zeroth class. Selection weights are computed once and
 * reusable across different rates R.
 *****************************************************************************/
#ifndef ZEROCLASS_PARTITION_HPP
#define ZEROCLASS_PARTITION_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zeroclass/boosting.hpp"
#include "zeroclass/core.hpp"

namespace zeroclass {

inline constexpr double kDefaultSelectRate = 0.2;

// Disjoint cover of all training frames: discriminative[c-1] holds the
// frame indices kept for class c, zeroth holds every relabeled frame.
// All lists are ascending. weights(i) is frame i's selection weight.
struct FramePartition {
    std::vector<std::vector<int>> discriminative;
    std::vector<int> zeroth;
    Vec weights;
};

namespace detail {

inline void check_partition_labels(Eigen::Index n, const std::vector<int>& labels,
                                   int num_classes) {
    if (num_classes < 1) throw zc_error("partition_frames: need at least one class");
    if (labels.size() != static_cast<std::size_t>(n))
        throw zc_error("partition_frames: label count must match frame count");
    std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
    for (const int c : labels) {
        if (c < 1 || c > num_classes)
            throw zc_error("partition_frames: labels must lie in 1.." +
                           std::to_string(num_classes));
        ++counts[static_cast<std::size_t>(c - 1)];
    }
    for (int c = 1; c <= num_classes; ++c)
        if (counts[static_cast<std::size_t>(c - 1)] == 0)
            throw zc_error("partition_frames: class " + std::to_string(c) +
                           " has no frames");
}

}  // namespace detail

// Final boosting weight of every frame under its own-class-positive pass.
inline Vec selection_weights(const Mat& X, const std::vector<int>& labels,
                             int num_classes, int rounds, std::uint64_t seed = 0) {
    detail::check_partition_labels(X.rows(), labels, num_classes);
    const Eigen::Index n = X.rows();
    Vec weights(n);
    for (int c = 1; c <= num_classes; ++c) {
        Vec targets(n);
        for (Eigen::Index i = 0; i < n; ++i)
            targets(i) = labels[static_cast<std::size_t>(i)] == c ? 1.0 : -1.0;
        const BoostModel model = gentle_boost(X, targets, rounds, seed);
        for (Eigen::Index i = 0; i < n; ++i)
            if (labels[static_cast<std::size_t>(i)] == c)
                weights(i) = model.final_weights(i);
    }
    return weights;
}

// Applies the selection rule to precomputed weights. Per class the
// max(1, round(rate * n_c)) lowest-weight frames stay discriminative,
// weight ties broken by frame index; rate = 1 keeps every frame.
inline FramePartition partition_from_weights(const Vec& weights,
                                             const std::vector<int>& labels,
                                             int num_classes, double rate) {
    if (!(rate > 0.0) || rate > 1.0)
        throw zc_error("partition_frames: rate must lie in (0, 1]");
    detail::check_partition_labels(weights.size(), labels, num_classes);

    FramePartition part;
    part.weights = weights;
    part.discriminative.assign(static_cast<std::size_t>(num_classes), {});

    for (int c = 1; c <= num_classes; ++c) {
        std::vector<int> members;
        for (std::size_t i = 0; i < labels.size(); ++i)
            if (labels[i] == c) members.push_back(static_cast<int>(i));
        const auto n_c = static_cast<double>(members.size());
        const auto keep = static_cast<std::size_t>(
            std::max<long>(1, std::lround(rate * n_c)));

        std::vector<int> by_weight = members;
        std::sort(by_weight.begin(), by_weight.end(), [&](int a, int b) {
            if (weights(a) != weights(b)) return weights(a) < weights(b);
            return a < b;
        });
        by_weight.resize(std::min(keep, by_weight.size()));
        std::sort(by_weight.begin(), by_weight.end());
        part.discriminative[static_cast<std::size_t>(c - 1)] = std::move(by_weight);
    }

    std::vector<char> kept(labels.size(), 0);
    for (const auto& lst : part.discriminative)
        for (const int i : lst) kept[static_cast<std::size_t>(i)] = 1;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (!kept[i]) part.zeroth.push_back(static_cast<int>(i));
    return part;
}

inline FramePartition partition_frames(const Mat& X, const std::vector<int>& labels,
                                       int num_classes, double rate,
                                       int rounds = kDefaultBoostRounds,
                                       std::uint64_t seed = 0) {
    if (!(rate > 0.0) || rate > 1.0)
        throw zc_error("partition_frames: rate must lie in (0, 1]");
    return partition_from_weights(selection_weights(X, labels, num_classes, rounds, seed),
                                  labels, num_classes, rate);
}

// Trivial partition that keeps every frame discriminative; used when the
// zeroth-class mechanism is disabled. Identical downstream to rate = 1.
inline FramePartition partition_keep_all(const std::vector<int>& labels, int num_classes) {
    detail::check_partition_labels(static_cast<Eigen::Index>(labels.size()), labels,
                                   num_classes);
    FramePartition part;
    part.weights = Vec::Constant(static_cast<Eigen::Index>(labels.size()),
                                 1.0 / static_cast<double>(labels.size()));
    part.discriminative.assign(static_cast<std::size_t>(num_classes), {});
    for (std::size_t i = 0; i < labels.size(); ++i)
        part.discriminative[static_cast<std::size_t>(labels[i] - 1)].push_back(
            static_cast<int>(i));
    return part;
}

}  // namespace zeroclass

#endif  // ZEROCLASS_PARTITION_HPP
