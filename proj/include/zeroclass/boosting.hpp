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
 * @file boosting.hpp
 * @brief Gentle AdaBoost over four-parameter regression stumps.
 *
 * A stump predicts f(x) = w * sign(x_k - th) + v. Fitting scans candidate
 * thresholds (midpoints between consecutive sorted distinct values of each
 * feature) with O(n) prefix sums per feature, shortlists every candidate
 * within a small slack of the best prefix-sum score, then re-evaluates the
 * shortlist with direct summation so the returned stump is the exact
 * minimizer of the weighted squared error over the finite candidate set,
 * bit for bit, ties broken by lowest feature index then lowest threshold.
 *****************************************************************************/
#ifndef ZEROCLASS_BOOSTING_HPP
#define ZEROCLASS_BOOSTING_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "zeroclass/core.hpp"

namespace zeroclass {

inline constexpr int kDefaultBoostRounds = 100;

// f(x) = w * sign(x(k) - th) + v with sign(0) = +1. Thresholds sit strictly
// between training values, so the zero convention never triggers in-sample.
struct Stump {
    int k = 0;
    double th = 0.0;
    double w = 0.0;
    double v = 0.0;

    double eval(double xk) const { return (xk >= th ? w : -w) + v; }
};

struct BoostModel {
    std::vector<Stump> stumps;
    int rounds = 0;
    Vec final_weights;
};

namespace detail {

// Weighted squared error of the (w, v) closed form at threshold th on
// feature k, by direct summation in sample index order. Test oracles use
// the same arithmetic, so stage-two refits agree with them exactly. A side
// left empty by threshold rounding degenerates to the constant fit.
struct DirectFit {
    double err, w, v;
};

inline DirectFit direct_stump_fit(const Mat& X, const Vec& targets, const Vec& weights,
                                  int k, double th) {
    const Eigen::Index n = X.rows();
    double w_above = 0.0, s_above = 0.0, w_below = 0.0, s_below = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (X(i, k) >= th) {
            w_above += weights(i);
            s_above += weights(i) * targets(i);
        } else {
            w_below += weights(i);
            s_below += weights(i) * targets(i);
        }
    }
    DirectFit fit{};
    if (w_above == 0.0 || w_below == 0.0) {
        fit.w = 0.0;
        fit.v = (s_above + s_below) / (w_above + w_below);
    } else {
        const double mu_above = s_above / w_above;
        const double mu_below = s_below / w_below;
        fit.w = 0.5 * (mu_above - mu_below);
        fit.v = 0.5 * (mu_above + mu_below);
    }
    fit.err = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double f = (X(i, k) >= th ? fit.w : -fit.w) + fit.v;
        const double d = targets(i) - f;
        fit.err += weights(i) * d * d;
    }
    return fit;
}

// Per-feature sample order, ascending value with index ties ascending.
// Depends only on X, so boosting computes it once and reuses it each round.
inline std::vector<std::vector<int>> feature_orders(const Mat& X) {
    const Eigen::Index n = X.rows();
    std::vector<std::vector<int>> orders(static_cast<std::size_t>(X.cols()));
    for (Eigen::Index k = 0; k < X.cols(); ++k) {
        auto& ord = orders[static_cast<std::size_t>(k)];
        ord.resize(static_cast<std::size_t>(n));
        std::iota(ord.begin(), ord.end(), 0);
        std::sort(ord.begin(), ord.end(), [&](int a, int b) {
            if (X(a, k) != X(b, k)) return X(a, k) < X(b, k);
            return a < b;
        });
    }
    return orders;
}

inline Stump fit_stump_presorted(const Mat& X, const Vec& targets, const Vec& weights,
                                 const std::vector<std::vector<int>>& orders) {
    const Eigen::Index n = X.rows();
    const Eigen::Index dim = X.cols();

    double total_w = 0.0, total_s = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        total_w += weights(i);
        total_s += weights(i) * targets(i);
    }

    // Stage one: prefix sums find the highest explained score
    // S_b^2/W_b + S_a^2/W_a; minimizing error is maximizing it.
    double best_score = -std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const auto& ord = orders[static_cast<std::size_t>(k)];
        double w_b = 0.0, s_b = 0.0;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            const int i = ord[static_cast<std::size_t>(p)];
            w_b += weights(i);
            s_b += weights(i) * targets(i);
            if (X(i, k) == X(ord[static_cast<std::size_t>(p + 1)], k)) continue;
            const double w_a = total_w - w_b, s_a = total_s - s_b;
            const double score = s_b * s_b / w_b + s_a * s_a / w_a;
            if (score > best_score) best_score = score;
        }
    }

    Stump best;
    if (!std::isfinite(best_score)) {
        // Every feature is constant: no candidate thresholds exist.
        best.w = 0.0;
        best.v = total_s / total_w;
        return best;
    }

    // Stage two: re-evaluate every candidate within slack of the stage-one
    // optimum by direct summation; first strict improvement wins, which is
    // the (lowest k, lowest th) tie rule because the scan is ordered.
    const double slack = 1e-9 * std::max(1.0, std::abs(best_score));
    double best_err = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < dim; ++k) {
        const auto& ord = orders[static_cast<std::size_t>(k)];
        double w_b = 0.0, s_b = 0.0;
        for (Eigen::Index p = 0; p + 1 < n; ++p) {
            const int i = ord[static_cast<std::size_t>(p)];
            w_b += weights(i);
            s_b += weights(i) * targets(i);
            if (X(i, k) == X(ord[static_cast<std::size_t>(p + 1)], k)) continue;
            const double w_a = total_w - w_b, s_a = total_s - s_b;
            const double score = s_b * s_b / w_b + s_a * s_a / w_a;
            if (score < best_score - slack) continue;
            const double th =
                0.5 * (X(i, k) + X(ord[static_cast<std::size_t>(p + 1)], k));
            const DirectFit fit =
                direct_stump_fit(X, targets, weights, static_cast<int>(k), th);
            if (fit.err < best_err) {
                best_err = fit.err;
                best.k = static_cast<int>(k);
                best.th = th;
                best.w = fit.w;
                best.v = fit.v;
            }
        }
    }
    return best;
}

inline void check_boost_args(const Mat& X, const Vec& targets, Eigen::Index n_weights) {
    if (X.rows() < 2) throw zc_error("fit_stump: need at least 2 samples");
    if (X.cols() < 1) throw zc_error("fit_stump: need at least 1 feature");
    if (targets.size() != X.rows() || n_weights != X.rows())
        throw zc_error("fit_stump: targets/weights size must match sample count");
}

}  // namespace detail

// Exact minimizer of sum_i weights_i (targets_i - f(x_i))^2 over all
// candidate (k, th) pairs with the closed-form (w, v) per pair.
inline Stump fit_stump(const Mat& X, const Vec& targets, const Vec& weights) {
    detail::check_boost_args(X, targets, weights.size());
    double sum = 0.0;
    for (Eigen::Index i = 0; i < weights.size(); ++i) {
        if (!(weights(i) > 0.0)) throw zc_error("fit_stump: weights must be positive");
        sum += weights(i);
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw zc_error("fit_stump: weights must sum to 1");
    return detail::fit_stump_presorted(X, targets, weights, detail::feature_orders(X));
}

// Gentle AdaBoost: uniform start, per round fit a stump to the weighted
// data, update w_i *= exp(-target_i * f(x_i)), renormalize. The procedure
// is deterministic; the seed parameter is accepted for interface stability
// and unused.
inline BoostModel gentle_boost(const Mat& X, const Vec& targets, int rounds,
                               std::uint64_t seed = 0) {
    (void)seed;
    detail::check_boost_args(X, targets, targets.size());
    if (rounds < 1) throw zc_error("gentle_boost: rounds must be at least 1");
    for (Eigen::Index i = 0; i < targets.size(); ++i)
        if (targets(i) != 1.0 && targets(i) != -1.0)
            throw zc_error("gentle_boost: targets must be +1 or -1");

    const Eigen::Index n = X.rows();
    const auto orders = detail::feature_orders(X);

    BoostModel model;
    model.rounds = rounds;
    model.stumps.reserve(static_cast<std::size_t>(rounds));
    Vec weights = Vec::Constant(n, 1.0 / static_cast<double>(n));

    for (int t = 0; t < rounds; ++t) {
        const Stump stump = detail::fit_stump_presorted(X, targets, weights, orders);
        model.stumps.push_back(stump);
        for (Eigen::Index i = 0; i < n; ++i)
            weights(i) *= std::exp(-targets(i) * stump.eval(X(i, stump.k)));
        weights /= weights.sum();
    }

    model.final_weights = std::move(weights);
    return model;
}

// Additive ensemble score F(x) = sum_t f_t(x) for one sample row.
inline double boost_score(const BoostModel& model, const Mat& X, Eigen::Index row) {
    double f = 0.0;
    for (const Stump& s : model.stumps) f += s.eval(X(row, s.k));
    return f;
}

}  // namespace zeroclass

#endif  // ZEROCLASS_BOOSTING_HPP
