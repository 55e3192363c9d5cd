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
 * @file eval.hpp
 * @brief Leave-one-out cross-validation, grid search, and report writers.
 *
 * Folds hold out one video each (or one actor when grouped). Frame
 * descriptors are computed once for the whole dataset and sliced per fold;
 * per-fold seeds derive from the master seed plus the fold index, so a
 * report is reproducible for any worker count. Grid search reuses each
 * fold's boosting weights across every (R, C) cell, because the weights
 * depend on neither parameter.
 *****************************************************************************/
#ifndef ZEROCLASS_EVAL_HPP
#define ZEROCLASS_EVAL_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "zeroclass/dataset.hpp"
#include "zeroclass/model.hpp"
#include "zeroclass/threads.hpp"

namespace zeroclass {

struct FoldResult {
    std::string video_id;
    int true_label = 0;
    int predicted = 0;
    Vec pooled;           // size K+1; entries 1..K
    int zeroth_frames = 0;
    bool fallback = false;
};

struct EvalReport {
    std::vector<FoldResult> folds;
    double accuracy = 0.0;
    Eigen::MatrixXi confusion;  // rows true class, columns predicted
    TrainParams params;
    Pooling pooling = Pooling::max;
    int num_classes = 0;
    double wall_seconds = 0.0;
};

struct SweepRow {
    double param = 0.0;
    double accuracy = 0.0;
};

struct SweepTable {
    std::string param_name;
    std::vector<SweepRow> rows;
};

struct GridCell {
    double rate = 0.0;
    int sparsity = 0;
    double accuracy = 0.0;
};

struct GridSearchResult {
    std::vector<GridCell> cells;  // row-major over (rate, sparsity)
    GridCell best;
};

namespace detail {

// Dataset descriptors computed once: one row per frame, plus the frame
// ranges of every video and the fold grouping.
struct EvalContext {
    Mat X;
    std::vector<int> frame_labels;
    std::vector<std::pair<int, int>> video_span;  // frame range [begin, end)
    std::vector<int> video_labels;
    std::vector<std::string> video_ids;
    std::vector<std::vector<int>> fold_videos;  // videos held out per fold
    int num_classes = 0;
};

// Actor id: the video directory name up to the first underscore, the
// common "actor_action" naming convention.
inline std::string actor_of(const std::string& video_id) {
    const std::size_t slash = video_id.find_last_of('/');
    const std::string dir = slash == std::string::npos ? video_id : video_id.substr(slash + 1);
    const std::size_t us = dir.find('_');
    return us == std::string::npos ? dir : dir.substr(0, us);
}

inline EvalContext build_context(const std::vector<VideoRecord>& videos,
                                 const TrainParams& params, bool fold_by_actor) {
    if (videos.size() < 2) throw zc_error("loocv: need at least 2 videos");
    EvalContext ctx;
    std::size_t total = 0;
    for (const auto& v : videos) {
        ctx.num_classes = std::max(ctx.num_classes, v.class_label);
        total += v.frames.size();
        if (v.frames.empty()) throw zc_error("loocv: video " + v.id + " has no frames");
    }

    std::vector<int> videos_per_class(static_cast<std::size_t>(ctx.num_classes), 0);
    for (const auto& v : videos) {
        if (v.class_label < 1) throw zc_error("loocv: video " + v.id + " has no class label");
        ++videos_per_class[static_cast<std::size_t>(v.class_label - 1)];
    }
    for (int c = 1; c <= ctx.num_classes; ++c)
        if (videos_per_class[static_cast<std::size_t>(c - 1)] < 2)
            throw zc_error("loocv: class " + std::to_string(c) + " has " +
                           std::to_string(videos_per_class[static_cast<std::size_t>(c - 1)]) +
                           " video(s); leave-one-out needs at least 2");

    ctx.X.resize(static_cast<Eigen::Index>(total), params.descriptor_length);
    Eigen::Index row = 0;
    for (const auto& v : videos) {
        ctx.video_span.push_back({static_cast<int>(row),
                                  static_cast<int>(row + static_cast<Eigen::Index>(v.frames.size()))});
        ctx.video_labels.push_back(v.class_label);
        ctx.video_ids.push_back(v.id);
        for (const auto& frame : v.frames) {
            ctx.X.row(row++) =
                describe_mask(frame, params.descriptor_length, params.order).transpose();
            ctx.frame_labels.push_back(v.class_label);
        }
    }

    if (!fold_by_actor) {
        for (std::size_t v = 0; v < videos.size(); ++v)
            ctx.fold_videos.push_back({static_cast<int>(v)});
    } else {
        std::map<std::string, int> fold_of;  // actor -> fold, by first appearance
        for (std::size_t v = 0; v < videos.size(); ++v) {
            const std::string actor = actor_of(videos[v].id);
            const auto [it, fresh] =
                fold_of.insert({actor, static_cast<int>(ctx.fold_videos.size())});
            if (fresh) ctx.fold_videos.push_back({});
            ctx.fold_videos[static_cast<std::size_t>(it->second)].push_back(
                static_cast<int>(v));
        }
        if (ctx.fold_videos.size() < 2)
            throw zc_error("loocv: actor folding found a single actor group");
    }
    return ctx;
}

// One fold: train without the held-out videos, classify each of them.
// fold_weights, when present, bypasses the boosting pass.
inline void run_fold(const EvalContext& ctx, std::size_t fold, const TrainParams& params,
                     Pooling pooling, const Vec* fold_weights,
                     std::vector<FoldResult>& out) {
    const auto& held = ctx.fold_videos[fold];
    std::vector<char> is_held_frame(static_cast<std::size_t>(ctx.X.rows()), 0);
    std::vector<char> is_held_video(ctx.video_ids.size(), 0);
    for (const int v : held) {
        is_held_video[static_cast<std::size_t>(v)] = 1;
        for (int f = ctx.video_span[static_cast<std::size_t>(v)].first;
             f < ctx.video_span[static_cast<std::size_t>(v)].second; ++f)
            is_held_frame[static_cast<std::size_t>(f)] = 1;
    }

    std::vector<int> train_rows;
    std::vector<int> train_labels;
    for (Eigen::Index f = 0; f < ctx.X.rows(); ++f)
        if (!is_held_frame[static_cast<std::size_t>(f)]) {
            train_rows.push_back(static_cast<int>(f));
            train_labels.push_back(ctx.frame_labels[static_cast<std::size_t>(f)]);
        }
    Mat X_train(static_cast<Eigen::Index>(train_rows.size()), ctx.X.cols());
    for (std::size_t t = 0; t < train_rows.size(); ++t)
        X_train.row(static_cast<Eigen::Index>(t)) = ctx.X.row(train_rows[t]);

    TrainParams fold_params = params;
    fold_params.seed = params.seed + static_cast<std::uint64_t>(fold);

    const TwoPhaseModel model =
        train_on_descriptors(X_train, train_labels, ctx.num_classes, fold_params,
                             fold_weights);

    for (std::size_t v = 0; v < ctx.video_ids.size(); ++v) {
        if (!is_held_video[v]) continue;
        const auto [begin, end] = ctx.video_span[v];
        Mat desc(ctx.X.cols(), end - begin);
        for (int f = begin; f < end; ++f) desc.col(f - begin) = ctx.X.row(f).transpose();
        const Mat features =
            error_features_batch(desc, model.first_dict, fold_params.sparsity);
        const VideoVerdict verdict = classify_video_detailed(features, model, pooling);
        FoldResult& res = out[v];
        res.video_id = ctx.video_ids[v];
        res.true_label = ctx.video_labels[v];
        res.predicted = verdict.label;
        res.pooled = verdict.pooled;
        res.zeroth_frames = verdict.zeroth_frames;
        res.fallback = verdict.fallback;
    }
}

inline EvalReport assemble_report(const EvalContext& ctx, std::vector<FoldResult> folds,
                                  const TrainParams& params, Pooling pooling,
                                  double wall_seconds) {
    EvalReport report;
    report.folds = std::move(folds);
    report.params = params;
    report.pooling = pooling;
    report.num_classes = ctx.num_classes;
    report.wall_seconds = wall_seconds;
    report.confusion = Eigen::MatrixXi::Zero(ctx.num_classes, ctx.num_classes);
    int correct = 0;
    for (const auto& f : report.folds) {
        ++report.confusion(f.true_label - 1, f.predicted - 1);
        if (f.true_label == f.predicted) ++correct;
    }
    report.accuracy =
        static_cast<double>(correct) / static_cast<double>(report.folds.size());
    return report;
}

// Per-fold boosting weights over that fold's training frames, reusable
// across every (R, C) grid cell.
inline std::vector<Vec> fold_selection_weights(const EvalContext& ctx,
                                               const TrainParams& params) {
    std::vector<Vec> weights(ctx.fold_videos.size());
    parallel_for(ctx.fold_videos.size(), [&](std::size_t fold) {
        std::vector<char> held(static_cast<std::size_t>(ctx.X.rows()), 0);
        for (const int v : ctx.fold_videos[fold])
            for (int f = ctx.video_span[static_cast<std::size_t>(v)].first;
                 f < ctx.video_span[static_cast<std::size_t>(v)].second; ++f)
                held[static_cast<std::size_t>(f)] = 1;
        std::vector<int> labels;
        std::vector<int> rows;
        for (Eigen::Index f = 0; f < ctx.X.rows(); ++f)
            if (!held[static_cast<std::size_t>(f)]) {
                rows.push_back(static_cast<int>(f));
                labels.push_back(ctx.frame_labels[static_cast<std::size_t>(f)]);
            }
        Mat X_train(static_cast<Eigen::Index>(rows.size()), ctx.X.cols());
        for (std::size_t t = 0; t < rows.size(); ++t)
            X_train.row(static_cast<Eigen::Index>(t)) = ctx.X.row(rows[t]);
        weights[fold] = selection_weights(X_train, labels, ctx.num_classes,
                                          params.boost_rounds,
                                          params.seed + static_cast<std::uint64_t>(fold));
    });
    return weights;
}

inline EvalReport loocv_context(const EvalContext& ctx, const TrainParams& params,
                                Pooling pooling, const std::vector<Vec>* weights) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<FoldResult> folds(ctx.video_ids.size());
    parallel_for(ctx.fold_videos.size(), [&](std::size_t fold) {
        run_fold(ctx, fold, params, pooling,
                 weights != nullptr ? &(*weights)[fold] : nullptr, folds);
    });
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return assemble_report(ctx, std::move(folds), params, pooling, secs);
}

}  // namespace detail

// Leave-one-out cross-validation, one fold per video (per actor when
// fold_by_actor is set; the actor is the video directory name up to the
// first underscore).
inline EvalReport loocv(const std::vector<VideoRecord>& videos, const TrainParams& params,
                        Pooling pooling, bool fold_by_actor = false) {
    params.validate();
    const detail::EvalContext ctx = detail::build_context(videos, params, fold_by_actor);
    return detail::loocv_context(ctx, params, pooling, nullptr);
}

// Full grid: loocv per (rate, sparsity) cell with shared descriptors and
// per-fold boosting weights. Ties prefer the smaller rate, then sparsity.
inline GridSearchResult grid_search(const std::vector<VideoRecord>& videos,
                                    const std::vector<double>& rate_grid,
                                    const std::vector<int>& sparsity_grid,
                                    const TrainParams& base, Pooling pooling,
                                    bool fold_by_actor = false,
                                    std::vector<EvalReport>* reports = nullptr) {
    base.validate();
    if (rate_grid.empty() || sparsity_grid.empty())
        throw zc_error("grid_search: grids must be nonempty");
    for (std::size_t i = 1; i < rate_grid.size(); ++i)
        if (!(rate_grid[i - 1] < rate_grid[i]))
            throw zc_error("grid_search: rate grid must be strictly increasing");
    for (std::size_t i = 1; i < sparsity_grid.size(); ++i)
        if (!(sparsity_grid[i - 1] < sparsity_grid[i]))
            throw zc_error("grid_search: sparsity grid must be strictly increasing");
    for (const double r : rate_grid)
        if (!(r > 0.0) || r > 1.0)
            throw zc_error("grid_search: rates must lie in (0, 1]");
    for (const int c : sparsity_grid)
        if (c < 1) throw zc_error("grid_search: sparsity values must be at least 1");

    const detail::EvalContext ctx = detail::build_context(videos, base, fold_by_actor);
    // Weights depend only on descriptors, labels, and rounds; compute once
    // per fold unless no cell ever partitions.
    const bool any_partition = base.use_zeroth && *std::min_element(rate_grid.begin(),
                                                                    rate_grid.end()) < 1.0;
    std::vector<Vec> weights;
    if (any_partition) weights = detail::fold_selection_weights(ctx, base);

    GridSearchResult result;
    bool first = true;
    for (const double rate : rate_grid)
        for (const int sparsity : sparsity_grid) {
            TrainParams params = base;
            params.select_rate = rate;
            params.sparsity = sparsity;
            const EvalReport report = detail::loocv_context(
                ctx, params, pooling, any_partition ? &weights : nullptr);
            result.cells.push_back({rate, sparsity, report.accuracy});
            if (reports != nullptr) reports->push_back(report);
            if (first || report.accuracy > result.best.accuracy) {
                result.best = result.cells.back();
                first = false;
            }
        }
    return result;
}

inline SweepTable rate_sweep_table(const GridSearchResult& grid) {
    SweepTable table;
    table.param_name = "rate";
    for (const auto& cell : grid.cells) table.rows.push_back({cell.rate, cell.accuracy});
    return table;
}

inline SweepTable sparsity_sweep_table(const GridSearchResult& grid) {
    SweepTable table;
    table.param_name = "sparsity";
    for (const auto& cell : grid.cells)
        table.rows.push_back({static_cast<double>(cell.sparsity), cell.accuracy});
    return table;
}

namespace detail {

inline std::string num17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace detail

inline void write_predictions_csv(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zc_error("cannot write predictions file: " + path);
    out << "video_id,true_label,predicted_label";
    for (int k = 1; k <= report.num_classes; ++k) out << ",pooled_r" << k;
    out << ",zeroth_frames\n";
    for (const auto& f : report.folds) {
        out << f.video_id << ',' << f.true_label << ',' << f.predicted;
        for (int k = 1; k <= report.num_classes; ++k)
            out << ',' << detail::num17(f.pooled(k));
        out << ',' << f.zeroth_frames << '\n';
    }
}

inline void write_confusion_csv(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zc_error("cannot write confusion file: " + path);
    for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
        for (Eigen::Index c = 0; c < report.confusion.cols(); ++c)
            out << report.confusion(r, c) << (c + 1 < report.confusion.cols() ? "," : "");
        out << '\n';
    }
}

inline nlohmann::ordered_json report_to_json(const EvalReport& report) {
    nlohmann::ordered_json j;
    j["params"] = params_to_json(report.params);
    j["pooling"] = pooling_name(report.pooling);
    j["num_classes"] = report.num_classes;
    j["accuracy"] = report.accuracy;
    j["wall_seconds"] = report.wall_seconds;
    nlohmann::ordered_json folds = nlohmann::ordered_json::array();
    for (const auto& f : report.folds) {
        nlohmann::ordered_json row;
        row["video_id"] = f.video_id;
        row["true_label"] = f.true_label;
        row["predicted_label"] = f.predicted;
        std::vector<double> pooled;
        for (int k = 1; k <= report.num_classes; ++k) pooled.push_back(f.pooled(k));
        row["pooled_residuals"] = pooled;
        row["zeroth_frames"] = f.zeroth_frames;
        row["fallback"] = f.fallback;
        folds.push_back(row);
    }
    j["folds"] = folds;
    nlohmann::ordered_json confusion = nlohmann::ordered_json::array();
    for (Eigen::Index r = 0; r < report.confusion.rows(); ++r) {
        std::vector<int> row(static_cast<std::size_t>(report.confusion.cols()));
        for (Eigen::Index c = 0; c < report.confusion.cols(); ++c)
            row[static_cast<std::size_t>(c)] = report.confusion(r, c);
        confusion.push_back(row);
    }
    j["confusion"] = confusion;
    return j;
}

inline void write_report_json(const EvalReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zc_error("cannot write report file: " + path);
    out << report_to_json(report).dump(2) << '\n';
}

inline void write_sweep_csv(const SweepTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zc_error("cannot write sweep file: " + path);
    out << table.param_name << ",accuracy\n";
    for (const auto& row : table.rows)
        out << detail::num17(row.param) << ',' << detail::num17(row.accuracy) << '\n';
}

inline void write_grid_csv(const GridSearchResult& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zc_error("cannot write grid file: " + path);
    out << "rate,sparsity,accuracy\n";
    for (const auto& cell : grid.cells)
        out << detail::num17(cell.rate) << ',' << cell.sparsity << ','
            << detail::num17(cell.accuracy) << '\n';
}

}  // namespace zeroclass

#endif  // ZEROCLASS_EVAL_HPP
