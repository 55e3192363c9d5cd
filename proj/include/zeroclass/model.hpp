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
 * @file model.hpp
 * @brief Two-phase dictionary model with a zeroth class, end to end.
 *
 * Training: describe every frame, split frames into per-class
 * discriminative sets and a zeroth pool by boosting weight, learn the
 * first-phase dictionary on discriminative frames only, re-express ALL
 * frames as per-atom reconstruction-error features, learn one dictionary
 * per class (the zeroth pool included) on those features, and concatenate
 * them column-wise with an atom-to-class index map.
 *
 * Classification: a frame's error feature is coded against the
 * concatenated dictionary; its residual toward class k keeps only class-k
 * coefficients, and the frame is provisionally labeled by the smallest
 * residual. Video labels pool frame residuals over classes 1..K after
 * discarding zeroth-labeled frames (over all frames when every frame is
 * zeroth-labeled, a fallback the source construction leaves open).
 *****************************************************************************/
#ifndef ZEROCLASS_MODEL_HPP
#define ZEROCLASS_MODEL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "zeroclass/core.hpp"
#include "zeroclass/dataset.hpp"
#include "zeroclass/descriptor.hpp"
#include "zeroclass/partition.hpp"
#include "zeroclass/sparse.hpp"

namespace zeroclass {

inline constexpr int kDefaultSparsity = 15;
inline constexpr int kModelFormatVersion = 1;

struct TrainParams {
    int descriptor_length = kDefaultDescriptorLength;
    double order = kDefaultOrder;
    int sparsity = kDefaultSparsity;
    double select_rate = kDefaultSelectRate;
    int boost_rounds = kDefaultBoostRounds;
    int ksvd_iters = kDefaultKsvdIters;
    int first_atoms = 0;  // 0 = min(256, n_disc / 2)
    int class_atoms = 0;  // 0 = max(1, min(32, n_k / 2))
    std::uint64_t seed = 0;
    bool use_zeroth = true;

    void validate() const {
        if (descriptor_length < 3)
            throw zc_error("params: descriptor length must be at least 3");
        if (sparsity < 1) throw zc_error("params: sparsity must be at least 1");
        if (!(select_rate > 0.0) || select_rate > 1.0)
            throw zc_error("params: selection rate must lie in (0, 1]");
        if (boost_rounds < 1) throw zc_error("params: boosting rounds must be at least 1");
        if (ksvd_iters < 1) throw zc_error("params: dictionary iterations must be at least 1");
        if (first_atoms < 0 || class_atoms < 0)
            throw zc_error("params: atom counts must be non-negative (0 = automatic)");
    }
};

struct TwoPhaseModel {
    TrainParams params;
    int num_classes = 0;
    Dictionary first_dict;
    // Indexed by class 0..K; [0] stays empty when the zeroth pool was empty.
    std::vector<Dictionary> class_dicts;
    Dictionary concat_dict;
    std::vector<int> atom_classes;  // concatenated column -> owning class

    bool has_zeroth() const {
        return !class_dicts.empty() && class_dicts.front().atoms.size() > 0;
    }
};

// Per-frame provisional classification: residuals(k) for k = 0..K and the
// argmin label. residuals(0) is +infinity when the model has no zeroth
// dictionary, which removes class 0 from the argmin.
struct FrameVerdict {
    Vec residuals;
    int label = 0;
};

enum class Pooling { max, sum };

inline Pooling parse_pooling(const std::string& name) {
    if (name == "max") return Pooling::max;
    if (name == "sum") return Pooling::sum;
    throw zc_error("pooling must be 'max' or 'sum', got '" + name + "'");
}

inline std::string pooling_name(Pooling p) { return p == Pooling::max ? "max" : "sum"; }

struct VideoVerdict {
    int label = 0;       // 1..K
    Vec pooled;          // size K+1; entries 1..K are the pooled residuals
    int zeroth_frames = 0;  // frames provisionally labeled zeroth
    bool fallback = false;  // every frame was zeroth-labeled
};

namespace detail {

inline void build_concat(TwoPhaseModel& model) {
    Eigen::Index total = 0;
    Eigen::Index dim = 0;
    for (const auto& d : model.class_dicts) {
        total += d.atoms.cols();
        if (d.atoms.size() > 0) dim = d.atoms.rows();
    }
    model.concat_dict.atoms.resize(dim, total);
    model.atom_classes.clear();
    model.atom_classes.reserve(static_cast<std::size_t>(total));
    Eigen::Index at = 0;
    for (std::size_t k = 0; k < model.class_dicts.size(); ++k) {
        const auto& d = model.class_dicts[k];
        if (d.atoms.size() == 0) continue;
        model.concat_dict.atoms.middleCols(at, d.atoms.cols()) = d.atoms;
        for (Eigen::Index c = 0; c < d.atoms.cols(); ++c)
            model.atom_classes.push_back(static_cast<int>(k));
        at += d.atoms.cols();
    }
}

inline int auto_first_atoms(Eigen::Index n_disc) {
    return static_cast<int>(
        std::max<Eigen::Index>(1, std::min<Eigen::Index>(256, n_disc / 2)));
}

// min(32, n_k/2) hits zero for a single-frame pool; the floor of one atom
// keeps such a dictionary trainable.
inline int auto_class_atoms(Eigen::Index n_k) {
    return static_cast<int>(std::max<Eigen::Index>(1, std::min<Eigen::Index>(32, n_k / 2)));
}

}  // namespace detail

// Trains on precomputed descriptors: one row per frame, frame_labels in
// 1..num_classes. Entry point for evaluation drivers that describe frames
// once and retrain many times. A non-null `selection` supplies boosting
// weights computed elsewhere (they depend on neither the selection rate
// nor the sparsity level, so grid drivers reuse one pass per fold).
inline TwoPhaseModel train_on_descriptors(const Mat& X, const std::vector<int>& frame_labels,
                                          int num_classes, const TrainParams& params,
                                          const Vec* selection = nullptr) {
    params.validate();
    if (num_classes < 2) throw zc_error("train: need at least 2 classes");
    if (X.rows() < 1) throw zc_error("train: no frames");
    {
        std::vector<int> counts(static_cast<std::size_t>(num_classes), 0);
        for (const int c : frame_labels) {
            if (c < 1 || c > num_classes) throw zc_error("train: frame label out of range");
            ++counts[static_cast<std::size_t>(c - 1)];
        }
        for (int c = 1; c <= num_classes; ++c)
            if (counts[static_cast<std::size_t>(c - 1)] < 2)
                throw zc_error("train: class " + std::to_string(c) +
                               " has fewer than 2 frames");
    }

    // Boosting only matters when some frames can be relabeled; rate 1 and
    // the disabled-zeroth mode keep everything, identically.
    const bool keep_all = !params.use_zeroth || params.select_rate == 1.0;
    FramePartition part;
    if (keep_all)
        part = partition_keep_all(frame_labels, num_classes);
    else if (selection != nullptr)
        part = partition_from_weights(*selection, frame_labels, num_classes,
                                      params.select_rate);
    else
        part = partition_frames(X, frame_labels, num_classes, params.select_rate,
                                params.boost_rounds, params.seed);

    // First-phase dictionary on the discriminative frames only, taken in
    // ascending frame order across classes.
    std::vector<int> disc_all;
    for (const auto& lst : part.discriminative)
        disc_all.insert(disc_all.end(), lst.begin(), lst.end());
    std::sort(disc_all.begin(), disc_all.end());

    Mat Y_disc(X.cols(), static_cast<Eigen::Index>(disc_all.size()));
    for (std::size_t t = 0; t < disc_all.size(); ++t)
        Y_disc.col(static_cast<Eigen::Index>(t)) = X.row(disc_all[t]).transpose();

    TwoPhaseModel model;
    model.params = params;
    model.num_classes = num_classes;

    const int m_first = params.first_atoms > 0
                            ? params.first_atoms
                            : detail::auto_first_atoms(Y_disc.cols());
    model.first_dict =
        ksvd_train(Y_disc, m_first, params.sparsity, params.ksvd_iters, params.seed)
            .dictionary;

    // Error features for every training frame, discriminative or not.
    const Mat E = error_features_batch(X.transpose(), model.first_dict, params.sparsity);

    // One dictionary per class on that class's feature columns; class
    // seeds derive from the master seed so runs stay reproducible.
    model.class_dicts.resize(static_cast<std::size_t>(num_classes) + 1);
    for (int k = 0; k <= num_classes; ++k) {
        const std::vector<int>& members =
            k == 0 ? part.zeroth : part.discriminative[static_cast<std::size_t>(k - 1)];
        if (k == 0 && members.empty()) continue;
        Mat Y_k(E.rows(), static_cast<Eigen::Index>(members.size()));
        for (std::size_t t = 0; t < members.size(); ++t)
            Y_k.col(static_cast<Eigen::Index>(t)) = E.col(members[t]);
        const int m_k = params.class_atoms > 0 ? params.class_atoms
                                               : detail::auto_class_atoms(Y_k.cols());
        model.class_dicts[static_cast<std::size_t>(k)] =
            ksvd_train(Y_k, m_k, params.sparsity, params.ksvd_iters,
                       params.seed + 1 + static_cast<std::uint64_t>(k))
                .dictionary;
    }

    detail::build_concat(model);
    return model;
}

inline TwoPhaseModel train(const std::vector<VideoRecord>& videos, const TrainParams& params) {
    params.validate();
    if (videos.empty()) throw zc_error("train: no videos");
    int num_classes = 0;
    std::size_t n = 0;
    for (const auto& v : videos) {
        num_classes = std::max(num_classes, v.class_label);
        n += v.frames.size();
    }
    Mat X(static_cast<Eigen::Index>(n), params.descriptor_length);
    std::vector<int> labels;
    labels.reserve(n);
    Eigen::Index row = 0;
    for (const auto& v : videos)
        for (const auto& frame : v.frames) {
            X.row(row++) =
                describe_mask(frame, params.descriptor_length, params.order).transpose();
            labels.push_back(v.class_label);
        }
    return train_on_descriptors(X, labels, num_classes, params);
}

// Eq.-style frame rule: code the error feature against the concatenated
// dictionary, measure the residual kept by each class's coefficients, and
// label by the smallest residual, exact ties toward the lowest class.
inline FrameVerdict classify_frame(const Vec& x, const TwoPhaseModel& model) {
    const int K = model.num_classes;
    const SparseCode code = omp_encode(x, model.concat_dict, model.params.sparsity);

    FrameVerdict verdict;
    verdict.residuals = Vec::Constant(K + 1, x.squaredNorm());
    if (!model.has_zeroth())
        verdict.residuals(0) = std::numeric_limits<double>::infinity();

    // Classes present in the support get an explicit residual; the rest
    // keep ||x||^2 (their coefficient slice of the code is zero).
    std::vector<char> present(static_cast<std::size_t>(K) + 1, 0);
    for (const int atom : code.support)
        present[static_cast<std::size_t>(model.atom_classes[static_cast<std::size_t>(atom)])] = 1;
    for (int k = 0; k <= K; ++k) {
        if (!present[static_cast<std::size_t>(k)]) continue;
        Vec recon = Vec::Zero(x.size());
        for (std::size_t t = 0; t < code.support.size(); ++t) {
            const int atom = code.support[t];
            if (model.atom_classes[static_cast<std::size_t>(atom)] != k) continue;
            recon += model.concat_dict.atoms.col(atom) *
                     code.coeffs(static_cast<Eigen::Index>(t));
        }
        verdict.residuals(k) = (x - recon).squaredNorm();
    }

    verdict.label = 0;
    double best = verdict.residuals(0);
    for (int k = 1; k <= K; ++k)
        if (verdict.residuals(k) < best) {
            best = verdict.residuals(k);
            verdict.label = k;
        }
    return verdict;
}

// Pools per-frame residuals over classes 1..K, skipping zeroth-labeled
// frames; when every frame is zeroth-labeled the pool covers all frames.
inline VideoVerdict pool_verdicts(const std::vector<FrameVerdict>& verdicts,
                                  int num_classes, Pooling pooling) {
    if (verdicts.empty()) throw zc_error("classify_video: no frames");
    VideoVerdict out;
    std::vector<int> active;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        if (verdicts[i].label == 0)
            ++out.zeroth_frames;
        else
            active.push_back(static_cast<int>(i));
    }
    if (active.empty()) {
        out.fallback = true;
        active.resize(verdicts.size());
        for (std::size_t i = 0; i < verdicts.size(); ++i) active[i] = static_cast<int>(i);
    }

    out.pooled = Vec::Constant(num_classes + 1, std::numeric_limits<double>::infinity());
    for (int k = 1; k <= num_classes; ++k) {
        double acc = pooling == Pooling::max ? std::numeric_limits<double>::infinity() : 0.0;
        for (const int i : active) {
            const double r = verdicts[static_cast<std::size_t>(i)].residuals(k);
            acc = pooling == Pooling::max ? std::min(acc, r) : acc + r;
        }
        out.pooled(k) = acc;
    }

    out.label = 1;
    for (int k = 2; k <= num_classes; ++k)
        if (out.pooled(k) < out.pooled(out.label)) out.label = k;
    return out;
}

// frames holds one error feature per COLUMN, matching error_features_batch.
inline VideoVerdict classify_video_detailed(const Mat& frames, const TwoPhaseModel& model,
                                            Pooling pooling) {
    std::vector<FrameVerdict> verdicts;
    verdicts.reserve(static_cast<std::size_t>(frames.cols()));
    for (Eigen::Index j = 0; j < frames.cols(); ++j)
        verdicts.push_back(classify_frame(frames.col(j), model));
    return pool_verdicts(verdicts, model.num_classes, pooling);
}

inline int classify_video(const Mat& frames, const TwoPhaseModel& model, Pooling pooling) {
    return classify_video_detailed(frames, model, pooling).label;
}

// Full test-time pipeline for one video: descriptors, error features
// against the first-phase dictionary, then pooled classification.
inline VideoVerdict predict_video(const VideoRecord& video, const TwoPhaseModel& model,
                                  Pooling pooling) {
    if (video.frames.empty()) throw zc_error("predict: video has no frames");
    Mat desc(model.params.descriptor_length, static_cast<Eigen::Index>(video.frames.size()));
    for (std::size_t t = 0; t < video.frames.size(); ++t)
        desc.col(static_cast<Eigen::Index>(t)) = describe_mask(
            video.frames[t], model.params.descriptor_length, model.params.order);
    const Mat features =
        error_features_batch(desc, model.first_dict, model.params.sparsity);
    return classify_video_detailed(features, model, pooling);
}

inline nlohmann::ordered_json params_to_json(const TrainParams& p) {
    nlohmann::ordered_json j;
    j["descriptor_length"] = p.descriptor_length;
    j["order"] = p.order;
    j["sparsity"] = p.sparsity;
    j["select_rate"] = p.select_rate;
    j["boost_rounds"] = p.boost_rounds;
    j["ksvd_iters"] = p.ksvd_iters;
    j["first_atoms"] = p.first_atoms;
    j["class_atoms"] = p.class_atoms;
    j["seed"] = p.seed;
    j["use_zeroth"] = p.use_zeroth;
    return j;
}

inline TrainParams params_from_json(const nlohmann::json& j) {
    TrainParams p;
    p.descriptor_length = j.at("descriptor_length").get<int>();
    p.order = j.at("order").get<double>();
    p.sparsity = j.at("sparsity").get<int>();
    p.select_rate = j.at("select_rate").get<double>();
    p.boost_rounds = j.at("boost_rounds").get<int>();
    p.ksvd_iters = j.at("ksvd_iters").get<int>();
    p.first_atoms = j.at("first_atoms").get<int>();
    p.class_atoms = j.at("class_atoms").get<int>();
    p.seed = j.at("seed").get<std::uint64_t>();
    p.use_zeroth = j.at("use_zeroth").get<bool>();
    return p;
}

inline nlohmann::ordered_json model_to_json(const TwoPhaseModel& model) {
    nlohmann::ordered_json j;
    j["version"] = kModelFormatVersion;
    j["num_classes"] = model.num_classes;
    j["params"] = params_to_json(model.params);
    j["first_dict"] = dictionary_to_json(model.first_dict);
    nlohmann::ordered_json dicts = nlohmann::ordered_json::array();
    for (const auto& d : model.class_dicts)
        dicts.push_back(d.atoms.size() == 0 ? nlohmann::ordered_json(nullptr)
                                            : dictionary_to_json(d));
    j["class_dicts"] = dicts;
    j["atom_classes"] = model.atom_classes;
    return j;
}

inline TwoPhaseModel model_from_json(const nlohmann::json& j) {
    if (!j.contains("version") || j["version"].get<int>() != kModelFormatVersion)
        throw zc_error("model document: unsupported version");
    TwoPhaseModel model;
    model.num_classes = j.at("num_classes").get<int>();
    model.params = params_from_json(j.at("params"));
    model.first_dict = dictionary_from_json(j.at("first_dict"));
    const auto& dicts = j.at("class_dicts");
    if (static_cast<int>(dicts.size()) != model.num_classes + 1)
        throw zc_error("model document: class dictionary count mismatch");
    model.class_dicts.resize(dicts.size());
    for (std::size_t k = 0; k < dicts.size(); ++k)
        if (!dicts[k].is_null())
            model.class_dicts[k] = dictionary_from_json(dicts[k]);
    detail::build_concat(model);
    const auto stored = j.at("atom_classes").get<std::vector<int>>();
    if (stored != model.atom_classes)
        throw zc_error("model document: atom index map is inconsistent");
    return model;
}

inline void save_model(const TwoPhaseModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw zc_error("cannot write model file: " + path);
    out << model_to_json(model).dump(2) << '\n';
}

inline TwoPhaseModel load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw zc_error("cannot read model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw zc_error("model file is not valid JSON: " + std::string(e.what()));
    }
    return model_from_json(j);
}

}  // namespace zeroclass

#endif  // ZEROCLASS_MODEL_HPP
