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
#include <cmath>
#include <limits>
#include <vector>

#include "zeroclass/model.hpp"
#include "zeroclass/synthetic.hpp"

using namespace zeroclass;

namespace {

Dictionary random_dictionary(Rng& rng, int dim, int m) {
    Dictionary d;
    d.atoms.resize(dim, m);
    for (int c = 0; c < m; ++c) {
        for (int r = 0; r < dim; ++r) d.atoms(r, c) = rng.uniform(-1.0, 1.0);
        d.atoms.col(c).normalize();
    }
    return d;
}

// Hand-assembled model over random class dictionaries; the first-phase
// dictionary is irrelevant to classify_frame and left empty.
TwoPhaseModel toy_model(Rng& rng, int dim, std::vector<int> sizes, int sparsity,
                        bool with_zeroth) {
    TwoPhaseModel model;
    model.num_classes = static_cast<int>(sizes.size()) - 1;
    model.params.sparsity = sparsity;
    model.class_dicts.resize(sizes.size());
    for (std::size_t k = 0; k < sizes.size(); ++k) {
        if (k == 0 && !with_zeroth) continue;
        model.class_dicts[k] = random_dictionary(rng, dim, sizes[k]);
    }
    detail::build_concat(model);
    return model;
}

// Random plausible training features: per-class mean plus jitter.
struct DescFixture {
    Mat X;
    std::vector<int> labels;
};

DescFixture random_features(Rng& rng, int num_classes, int per_class, int dim) {
    DescFixture f;
    f.X.resize(num_classes * per_class, dim);
    int row = 0;
    for (int c = 1; c <= num_classes; ++c) {
        Vec center(dim);
        for (int r = 0; r < dim; ++r) center(r) = rng.uniform(-1.0, 1.0);
        for (int i = 0; i < per_class; ++i, ++row) {
            for (int r = 0; r < dim; ++r)
                f.X(row, r) = center(r) + 0.1 * rng.uniform(-1.0, 1.0);
            f.labels.push_back(c);
        }
    }
    return f;
}

FrameVerdict verdict_row(std::initializer_list<double> residuals_1_to_k) {
    FrameVerdict v;
    v.residuals.resize(static_cast<Eigen::Index>(residuals_1_to_k.size()) + 1);
    v.residuals(0) = std::numeric_limits<double>::infinity();
    Eigen::Index k = 1;
    for (const double r : residuals_1_to_k) v.residuals(k++) = r;
    v.label = 1;
    for (Eigen::Index q = 1; q < v.residuals.size(); ++q)
        if (v.residuals(q) < v.residuals(v.label)) v.label = static_cast<int>(q);
    return v;
}

TrainParams small_params() {
    TrainParams p;
    p.descriptor_length = 12;
    p.sparsity = 4;
    p.select_rate = 0.3;
    p.boost_rounds = 8;
    p.ksvd_iters = 4;
    p.seed = 3;
    return p;
}

}  // namespace

TEST_CASE("default parameters are the documented operating point", "[model]") {
    const TrainParams p;
    REQUIRE_NOTHROW(p.validate());
    REQUIRE(p.select_rate == 0.2);
    REQUIRE(p.sparsity == 15);
    REQUIRE(p.descriptor_length == 100);
    REQUIRE(p.order == 0.9);
}

TEST_CASE("trained model satisfies its structural invariants", "[model]") {
    Rng rng(42);
    const DescFixture f = random_features(rng, 3, 20, 12);
    const TwoPhaseModel model = train_on_descriptors(f.X, f.labels, 3, small_params());

    REQUIRE(model.num_classes == 3);
    REQUIRE(model.class_dicts.size() == 4);
    REQUIRE(model.has_zeroth());

    Eigen::Index total = 0;
    for (const auto& d : model.class_dicts) total += d.atoms.cols();
    REQUIRE(model.concat_dict.atoms.cols() == total);
    REQUIRE(model.atom_classes.size() == static_cast<std::size_t>(total));

    // The index map partitions the columns class by class.
    for (int k = 0; k <= 3; ++k) {
        const auto count = std::count(model.atom_classes.begin(),
                                      model.atom_classes.end(), k);
        REQUIRE(count == model.class_dicts[static_cast<std::size_t>(k)].atoms.cols());
    }
    for (Eigen::Index c = 0; c < model.concat_dict.atoms.cols(); ++c)
        REQUIRE(std::abs(model.concat_dict.atoms.col(c).norm() - 1.0) < 1e-9);
    REQUIRE(model.first_dict.dim() == 12);
}

TEST_CASE("rate one builds no zeroth dictionary", "[model]") {
    Rng rng(43);
    const DescFixture f = random_features(rng, 2, 12, 10);
    TrainParams p = small_params();
    p.descriptor_length = 10;
    p.select_rate = 1.0;
    const TwoPhaseModel rate_one = train_on_descriptors(f.X, f.labels, 2, p);
    REQUIRE_FALSE(rate_one.has_zeroth());
    REQUIRE(std::count(rate_one.atom_classes.begin(), rate_one.atom_classes.end(), 0) == 0);

    TrainParams q = p;
    q.select_rate = 0.5;
    q.use_zeroth = false;
    const TwoPhaseModel disabled = train_on_descriptors(f.X, f.labels, 2, q);
    REQUIRE(disabled.first_dict.atoms == rate_one.first_dict.atoms);
    REQUIRE(disabled.concat_dict.atoms == rate_one.concat_dict.atoms);
}

TEST_CASE("an exact class atom claims its class", "[model]") {
    Rng rng(44);
    const TwoPhaseModel model = toy_model(rng, 8, {2, 3, 4}, 3, true);
    const Vec x = model.class_dicts[2].atoms.col(1);
    const FrameVerdict v = classify_frame(x, model);
    REQUIRE(v.residuals(2) < 1e-18);
    REQUIRE(v.label == 2);
    REQUIRE(v.residuals.size() == 3);
    for (Eigen::Index k = 0; k < 3; ++k) REQUIRE(v.residuals(k) >= 0.0);
}

TEST_CASE("the zero feature falls to the lowest class", "[model]") {
    Rng rng(45);
    const TwoPhaseModel with0 = toy_model(rng, 6, {2, 2, 2}, 2, true);
    const FrameVerdict a = classify_frame(Vec::Zero(6), with0);
    REQUIRE(a.label == 0);
    REQUIRE(a.residuals(0) == 0.0);
    REQUIRE(a.residuals(1) == 0.0);

    const TwoPhaseModel without0 = toy_model(rng, 6, {0, 2, 2}, 2, false);
    const FrameVerdict b = classify_frame(Vec::Zero(6), without0);
    REQUIRE(b.label == 1);
    REQUIRE(std::isinf(b.residuals(0)));
}

TEST_CASE("frame residuals match an independent recomputation", "[model]") {
    Rng rng(46);
    for (int trial = 0; trial < 25; ++trial) {
        const TwoPhaseModel model = toy_model(rng, 10, {3, 4, 5, 2}, 4, true);
        Vec x(10);
        for (int r = 0; r < 10; ++r) x(r) = rng.uniform(-1.0, 1.0);
        const FrameVerdict v = classify_frame(x, model);

        const SparseCode code = omp_encode(x, model.concat_dict, 4);
        const double full = (x - sparse_reconstruct(code, model.concat_dict)).squaredNorm();
        Vec sum_recon = Vec::Zero(10);
        for (int k = 0; k <= 3; ++k) {
            double recon[10] = {0, 0, 0, 0, 0, 0, 0, 0, 0, 0};
            for (std::size_t t = 0; t < code.support.size(); ++t) {
                const int atom = code.support[t];
                if (model.atom_classes[static_cast<std::size_t>(atom)] != k) continue;
                for (int r = 0; r < 10; ++r)
                    recon[r] += model.concat_dict.atoms(r, atom) *
                                code.coeffs(static_cast<Eigen::Index>(t));
            }
            double rk = 0.0;
            for (int r = 0; r < 10; ++r) {
                const double d = x(r) - recon[r];
                rk += d * d;
                sum_recon(r) += recon[r];
            }
            REQUIRE(v.residuals(k) == Catch::Approx(rk).margin(1e-12));
            REQUIRE(v.residuals(k) >= full - 1e-12);
        }
        // The class slices of the code reassemble the full reconstruction.
        REQUIRE((sum_recon - sparse_reconstruct(code, model.concat_dict))
                    .lpNorm<Eigen::Infinity>() < 1e-12);
        REQUIRE(v.residuals(v.label) == v.residuals.minCoeff());
    }
}

TEST_CASE("pooling follows the hand-computed rule", "[model]") {
    const std::vector<FrameVerdict> verdicts = {verdict_row({1.0, 5.0}),
                                                verdict_row({6.0, 2.0})};
    const VideoVerdict vmax = pool_verdicts(verdicts, 2, Pooling::max);
    REQUIRE(vmax.pooled(1) == 1.0);
    REQUIRE(vmax.pooled(2) == 2.0);
    REQUIRE(vmax.label == 1);

    // Sums tie at 7.0; the tie falls to the lower class index.
    const VideoVerdict vsum = pool_verdicts(verdicts, 2, Pooling::sum);
    REQUIRE(vsum.pooled(1) == 7.0);
    REQUIRE(vsum.pooled(2) == 7.0);
    REQUIRE(vsum.label == 1);
}

TEST_CASE("unanimous frames keep their class", "[model]") {
    const std::vector<FrameVerdict> verdicts = {verdict_row({4.0, 5.0, 1.0}),
                                                verdict_row({6.0, 7.0, 2.0}),
                                                verdict_row({3.0, 9.0, 0.5})};
    for (const auto pooling : {Pooling::max, Pooling::sum}) {
        const VideoVerdict v = pool_verdicts(verdicts, 3, pooling);
        REQUIRE(v.label == 3);
        REQUIRE(v.zeroth_frames == 0);
    }
}

TEST_CASE("zeroth filtering changes the outcome", "[model]") {
    // Frame A is zeroth-labeled yet carries the smallest class-2 residual;
    // frame B prefers class 1. Filtering drops A and class 1 wins; keeping
    // A would hand the video to class 2.
    FrameVerdict a;
    a.residuals.resize(3);
    a.residuals << 0.01, 10.0, 0.1;
    a.label = 0;
    FrameVerdict b;
    b.residuals.resize(3);
    b.residuals << 5.0, 1.0, 5.0;
    b.label = 1;

    const VideoVerdict filtered = pool_verdicts({a, b}, 2, Pooling::max);
    REQUIRE(filtered.label == 1);
    REQUIRE(filtered.zeroth_frames == 1);
    REQUIRE_FALSE(filtered.fallback);

    FrameVerdict a_kept = a;
    a_kept.label = 2;  // same residuals, no longer zeroth
    const VideoVerdict unfiltered = pool_verdicts({a_kept, b}, 2, Pooling::max);
    REQUIRE(unfiltered.label == 2);
    REQUIRE(filtered.label != unfiltered.label);
}

TEST_CASE("all-zeroth videos fall back to pooling every frame", "[model]") {
    FrameVerdict a;
    a.residuals.resize(3);
    a.residuals << 0.1, 3.0, 1.0;
    a.label = 0;
    FrameVerdict b;
    b.residuals.resize(3);
    b.residuals << 0.2, 4.0, 0.5;
    b.label = 0;
    for (const auto pooling : {Pooling::max, Pooling::sum}) {
        const VideoVerdict v = pool_verdicts({a, b}, 2, pooling);
        REQUIRE(v.fallback);
        REQUIRE(v.zeroth_frames == 2);
        REQUIRE(v.label == 2);  // class-2 residuals dominate class 1 in both rules
    }
}

TEST_CASE("scaling all residuals preserves the video label", "[model]") {
    Rng rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<FrameVerdict> verdicts;
        for (int i = 0; i < 6; ++i) {
            FrameVerdict v;
            v.residuals.resize(4);
            for (int k = 0; k < 4; ++k) v.residuals(k) = rng.uniform(0.0, 5.0);
            v.label = 1 + static_cast<int>(rng.below(3));
            verdicts.push_back(v);
        }
        std::vector<FrameVerdict> scaled = verdicts;
        for (auto& v : scaled) v.residuals *= 3.7;
        for (const auto pooling : {Pooling::max, Pooling::sum})
            REQUIRE(pool_verdicts(verdicts, 3, pooling).label ==
                    pool_verdicts(scaled, 3, pooling).label);
    }
}

TEST_CASE("model serialization round-trips and is deterministic", "[model]") {
    Rng rng(48);
    const DescFixture f = random_features(rng, 2, 14, 12);
    const TwoPhaseModel m1 = train_on_descriptors(f.X, f.labels, 2, small_params());
    const TwoPhaseModel m2 = train_on_descriptors(f.X, f.labels, 2, small_params());
    REQUIRE(model_to_json(m1).dump() == model_to_json(m2).dump());

    const std::string text = model_to_json(m1).dump();
    const TwoPhaseModel back = model_from_json(nlohmann::json::parse(text));
    REQUIRE(back.first_dict.atoms == m1.first_dict.atoms);
    REQUIRE(back.concat_dict.atoms == m1.concat_dict.atoms);
    REQUIRE(back.atom_classes == m1.atom_classes);
    REQUIRE(back.num_classes == m1.num_classes);
    REQUIRE(back.params.seed == m1.params.seed);

    Vec x(12);
    for (int r = 0; r < 12; ++r) x(r) = rng.uniform(-1.0, 1.0);
    const Vec feat = error_features(x, m1.first_dict, m1.params.sparsity);
    REQUIRE(classify_frame(feat, m1).label == classify_frame(feat, back).label);

    nlohmann::json bad = nlohmann::json::parse(text);
    bad["version"] = 99;
    REQUIRE_THROWS_AS(model_from_json(bad), zc_error);
    nlohmann::json tampered = nlohmann::json::parse(text);
    tampered["atom_classes"][0] = 7;
    REQUIRE_THROWS_AS(model_from_json(tampered), zc_error);
}

TEST_CASE("end-to-end training on silhouettes is deterministic", "[model]") {
    SynthConfig cfg;
    cfg.num_classes = 2;
    cfg.videos_per_class = 3;
    cfg.frames_per_video = 8;
    cfg.seed = 77;
    const SyntheticDataset data = generate_synthetic(cfg);
    TrainParams p;
    p.sparsity = 5;
    p.select_rate = 0.5;
    p.boost_rounds = 10;
    p.ksvd_iters = 4;
    p.seed = 9;
    const TwoPhaseModel m1 = train(data.videos, p);
    const TwoPhaseModel m2 = train(data.videos, p);
    REQUIRE(model_to_json(m1).dump() == model_to_json(m2).dump());
    REQUIRE(m1.first_dict.dim() == p.descriptor_length);

    const VideoVerdict v = predict_video(data.videos.front(), m1, Pooling::max);
    REQUIRE(v.label >= 1);
    REQUIRE(v.label <= 2);
}

TEST_CASE("training rejects degenerate inputs", "[model]") {
    Rng rng(49);
    const DescFixture f = random_features(rng, 2, 10, 8);
    TrainParams p = small_params();
    p.descriptor_length = 8;
    REQUIRE_THROWS_AS(train_on_descriptors(f.X, f.labels, 1, p), zc_error);

    DescFixture single = f;
    for (auto& l : single.labels) l = std::min(l, 2);
    single.labels.back() = 3;  // class 3 has exactly one frame
    REQUIRE_THROWS_AS(train_on_descriptors(single.X, single.labels, 3, p), zc_error);

    TrainParams bad = p;
    bad.select_rate = 0.0;
    REQUIRE_THROWS_AS(train_on_descriptors(f.X, f.labels, 2, bad), zc_error);
    bad = p;
    bad.sparsity = 0;
    REQUIRE_THROWS_AS(train_on_descriptors(f.X, f.labels, 2, bad), zc_error);
}
