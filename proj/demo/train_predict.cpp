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
 * Minimal library walkthrough: generate a synthetic silhouette dataset,
 * train a two-phase model, and classify one video.
 *****************************************************************************/
#include <iostream>

#include "zeroclass/zeroclass.hpp"

namespace zc = zeroclass;

int main() {
    // A small dataset: 3 action classes, 4 videos each, 12 frames per video.
    zc::SynthConfig cfg;
    cfg.num_classes = 3;
    cfg.videos_per_class = 4;
    cfg.frames_per_video = 12;
    cfg.shared_frame_rate = 0.2;
    cfg.noise_frame_rate = 0.1;
    cfg.seed = 42;
    const zc::SyntheticDataset data = zc::generate_synthetic(cfg);

    zc::TrainParams params;
    params.descriptor_length = 40;
    params.sparsity = 6;
    params.select_rate = 0.3;
    params.boost_rounds = 30;
    params.ksvd_iters = 8;
    params.seed = 42;

    const zc::TwoPhaseModel model = zc::train(data.videos, params);
    std::cout << "trained on " << data.videos.size() << " videos, "
              << model.concat_dict.atoms.cols() << " atoms total, zeroth pool "
              << (model.has_zeroth() ? "present" : "empty") << "\n";

    // Classify the first video of each class with both pooling rules.
    for (int c = 0; c < cfg.num_classes; ++c) {
        const zc::VideoRecord& video =
            data.videos[static_cast<std::size_t>(c * cfg.videos_per_class)];
        const zc::VideoVerdict vmax = zc::predict_video(video, model, zc::Pooling::max);
        const zc::VideoVerdict vsum = zc::predict_video(video, model, zc::Pooling::sum);
        std::cout << video.id << ": true " << video.class_label << ", max-pool "
                  << vmax.label << ", sum-pool " << vsum.label << ", "
                  << vmax.zeroth_frames << " frames filtered\n";
    }
    return 0;
}
