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
 * Command-line front end: synthetic dataset generation, descriptor dumps,
 * training, prediction, leave-one-out evaluation, and parameter sweeps.
 * Exit codes: 0 success, 2 usage or parameter validation, 1 runtime error.
 *****************************************************************************/
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zeroclass/zeroclass.hpp"

namespace zc = zeroclass;
namespace fs = std::filesystem;

namespace {

std::string g17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Reads one directory of mask images in natural filename order, skipping
// all-background frames the same way dataset loading does.
zc::VideoRecord load_video_dir(const std::string& dir) {
    if (!fs::is_directory(dir)) throw zc::zc_error("video directory not found: " + dir);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && zc::detail::mask_extension(e.path()))
            files.push_back(e.path().filename().string());
    std::sort(files.begin(), files.end(), zc::natural_less);

    zc::VideoRecord rec;
    rec.id = fs::path(dir).filename().string();
    for (const auto& f : files) {
        zc::SilhouetteMask m = zc::read_mask((fs::path(dir) / f).string());
        bool any = false;
        for (auto b : m.bits)
            if (b) { any = true; break; }
        if (!any) {
            std::cerr << "warning: skipping all-background frame "
                      << (fs::path(dir) / f).string() << "\n";
            continue;
        }
        rec.frames.push_back(std::move(m));
    }
    if (rec.frames.empty()) throw zc::zc_error("no usable frames in " + dir);
    return rec;
}

const char* kind_name(zc::FrameKind k) {
    switch (k) {
        case zc::FrameKind::shared: return "shared";
        case zc::FrameKind::noise: return "noise";
        default: return "discriminative";
    }
}

struct CliOptions {
    zc::TrainParams params;
    std::string pooling = "max";
    std::string out;

    // synth
    int classes = 5;
    int videos = 10;
    int frames = 30;
    double shared = 0.2;
    double noise = 0.1;
    std::string format = "pgm";

    // inputs
    std::string input;
    std::string model_path;
    bool actor_folds = false;

    // sweep grids
    std::vector<double> rates;
    std::vector<int> sparsities;
};

int cmd_synth(const CliOptions& opt) {
    if (opt.out.empty()) throw zc::zc_error("synth: --out DIR is required");
    zc::SynthConfig cfg;
    cfg.num_classes = opt.classes;
    cfg.videos_per_class = opt.videos;
    cfg.frames_per_video = opt.frames;
    cfg.shared_frame_rate = opt.shared;
    cfg.noise_frame_rate = opt.noise;
    cfg.seed = opt.params.seed;
    const zc::SyntheticDataset ds = zc::generate_synthetic(cfg);
    zc::save_dataset(opt.out, ds.videos, opt.format);

    const fs::path kinds_path = fs::path(opt.out) / "frame_kinds.csv";
    std::ofstream kinds(kinds_path);
    if (!kinds) throw zc::zc_error("cannot write " + kinds_path.string());
    kinds << "video_id,frame_index,kind\n";
    for (std::size_t v = 0; v < ds.videos.size(); ++v)
        for (std::size_t t = 0; t < ds.kinds[v].size(); ++t)
            kinds << ds.videos[v].id << ',' << t << ',' << kind_name(ds.kinds[v][t])
                  << '\n';

    std::cout << "wrote " << ds.videos.size() << " videos (" << cfg.num_classes
              << " classes) under " << opt.out << "\n";
    return 0;
}

int cmd_describe(const CliOptions& opt) {
    const zc::VideoRecord video = load_video_dir(opt.input);
    std::ofstream file;
    if (!opt.out.empty()) {
        file.open(opt.out);
        if (!file) throw zc::zc_error("cannot write " + opt.out);
    }
    std::ostream& os = opt.out.empty() ? std::cout : file;

    os << "frame";
    for (int i = 1; i <= opt.params.descriptor_length; ++i) os << ",d" << i;
    os << '\n';
    for (std::size_t t = 0; t < video.frames.size(); ++t) {
        const zc::Vec d = zc::describe_mask(video.frames[t], opt.params.descriptor_length,
                                            opt.params.order);
        os << t;
        for (Eigen::Index i = 0; i < d.size(); ++i) os << ',' << g17(d(i));
        os << '\n';
    }
    return 0;
}

int cmd_train(const CliOptions& opt) {
    const auto videos = zc::load_dataset(opt.input);
    const zc::TwoPhaseModel model = zc::train(videos, opt.params);
    const std::string path = opt.out.empty() ? "model.json" : opt.out;
    zc::save_model(model, path);
    std::cout << "trained " << model.num_classes << "-class model ("
              << model.concat_dict.atoms.cols() << " atoms, zeroth "
              << (model.has_zeroth() ? "on" : "off") << ") -> " << path << "\n";
    return 0;
}

int cmd_predict(const CliOptions& opt) {
    const zc::TwoPhaseModel model = zc::load_model(opt.model_path);
    const zc::VideoRecord video = load_video_dir(opt.input);
    const zc::VideoVerdict verdict =
        zc::predict_video(video, model, zc::parse_pooling(opt.pooling));
    std::cout << "label " << verdict.label << "\n";
    for (int k = 1; k <= model.num_classes; ++k)
        std::cout << "residual " << k << " " << g17(verdict.pooled(k)) << "\n";
    std::cout << "zeroth_frames " << verdict.zeroth_frames << "\n";
    if (verdict.fallback) std::cout << "fallback true\n";
    return 0;
}

int cmd_eval(const CliOptions& opt) {
    const auto videos = zc::load_dataset(opt.input);
    const zc::EvalReport report = zc::loocv(videos, opt.params,
                                            zc::parse_pooling(opt.pooling),
                                            opt.actor_folds);
    const fs::path dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);
    fs::create_directories(dir);
    zc::write_report_json(report, (dir / "report.json").string());
    zc::write_predictions_csv(report, (dir / "predictions.csv").string());
    zc::write_confusion_csv(report, (dir / "confusion.csv").string());
    std::cout << "accuracy " << g17(report.accuracy) << " over " << report.folds.size()
              << " folds -> " << dir.string() << "\n";
    return 0;
}

int cmd_sweep(const CliOptions& opt) {
    const auto videos = zc::load_dataset(opt.input);
    const std::vector<double> rates =
        opt.rates.empty() ? std::vector<double>{opt.params.select_rate} : opt.rates;
    const std::vector<int> sparsities =
        opt.sparsities.empty() ? std::vector<int>{opt.params.sparsity} : opt.sparsities;
    const zc::GridSearchResult grid = zc::grid_search(
        videos, rates, sparsities, opt.params, zc::parse_pooling(opt.pooling));

    const std::string path = opt.out.empty() ? "sweep.csv" : opt.out;
    if (rates.size() > 1 && sparsities.size() == 1)
        zc::write_sweep_csv(zc::rate_sweep_table(grid), path);
    else if (sparsities.size() > 1 && rates.size() == 1)
        zc::write_sweep_csv(zc::sparsity_sweep_table(grid), path);
    else
        zc::write_grid_csv(grid, path);
    std::cout << "best rate " << g17(grid.best.rate) << " sparsity "
              << grid.best.sparsity << " accuracy " << g17(grid.best.accuracy)
              << " -> " << path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"silhouette action classification with two-phase dictionaries and a zeroth class"};
    app.require_subcommand(1);

    CliOptions opt;
    app.add_option("--seed", opt.params.seed, "master RNG seed");
    app.add_option("--rate", opt.params.select_rate,
                   "discriminative selection rate R in (0, 1]");
    app.add_option("--sparsity", opt.params.sparsity, "sparsity level C");
    app.add_option("--length", opt.params.descriptor_length, "descriptor length L");
    app.add_option("--order", opt.params.order, "fractional transform order p");
    app.add_option("--rounds", opt.params.boost_rounds, "boosting rounds T");
    app.add_option("--iters", opt.params.ksvd_iters, "dictionary learning iterations");
    app.add_option("--atoms", opt.params.first_atoms,
                   "first-phase atom count (0 = automatic)");
    app.add_option("--class-atoms", opt.params.class_atoms,
                   "per-class atom count (0 = automatic)");
    app.add_option("--pooling", opt.pooling, "video vote pooling")
        ->check(CLI::IsMember({"max", "sum"}));
    app.add_flag_callback("--no-zeroth", [&opt] { opt.params.use_zeroth = false; },
                          "disable the zeroth class (keep every frame)");
    app.add_option("--out", opt.out, "output file or directory");

    CLI::App* synth = app.add_subcommand("synth", "write a synthetic silhouette dataset");
    synth->fallthrough();
    synth->add_option("--classes", opt.classes, "number of classes");
    synth->add_option("--videos", opt.videos, "videos per class");
    synth->add_option("--frames", opt.frames, "frames per video");
    synth->add_option("--shared", opt.shared, "shared-pose frame rate in [0, 1)");
    synth->add_option("--noise", opt.noise, "noise frame rate in [0, 1)");
    synth->add_option("--format", opt.format, "image format")
        ->check(CLI::IsMember({"pgm", "png"}));

    CLI::App* describe =
        app.add_subcommand("describe", "dump frame descriptors of one video as CSV");
    describe->fallthrough();
    describe->add_option("--input", opt.input, "directory of mask images")->required();

    CLI::App* train = app.add_subcommand("train", "train a model on a dataset directory");
    train->fallthrough();
    train->add_option("--input", opt.input, "dataset root directory")->required();

    CLI::App* predict =
        app.add_subcommand("predict", "classify one video directory with a trained model");
    predict->fallthrough();
    predict->add_option("--model", opt.model_path, "model JSON file")->required();
    predict->add_option("--input", opt.input, "directory of mask images")->required();

    CLI::App* eval =
        app.add_subcommand("eval", "leave-one-out cross-validation over a dataset");
    eval->fallthrough();
    eval->add_option("--input", opt.input, "dataset root directory")->required();
    eval->add_flag("--actor-folds", opt.actor_folds,
                   "group folds by actor prefix instead of one fold per video");

    CLI::App* sweep = app.add_subcommand("sweep", "grid search over rate and sparsity");
    sweep->fallthrough();
    sweep->add_option("--input", opt.input, "dataset root directory")->required();
    sweep->add_option("--rates", opt.rates, "comma-separated rate grid")->delimiter(',');
    sweep->add_option("--sparsities", opt.sparsities, "comma-separated sparsity grid")
        ->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help() << std::flush;
        return 2;
    }

    try {
        opt.params.validate();
        zc::parse_pooling(opt.pooling);
    } catch (const zc::zc_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (synth->parsed()) return cmd_synth(opt);
        if (describe->parsed()) return cmd_describe(opt);
        if (train->parsed()) return cmd_train(opt);
        if (predict->parsed()) return cmd_predict(opt);
        if (eval->parsed()) return cmd_eval(opt);
        if (sweep->parsed()) return cmd_sweep(opt);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 2;
}
