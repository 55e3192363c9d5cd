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

#include <filesystem>
#include <fstream>

#include "zeroclass/dataset.hpp"
#include "zeroclass/synthetic.hpp"

using namespace zeroclass;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

SilhouetteMask blob(int w, int h, int x0, int x1, int y0, int y1) {
    SilhouetteMask m(w, h);
    for (int y = y0; y <= y1; ++y)
        for (int x = x0; x <= x1; ++x) m.at(x, y) = 1;
    return m;
}

}  // namespace

TEST_CASE("filenames with numbers order numerically", "[dataset]") {
    REQUIRE(natural_less("frame_2.png", "frame_10.png"));
    REQUIRE(!natural_less("frame_10.png", "frame_2.png"));
    REQUIRE(natural_less("frame_9.pgm", "frame_12.pgm"));
    REQUIRE(natural_less("a", "b"));
    REQUIRE(natural_less("frame_07", "frame_7"));   // ties: more zeros first
    REQUIRE(natural_less("frame_7", "frame_07x"));  // value order still wins
    std::vector<std::string> names{"f_10", "f_2", "f_1", "f_21", "f_3"};
    std::sort(names.begin(), names.end(), natural_less);
    REQUIRE(names == std::vector<std::string>{"f_1", "f_2", "f_3", "f_10", "f_21"});
}

TEST_CASE("PGM round-trips bit-exactly", "[dataset]") {
    auto dir = fresh_dir("zc_pgm_test");
    SilhouetteMask m = blob(9, 5, 2, 6, 1, 3);
    m.at(0, 0) = 1;
    write_pgm((dir / "m.pgm").string(), m);
    REQUIRE(read_pgm((dir / "m.pgm").string()) == m);
}

TEST_CASE("ASCII P2 with comments parses", "[dataset]") {
    auto dir = fresh_dir("zc_p2_test");
    std::ofstream out(dir / "a.pgm");
    out << "P2\n# a comment\n3 2\n255\n0 7 0\n255 0 1\n";
    out.close();
    SilhouetteMask m = read_pgm((dir / "a.pgm").string());
    REQUIRE(m.width == 3);
    REQUIRE(m.height == 2);
    REQUIRE(m.at(0, 0) == 0);
    REQUIRE(m.at(1, 0) == 1);  // any nonzero sample is foreground
    REQUIRE(m.at(0, 1) == 1);
    REQUIRE(m.at(2, 1) == 1);
}

TEST_CASE("PNG round-trips bit-exactly", "[dataset]") {
    auto dir = fresh_dir("zc_png_test");
    SilhouetteMask m = blob(12, 7, 3, 8, 2, 5);
    write_png((dir / "m.png").string(), m);
    REQUIRE(read_png((dir / "m.png").string()) == m);
    REQUIRE(read_mask((dir / "m.png").string()) == m);
    REQUIRE_THROWS_AS(read_mask((dir / "m.bmp").string()), zc_error);
}

TEST_CASE("dataset layout loads with sorted labels and numeric frames",
          "[dataset]") {
    auto root = fresh_dir("zc_ds_test");
    // two classes, distinct mask per frame index so order is observable
    for (std::string cls : {"bend", "awalk"}) {
        for (int v = 0; v < 3; ++v) {
            fs::path vd = root / cls / ("vid" + std::to_string(v));
            fs::create_directories(vd);
            write_pgm((vd / "frame_2.pgm").string(), blob(8, 8, 1, 2, 1, 2));
            write_pgm((vd / "frame_10.pgm").string(), blob(8, 8, 4, 6, 4, 6));
        }
    }
    auto videos = load_dataset(root.string());
    REQUIRE(videos.size() == 6);
    // "awalk" sorts before "bend" so it is class 1
    REQUIRE(videos[0].class_label == 1);
    REQUIRE(videos[0].id.substr(0, 5) == "awalk");
    REQUIRE(videos[5].class_label == 2);
    for (const auto& v : videos) {
        REQUIRE(v.frames.size() == 2);
        REQUIRE(v.frames[0] == blob(8, 8, 1, 2, 1, 2));    // frame_2 first
        REQUIRE(v.frames[1] == blob(8, 8, 4, 6, 4, 6));    // frame_10 second
    }
}

TEST_CASE("all-background frames are skipped, empty videos fatal", "[dataset]") {
    auto root = fresh_dir("zc_skip_test");
    fs::path vd = root / "cls" / "vid0";
    fs::create_directories(vd);
    write_pgm((vd / "frame_1.pgm").string(), SilhouetteMask(8, 8));  // empty
    write_pgm((vd / "frame_2.pgm").string(), blob(8, 8, 2, 5, 2, 5));
    auto videos = load_dataset(root.string());
    REQUIRE(videos.size() == 1);
    REQUIRE(videos[0].frames.size() == 1);  // empty frame skipped

    auto root2 = fresh_dir("zc_allempty_test");
    fs::path vd2 = root2 / "cls" / "vid0";
    fs::create_directories(vd2);
    write_pgm((vd2 / "frame_1.pgm").string(), SilhouetteMask(8, 8));
    REQUIRE_THROWS_AS(load_dataset(root2.string()), zc_error);
}

TEST_CASE("empty class directory is fatal and named", "[dataset]") {
    auto root = fresh_dir("zc_emptycls_test");
    fs::create_directories(root / "lonely");
    try {
        load_dataset(root.string());
        FAIL("expected zc_error");
    } catch (const zc_error& e) {
        REQUIRE(std::string(e.what()).find("lonely") != std::string::npos);
    }
    REQUIRE_THROWS_AS(load_dataset((root / "missing").string()), zc_error);
}

TEST_CASE("synthetic dataset round-trips through the directory layout",
          "[dataset]") {
    SynthConfig cfg;
    cfg.num_classes = 2;
    cfg.videos_per_class = 2;
    cfg.frames_per_video = 4;
    cfg.seed = 13;
    auto ds = generate_synthetic(cfg);
    for (std::string ext : {"pgm", "png"}) {
        auto root = fresh_dir("zc_roundtrip_" + ext);
        save_dataset(root.string(), ds.videos, ext);
        auto loaded = load_dataset(root.string());
        REQUIRE(loaded.size() == ds.videos.size());
        for (std::size_t i = 0; i < loaded.size(); ++i) {
            REQUIRE(loaded[i].class_label == ds.videos[i].class_label);
            REQUIRE(loaded[i].frames.size() == ds.videos[i].frames.size());
            for (std::size_t t = 0; t < loaded[i].frames.size(); ++t)
                REQUIRE(loaded[i].frames[t] == ds.videos[i].frames[t]);
        }
    }
}
