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
 * @file dataset.hpp
 * @brief Video records and directory-layout dataset I/O.
 *
 * Layout: root/<class_name>/<video_id>/frame_*.png|pgm. Class labels are
 * 1..K in sorted class-name order; frames are ordered by filename with
 * digit runs compared numerically (frame_2 before frame_10).
 *****************************************************************************/
#pragma once

#include <filesystem>
#include <iostream>

#include "zeroclass/image_io.hpp"

namespace zeroclass {

struct VideoRecord {
    std::string id;              // "<class_name>/<video_dir>" for disk datasets
    int class_label = 0;         // 1..K
    std::vector<SilhouetteMask> frames;
};

// Filename order with embedded integers compared by value. Digit runs are
// compared by length then lexically, which equals numeric order without
// overflow. Equal values with unequal padding stay deterministic: the run
// with more leading zeros sorts first, but only after the rest of the
// characters fail to decide ("frame_07" < "frame_7" < "frame_07x").
inline bool natural_less(const std::string& a, const std::string& b) {
    std::size_t i = 0, j = 0;
    int zeros_tie = 0;  // first equal-value run with unequal padding, applied last
    while (i < a.size() && j < b.size()) {
        const bool da = std::isdigit(static_cast<unsigned char>(a[i])) != 0;
        const bool db = std::isdigit(static_cast<unsigned char>(b[j])) != 0;
        if (da && db) {
            std::size_t i0 = i, j0 = j;
            while (i < a.size() && std::isdigit(static_cast<unsigned char>(a[i]))) ++i;
            while (j < b.size() && std::isdigit(static_cast<unsigned char>(b[j]))) ++j;
            std::string_view na(a.data() + i0, i - i0), nb(b.data() + j0, j - j0);
            const std::size_t za = na.find_first_not_of('0');
            const std::size_t zb = nb.find_first_not_of('0');
            std::string_view ta = za == std::string_view::npos ? na.substr(na.size() - 1) : na.substr(za);
            std::string_view tb = zb == std::string_view::npos ? nb.substr(nb.size() - 1) : nb.substr(zb);
            if (ta.size() != tb.size()) return ta.size() < tb.size();
            if (ta != tb) return ta < tb;
            if (na != nb && zeros_tie == 0) zeros_tie = na < nb ? -1 : 1;
        } else {
            if (a[i] != b[j]) return a[i] < b[j];
            ++i;
            ++j;
        }
    }
    if (i < a.size()) return false;  // b exhausted first, b sorts first
    if (j < b.size()) return true;
    return zeros_tie < 0;
}

namespace detail {

inline bool mask_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    for (auto& c : ext) c = static_cast<char>(std::tolower(c));
    return ext == ".png" || ext == ".pgm";
}

inline std::vector<std::string> sorted_subdirs(const std::filesystem::path& dir) {
    std::vector<std::string> names;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_directory()) names.push_back(e.path().filename().string());
    std::sort(names.begin(), names.end(), natural_less);
    return names;
}

}  // namespace detail

inline std::vector<VideoRecord> load_dataset(const std::string& root_path) {
    namespace fs = std::filesystem;
    const fs::path root(root_path);
    if (!fs::is_directory(root))
        throw zc_error("dataset directory not found: " + root_path);

    std::vector<std::string> class_names;
    for (const auto& e : fs::directory_iterator(root))
        if (e.is_directory()) class_names.push_back(e.path().filename().string());
    std::sort(class_names.begin(), class_names.end());
    if (class_names.empty())
        throw zc_error("no class directories under " + root_path);

    std::vector<VideoRecord> videos;
    int label = 0;
    for (const auto& cls : class_names) {
        ++label;
        const fs::path cdir = root / cls;
        const auto video_dirs = detail::sorted_subdirs(cdir);
        if (video_dirs.empty())
            throw zc_error("empty class directory: " + cdir.string());
        for (const auto& vd : video_dirs) {
            VideoRecord rec;
            rec.id = cls + "/" + vd;
            rec.class_label = label;
            std::vector<std::string> files;
            for (const auto& e : fs::directory_iterator(cdir / vd))
                if (e.is_regular_file() && detail::mask_extension(e.path()))
                    files.push_back(e.path().filename().string());
            std::sort(files.begin(), files.end(), natural_less);
            for (const auto& f : files) {
                SilhouetteMask m = read_mask((cdir / vd / f).string());
                bool any = false;
                for (auto b : m.bits)
                    if (b) { any = true; break; }
                if (!any) {
                    std::cerr << "warning: skipping all-background frame "
                              << (cdir / vd / f).string() << "\n";
                    continue;
                }
                rec.frames.push_back(std::move(m));
            }
            if (rec.frames.empty())
                throw zc_error("video has no usable frames: " + (cdir / vd).string());
            videos.push_back(std::move(rec));
        }
    }
    return videos;
}

// Writes videos into the load_dataset layout, grouping by class label.
// Names are zero-padded so plain lexical order matches label order.
inline void save_dataset(const std::string& root_path,
                         const std::vector<VideoRecord>& videos,
                         const std::string& image_ext = "pgm") {
    namespace fs = std::filesystem;
    int K = 0;
    for (const auto& v : videos) K = std::max(K, v.class_label);
    const int cw = K >= 100 ? 3 : 2;
    std::vector<int> counter(static_cast<std::size_t>(K) + 1, 0);
    for (const auto& v : videos) {
        char cname[32], vname[32];
        std::snprintf(cname, sizeof(cname), "class_%0*d", cw, v.class_label);
        const int vi = ++counter[static_cast<std::size_t>(v.class_label)];
        std::snprintf(vname, sizeof(vname), "video_%03d", vi);
        const fs::path dir = fs::path(root_path) / cname / vname;
        fs::create_directories(dir);
        for (std::size_t t = 0; t < v.frames.size(); ++t) {
            char fname[32];
            std::snprintf(fname, sizeof(fname), "frame_%03zu.%s", t,
                          image_ext.c_str());
            write_mask((dir / fname).string(), v.frames[t]);
        }
    }
}

}  // namespace zeroclass
