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
 * @file image_io.hpp
 * @brief 8-bit grayscale mask I/O: PGM (P2/P5) natively, PNG via libpng.
 *
 * Any nonzero sample is foreground. Masks are written as 0/255.
 *****************************************************************************/
#pragma once

#include <cctype>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <string>

#include <png.h>

#include "zeroclass/contour.hpp"

namespace zeroclass {

namespace detail {

// Next PGM header token, skipping whitespace and '#' comments.
inline std::string pgm_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while (ch != EOF && ch != '\n') ch = in.get();
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty()) break;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    return tok;
}

inline long pgm_int(std::istream& in, const std::string& path) {
    const std::string tok = pgm_token(in);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw zc_error("bad PGM header in " + path);
    return std::stol(tok);
}

}  // namespace detail

inline SilhouetteMask read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw zc_error("cannot open " + path);
    const std::string magic = detail::pgm_token(in);
    if (magic != "P2" && magic != "P5")
        throw zc_error("not a PGM file: " + path);
    const long w = detail::pgm_int(in, path);
    const long h = detail::pgm_int(in, path);
    const long maxval = detail::pgm_int(in, path);
    if (w < 1 || h < 1 || maxval < 1 || maxval > 255)
        throw zc_error("unsupported PGM geometry or maxval in " + path);
    SilhouetteMask m(static_cast<int>(w), static_cast<int>(h));
    if (magic == "P5") {
        std::vector<unsigned char> row(static_cast<std::size_t>(w));
        for (long y = 0; y < h; ++y) {
            in.read(reinterpret_cast<char*>(row.data()), w);
            if (!in) throw zc_error("truncated PGM raster in " + path);
            for (long x = 0; x < w; ++x)
                m.at(static_cast<int>(x), static_cast<int>(y)) =
                    row[static_cast<std::size_t>(x)] != 0;
        }
    } else {
        for (long y = 0; y < h; ++y)
            for (long x = 0; x < w; ++x)
                m.at(static_cast<int>(x), static_cast<int>(y)) =
                    detail::pgm_int(in, path) != 0;
    }
    return m;
}

inline void write_pgm(const std::string& path, const SilhouetteMask& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw zc_error("cannot write " + path);
    out << "P5\n" << m.width << " " << m.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<std::size_t>(m.width));
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x)
            row[static_cast<std::size_t>(x)] = m.at(x, y) ? 255 : 0;
        out.write(reinterpret_cast<const char*>(row.data()), m.width);
    }
    if (!out) throw zc_error("short write to " + path);
}

inline SilhouetteMask read_png(const std::string& path) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&image, path.c_str()))
        throw zc_error("cannot read PNG " + path + ": " + image.message);
    image.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
    if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&image);
        throw zc_error("cannot decode PNG " + path + ": " + image.message);
    }
    SilhouetteMask m(static_cast<int>(image.width), static_cast<int>(image.height));
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            m.at(x, y) = buffer[static_cast<std::size_t>(y) *
                                    static_cast<std::size_t>(m.width) +
                                static_cast<std::size_t>(x)] != 0;
    return m;
}

inline void write_png(const std::string& path, const SilhouetteMask& m) {
    png_image image;
    std::memset(&image, 0, sizeof(image));
    image.version = PNG_IMAGE_VERSION;
    image.width = static_cast<png_uint_32>(m.width);
    image.height = static_cast<png_uint_32>(m.height);
    image.format = PNG_FORMAT_GRAY;
    std::vector<png_byte> buffer(static_cast<std::size_t>(m.width) *
                                 static_cast<std::size_t>(m.height));
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            buffer[static_cast<std::size_t>(y) * static_cast<std::size_t>(m.width) +
                   static_cast<std::size_t>(x)] = m.at(x, y) ? 255 : 0;
    if (!png_image_write_to_file(&image, path.c_str(), 0, buffer.data(), 0,
                                 nullptr))
        throw zc_error("cannot write PNG " + path + ": " + image.message);
}

// Dispatch on file extension (.pgm or .png, case-insensitive).
inline SilhouetteMask read_mask(const std::string& path) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (auto& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "pgm") return read_pgm(path);
    if (ext == "png") return read_png(path);
    throw zc_error("unsupported image extension: " + path);
}

inline void write_mask(const std::string& path, const SilhouetteMask& m) {
    auto dot = path.find_last_of('.');
    std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
    for (auto& c : ext) c = static_cast<char>(std::tolower(c));
    if (ext == "pgm") return write_pgm(path, m);
    if (ext == "png") return write_png(path, m);
    throw zc_error("unsupported image extension: " + path);
}

}  // namespace zeroclass
