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
 * @file core.hpp
 * @brief Shared aliases, error type, and deterministic RNG helpers.
 *****************************************************************************/
#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace zeroclass {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

class zc_error : public std::runtime_error {
 public:
    explicit zc_error(const std::string& what) : std::runtime_error(what) {}
};

// Deterministic uniform draws on top of std::mt19937_64. The engine's bit
// stream is pinned by the standard; std::uniform_*_distribution is not, so
// these helpers keep outputs identical across standard libraries.
class Rng {
 public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform double in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer in [0, n). Negligible modulo bias is irrelevant here;
    // what matters is that the mapping is fixed.
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
    }

    // Fisher-Yates shuffle, last-to-first.
    template <typename T>
    void shuffle(std::vector<T>& xs) {
        for (std::size_t i = xs.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(xs[i - 1], xs[j]);
        }
    }

    // k distinct draws from 0..n-1, in draw order.
    std::vector<int> sample_without_replacement(int n, int k) {
        std::vector<int> pool(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(k));
        for (int i = 0; i < k && !pool.empty(); ++i) {
            std::size_t j = static_cast<std::size_t>(below(pool.size()));
            out.push_back(pool[j]);
            pool[j] = pool.back();
            pool.pop_back();
        }
        return out;
    }

    std::mt19937_64& engine() { return eng_; }

 private:
    std::mt19937_64 eng_;
};

}  // namespace zeroclass
