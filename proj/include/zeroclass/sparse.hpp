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
 * @file sparse.hpp
 * @brief Orthogonal matching pursuit, K-SVD dictionary learning, and
 *        per-atom reconstruction-error features.
 *
 * OMP runs in the Gram domain: with G = D^T D and alpha0 = D^T y computed
 * up front, correlations update as alpha = alpha0 - G[:,S] c and the
 * residual energy as ||y||^2 - c . alpha0[S], so a full coding pass never
 * touches the signal again. K-SVD alternates a guarded coding pass (a
 * signal keeps its previous code when the fresh one reconstructs worse,
 * which makes the recorded objective non-increasing) with sequential
 * rank-1 atom updates computed by alternating least squares on the
 * maintained residual matrix.
 *****************************************************************************/
#ifndef ZEROCLASS_SPARSE_HPP
#define ZEROCLASS_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <json.hpp>

#include "zeroclass/core.hpp"

namespace zeroclass {

// OMP stops early once the residual Euclidean norm drops below this.
inline constexpr double kOmpResidualNorm = 1e-12;

// Default number of K-SVD alternations; exposed as a config knob everywhere.
inline constexpr int kDefaultKsvdIters = 30;

inline constexpr int kDictionaryFormatVersion = 1;

// Column-wise dictionary; every atom (column) has unit Euclidean norm.
struct Dictionary {
    Mat atoms;

    Eigen::Index dim() const { return atoms.rows(); }
    Eigen::Index size() const { return atoms.cols(); }
};

// Sparse representation of one signal: distinct atom indices in selection
// order with aligned coefficients, at most sparsity_cap of them.
struct SparseCode {
    std::vector<int> support;
    Vec coeffs;
    int sparsity_cap = 0;
};

namespace detail {

// One signal coded against a fixed Gram matrix. alpha0 = D^T y and
// norm_y2 = ||y||^2 carry everything the pursuit needs. Atom selection
// breaks exact correlation ties toward the lowest index, so a coding run
// is bit-reproducible. A residual exactly orthogonal to every atom stops
// the pursuit: selecting further atoms could not reduce the error.
inline SparseCode omp_gram(const Mat& G, const Vec& alpha0, double norm_y2,
                           int sparsity_cap, int max_atoms) {
    SparseCode code;
    code.sparsity_cap = sparsity_cap;
    code.coeffs = Vec();
    if (norm_y2 == 0.0) return code;

    const int m = static_cast<int>(G.cols());
    Vec alpha = alpha0;
    std::vector<char> used(static_cast<std::size_t>(m), 0);
    Mat g_sel(m, max_atoms);
    Vec c;

    for (int step = 0; step < max_atoms; ++step) {
        int best = -1;
        double best_abs = 0.0;
        for (int i = 0; i < m; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            const double v = std::abs(alpha(i));
            if (best < 0 || v > best_abs) {
                best = i;
                best_abs = v;
            }
        }
        if (best < 0 || best_abs == 0.0) break;

        used[static_cast<std::size_t>(best)] = 1;
        code.support.push_back(best);
        g_sel.col(step) = G.col(best);

        const int s = step + 1;
        Mat gram_s(s, s);
        Vec a0_s(s);
        for (int r = 0; r < s; ++r) {
            a0_s(r) = alpha0(code.support[static_cast<std::size_t>(r)]);
            for (int q = 0; q < s; ++q)
                gram_s(r, q) = G(code.support[static_cast<std::size_t>(r)],
                                 code.support[static_cast<std::size_t>(q)]);
        }
        c = gram_s.ldlt().solve(a0_s);

        double resid2 = norm_y2 - c.dot(a0_s);
        if (resid2 < 0.0) resid2 = 0.0;
        if (resid2 < kOmpResidualNorm * kOmpResidualNorm) break;
        if (s < max_atoms) alpha = alpha0 - g_sel.leftCols(s) * c;
    }

    code.coeffs = c;
    return code;
}

inline void check_omp_args(Eigen::Index y_dim, const Dictionary& dict, int sparsity_cap) {
    if (dict.dim() < 1 || dict.size() < 1)
        throw zc_error("omp_encode: dictionary must have at least one atom and one row");
    if (y_dim != dict.dim())
        throw zc_error("omp_encode: signal dimension " + std::to_string(y_dim) +
                       " does not match dictionary dimension " + std::to_string(dict.dim()));
    if (sparsity_cap < 1) throw zc_error("omp_encode: sparsity cap must be at least 1");
}

}  // namespace detail

// Codes every column of Y against dict with at most sparsity_cap atoms.
// The Gram matrix is computed once and shared across signals; results are
// returned in column order.
inline std::vector<SparseCode> omp_encode_batch(const Mat& Y, const Dictionary& dict,
                                                int sparsity_cap) {
    detail::check_omp_args(Y.rows(), dict, sparsity_cap);
    const int max_atoms = static_cast<int>(
        std::min<Eigen::Index>({sparsity_cap, dict.size(), dict.dim()}));
    const Mat G = dict.atoms.transpose() * dict.atoms;

    std::vector<SparseCode> codes;
    codes.reserve(static_cast<std::size_t>(Y.cols()));
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        const Vec alpha0 = dict.atoms.transpose() * Y.col(j);
        codes.push_back(detail::omp_gram(G, alpha0, Y.col(j).squaredNorm(),
                                         sparsity_cap, max_atoms));
    }
    return codes;
}

inline SparseCode omp_encode(const Vec& y, const Dictionary& dict, int sparsity_cap) {
    return omp_encode_batch(y, dict, sparsity_cap).front();
}

inline Vec sparse_reconstruct(const SparseCode& code, const Dictionary& dict) {
    Vec x = Vec::Zero(dict.dim());
    for (std::size_t t = 0; t < code.support.size(); ++t)
        x += dict.atoms.col(code.support[t]) * code.coeffs(static_cast<Eigen::Index>(t));
    return x;
}

// Per-atom reconstruction error of y: e_i = ||y - d_i b_i||^2 when atom i
// carries OMP coefficient b_i, and ||y||^2 for atoms outside the support
// (their lone-atom reconstruction is the zero vector).
inline Vec error_features(const Vec& y, const Dictionary& dict, int sparsity_cap) {
    const SparseCode code = omp_encode(y, dict, sparsity_cap);
    Vec e = Vec::Constant(dict.size(), y.squaredNorm());
    for (std::size_t t = 0; t < code.support.size(); ++t)
        e(code.support[t]) =
            (y - dict.atoms.col(code.support[t]) * code.coeffs(static_cast<Eigen::Index>(t)))
                .squaredNorm();
    return e;
}

// Column j of the result holds error_features(Y.col(j), dict, sparsity_cap);
// the coding pass shares one Gram matrix across all columns.
inline Mat error_features_batch(const Mat& Y, const Dictionary& dict, int sparsity_cap) {
    detail::check_omp_args(Y.rows(), dict, sparsity_cap);
    const int max_atoms = static_cast<int>(
        std::min<Eigen::Index>({sparsity_cap, dict.size(), dict.dim()}));
    const Mat G = dict.atoms.transpose() * dict.atoms;

    Mat E(dict.size(), Y.cols());
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        const Vec y = Y.col(j);
        const Vec alpha0 = dict.atoms.transpose() * y;
        const SparseCode code =
            detail::omp_gram(G, alpha0, y.squaredNorm(), sparsity_cap, max_atoms);
        E.col(j).setConstant(y.squaredNorm());
        for (std::size_t t = 0; t < code.support.size(); ++t)
            E(code.support[t], j) =
                (y - dict.atoms.col(code.support[t]) * code.coeffs(static_cast<Eigen::Index>(t)))
                    .squaredNorm();
    }
    return E;
}

struct KsvdResult {
    Dictionary dictionary;
    // Frobenius objective ||Y - D B||_F^2 recorded after each alternation.
    std::vector<double> objective;
};

namespace detail {

// Rank-1 factorization of E by alternating least squares, seeded with the
// current atom so the restricted error never increases. Returns a unit u;
// v holds the matching coefficients. A vanishing E keeps the seed atom.
inline void rank1_update(const Mat& E, Vec& u, Vec& v) {
    constexpr int kMaxAlternations = 32;
    for (int it = 0; it < kMaxAlternations; ++it) {
        v = E.transpose() * u;
        Vec u_next = E * v;
        const double nrm = u_next.norm();
        if (nrm < 1e-300) break;
        u_next /= nrm;
        const bool settled = (u_next - u).lpNorm<Eigen::Infinity>() < 1e-15;
        u = u_next;
        if (settled) break;
    }
    v = E.transpose() * u;
}

}  // namespace detail

// K-SVD: alternates batch OMP coding with per-atom rank-1 updates. The
// dictionary is seeded with m distinct randomly chosen, normalized data
// columns. Atoms no signal uses are replaced by the worst-reconstructed
// data columns, renormalized, worst first. Deterministic for a fixed seed.
inline KsvdResult ksvd_train(const Mat& Y, int m, int sparsity_cap, int iters,
                             std::uint64_t seed) {
    const Eigen::Index dim = Y.rows();
    const Eigen::Index n = Y.cols();
    if (dim == 0) throw zc_error("ksvd_train: zero-dimensional signals");
    if (n == 0) throw zc_error("ksvd_train: no training signals");
    if (m < 1) throw zc_error("ksvd_train: atom count must be at least 1");
    if (sparsity_cap < 1) throw zc_error("ksvd_train: sparsity cap must be at least 1");
    if (iters < 1) throw zc_error("ksvd_train: iteration count must be at least 1");
    if (static_cast<Eigen::Index>(m) > n) {
        std::cerr << "ksvd_train: reducing atom count " << m << " to " << n
                  << " (fewer signals than atoms)\n";
        m = static_cast<int>(n);
    }

    Rng rng(seed);
    Dictionary dict;
    dict.atoms.resize(dim, m);
    {
        const std::vector<int> picks =
            rng.sample_without_replacement(static_cast<int>(n), m);
        for (int k = 0; k < m; ++k) {
            const Vec col = Y.col(picks[static_cast<std::size_t>(k)]);
            const double nrm = col.norm();
            if (nrm > 1e-300) {
                dict.atoms.col(k) = col / nrm;
            } else {
                // Zero training column: fall back to a canonical basis vector
                // so the atom still has unit norm.
                dict.atoms.col(k).setZero();
                dict.atoms.col(k)(static_cast<Eigen::Index>(k) % dim) = 1.0;
            }
        }
    }

    const int max_atoms =
        static_cast<int>(std::min<Eigen::Index>({sparsity_cap, m, dim}));
    std::vector<SparseCode> codes(static_cast<std::size_t>(n));
    std::vector<double> old_resid2(static_cast<std::size_t>(n), 0.0);
    bool have_codes = false;

    KsvdResult result;
    result.objective.reserve(static_cast<std::size_t>(iters));

    Mat R(dim, n);
    for (int iter = 0; iter < iters; ++iter) {
        // Coding pass. A signal keeps its previous code when the fresh OMP
        // code reconstructs worse; the previous code stays exactly valid
        // because atom updates rewrite coefficients alongside atoms.
        const Mat G = dict.atoms.transpose() * dict.atoms;
        for (Eigen::Index j = 0; j < n; ++j) {
            const Vec y = Y.col(j);
            const Vec alpha0 = dict.atoms.transpose() * y;
            SparseCode fresh =
                detail::omp_gram(G, alpha0, y.squaredNorm(), sparsity_cap, max_atoms);
            const double fresh_resid2 = (y - sparse_reconstruct(fresh, dict)).squaredNorm();
            if (!have_codes || fresh_resid2 <= old_resid2[static_cast<std::size_t>(j)]) {
                codes[static_cast<std::size_t>(j)] = std::move(fresh);
                old_resid2[static_cast<std::size_t>(j)] = fresh_resid2;
            }
        }
        have_codes = true;

        // Residual matrix consistent with the accepted codes.
        for (Eigen::Index j = 0; j < n; ++j)
            R.col(j) = Y.col(j) - sparse_reconstruct(codes[static_cast<std::size_t>(j)], dict);

        // Per-atom users: (signal index, position of the atom in its support).
        std::vector<std::vector<std::pair<int, int>>> users(static_cast<std::size_t>(m));
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto& sup = codes[static_cast<std::size_t>(j)].support;
            for (std::size_t t = 0; t < sup.size(); ++t)
                users[static_cast<std::size_t>(sup[t])].push_back(
                    {static_cast<int>(j), static_cast<int>(t)});
        }

        std::vector<int> dead;
        for (int k = 0; k < m; ++k) {
            const auto& uk = users[static_cast<std::size_t>(k)];
            if (uk.empty()) {
                dead.push_back(k);
                continue;
            }
            // Error matrix with atom k's contribution restored.
            Mat E(dim, static_cast<Eigen::Index>(uk.size()));
            for (std::size_t t = 0; t < uk.size(); ++t) {
                const auto [j, pos] = uk[t];
                E.col(static_cast<Eigen::Index>(t)) =
                    R.col(j) + dict.atoms.col(k) *
                                   codes[static_cast<std::size_t>(j)].coeffs(pos);
            }
            Vec u = dict.atoms.col(k);
            Vec v;
            detail::rank1_update(E, u, v);
            for (std::size_t t = 0; t < uk.size(); ++t) {
                const auto [j, pos] = uk[t];
                R.col(j) = E.col(static_cast<Eigen::Index>(t)) -
                           u * v(static_cast<Eigen::Index>(t));
                codes[static_cast<std::size_t>(j)].coeffs(pos) =
                    v(static_cast<Eigen::Index>(t));
            }
            dict.atoms.col(k) = u;
        }

        if (!dead.empty()) {
            // Replacement leaves R unchanged: a dead atom has no coefficients.
            std::vector<int> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::vector<double> res2(static_cast<std::size_t>(n));
            for (Eigen::Index j = 0; j < n; ++j)
                res2[static_cast<std::size_t>(j)] = R.col(j).squaredNorm();
            std::sort(order.begin(), order.end(), [&](int a, int b) {
                if (res2[static_cast<std::size_t>(a)] != res2[static_cast<std::size_t>(b)])
                    return res2[static_cast<std::size_t>(a)] > res2[static_cast<std::size_t>(b)];
                return a < b;
            });
            std::size_t next = 0;
            for (const int k : dead) {
                while (next < order.size() &&
                       Y.col(order[next]).norm() <= 1e-300)
                    ++next;
                if (next >= order.size()) break;  // no usable column, keep the atom
                dict.atoms.col(k) = Y.col(order[next]).normalized();
                ++next;
            }
        }

        // Keep the stored per-signal residuals in sync with the updated
        // coefficients so the next guard compares against current truth.
        for (Eigen::Index j = 0; j < n; ++j)
            old_resid2[static_cast<std::size_t>(j)] = R.col(j).squaredNorm();

        result.objective.push_back(R.squaredNorm());
    }

    result.dictionary = std::move(dict);
    return result;
}

inline nlohmann::ordered_json dictionary_to_json(const Dictionary& dict) {
    nlohmann::ordered_json j;
    j["version"] = kDictionaryFormatVersion;
    j["dim"] = dict.dim();
    j["m"] = dict.size();
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(dict.dim() * dict.size()));
    for (Eigen::Index r = 0; r < dict.dim(); ++r)
        for (Eigen::Index c = 0; c < dict.size(); ++c) flat.push_back(dict.atoms(r, c));
    j["atoms"] = flat;
    return j;
}

inline Dictionary dictionary_from_json(const nlohmann::json& j) {
    if (!j.contains("version") || j["version"].get<int>() != kDictionaryFormatVersion)
        throw zc_error("dictionary document: unsupported version");
    const auto dim = j.at("dim").get<Eigen::Index>();
    const auto m = j.at("m").get<Eigen::Index>();
    if (dim < 1 || m < 1) throw zc_error("dictionary document: empty dimensions");
    const auto flat = j.at("atoms").get<std::vector<double>>();
    if (flat.size() != static_cast<std::size_t>(dim * m))
        throw zc_error("dictionary document: atom payload size mismatch");
    Dictionary dict;
    dict.atoms.resize(dim, m);
    std::size_t t = 0;
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < m; ++c) dict.atoms(r, c) = flat[t++];
    return dict;
}

}  // namespace zeroclass

#endif  // ZEROCLASS_SPARSE_HPP
