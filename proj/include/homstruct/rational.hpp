// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "homstruct/errors.hpp"

namespace homstruct {

// Exact arithmetic for structure constants and the subspace solver. The
// tabulated constants are 0, +-1 or +-1/2; parameters arriving from the CLI
// are binary-exact rationals of arbitrary size.
using Rat = boost::multiprecision::cpp_rational;
using RatVec = std::vector<Rat>;
using RatMat = std::vector<RatVec>;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

inline Rat rat_from_double(double d) { return Rat(d); } // binary-exact

inline RatVec rat_vec(std::initializer_list<long long> xs) {
    RatVec v;
    v.reserve(xs.size());
    for (auto x : xs) v.emplace_back(x);
    return v;
}

inline RatMat rat_identity(std::size_t n) {
    RatMat m(n, RatVec(n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

/// Row echelon reduction in place; returns the pivot columns.
inline std::vector<std::size_t> rat_row_reduce(RatMat& a) {
    std::vector<std::size_t> pivots;
    if (a.empty()) return pivots;
    const std::size_t rows = a.size(), cols = a[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = r;
        while (sel < rows && a[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[r]);
        const Rat inv = Rat(1) / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

inline std::size_t rat_rank(RatMat a) { return rat_row_reduce(a).size(); }

struct AffineSolution {
    bool solvable = false;
    RatVec particular;            // one solution of A x = b
    std::vector<RatVec> nullspace; // basis of A x = 0
};

/// Exact Gauss-Jordan solve of A x = b with full solution family.
/// `cols` is the number of unknowns (needed when the system has no rows).
inline AffineSolution solve_affine(const RatMat& a, const RatVec& b, std::size_t cols) {
    AffineSolution out;
    const std::size_t rows = a.size();
    if (rows == 0) { // no constraints: everything free
        out.solvable = true;
        out.particular.assign(cols, Rat(0));
        for (std::size_t fc = 0; fc < cols; ++fc) {
            RatVec dir(cols, Rat(0));
            dir[fc] = 1;
            out.nullspace.push_back(std::move(dir));
        }
        return out;
    }
    RatMat aug(rows, RatVec(cols + 1, Rat(0)));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw DimensionMismatch("solve_affine: ragged matrix");
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = a[i][j];
        aug[i][cols] = b[i];
    }
    auto pivots = rat_row_reduce(aug);
    // inconsistent iff a pivot lands in the constant column
    for (auto c : pivots)
        if (c == cols) return out;
    out.solvable = true;
    std::vector<bool> is_pivot(cols, false);
    out.particular.assign(cols, Rat(0));
    for (std::size_t k = 0; k < pivots.size(); ++k) {
        is_pivot[pivots[k]] = true;
        out.particular[pivots[k]] = aug[k][cols];
    }
    for (std::size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        RatVec dir(cols, Rat(0));
        dir[fc] = 1;
        for (std::size_t k = 0; k < pivots.size(); ++k) dir[pivots[k]] = -aug[k][fc];
        out.nullspace.push_back(std::move(dir));
    }
    return out;
}

/// Inverse of a square rational matrix, or nullopt when singular.
inline std::optional<RatMat> rat_inverse(const RatMat& a) {
    const std::size_t n = a.size();
    RatMat aug(n, RatVec(2 * n, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw DimensionMismatch("rat_inverse: not square");
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = a[i][j];
        aug[i][n + i] = 1;
    }
    auto pivots = rat_row_reduce(aug);
    if (pivots.size() != n || pivots.back() >= n) return std::nullopt;
    RatMat inv(n, RatVec(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

/// Coordinates of v in the given (independent) column vectors, if v lies in
/// their span.
inline std::optional<RatVec> coords_in_span(const std::vector<RatVec>& basis, const RatVec& v) {
    if (basis.empty()) {
        for (const auto& x : v)
            if (x != 0) return std::nullopt;
        return RatVec{};
    }
    const std::size_t dim = v.size();
    RatMat a(dim, RatVec(basis.size(), Rat(0)));
    for (std::size_t j = 0; j < basis.size(); ++j) {
        if (basis[j].size() != dim) throw DimensionMismatch("coords_in_span: size mismatch");
        for (std::size_t i = 0; i < dim; ++i) a[i][j] = basis[j][i];
    }
    auto sol = solve_affine(a, v, basis.size());
    if (!sol.solvable) return std::nullopt;
    return sol.particular;
}

inline bool in_span(const std::vector<RatVec>& basis, const RatVec& v) {
    return coords_in_span(basis, v).has_value();
}

} // namespace homstruct
