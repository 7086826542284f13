// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "homstruct/errors.hpp"
#include "homstruct/rational.hpp"

namespace homstruct {

enum class AlgebraId { so3_r, sl2_r, solv };

inline std::string algebra_name(AlgebraId id) {
    switch (id) {
        case AlgebraId::so3_r: return "so(3)+R";
        case AlgebraId::sl2_r: return "sl(2,R)+R";
        case AlgebraId::solv: return "solv";
    }
    return "?";
}

/// Dense row-major matrix of dimension 3 or 4.
struct SquareMatrix {
    int dim = 0;
    std::array<double, 16> a{};

    static SquareMatrix zero(int n) { return SquareMatrix{n, {}}; }
    static SquareMatrix identity(int n) {
        SquareMatrix m{n, {}};
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    double& at(int i, int j) { return a[static_cast<std::size_t>(i * dim + j)]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i * dim + j)]; }
};

inline SquareMatrix operator+(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix r = x;
    for (int i = 0; i < x.dim * x.dim; ++i) r.a[i] += y.a[i];
    return r;
}

inline SquareMatrix operator-(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix r = x;
    for (int i = 0; i < x.dim * x.dim; ++i) r.a[i] -= y.a[i];
    return r;
}

inline SquareMatrix operator*(double s, const SquareMatrix& x) {
    SquareMatrix r = x;
    for (int i = 0; i < x.dim * x.dim; ++i) r.a[i] *= s;
    return r;
}

inline SquareMatrix operator*(const SquareMatrix& x, const SquareMatrix& y) {
    SquareMatrix r = SquareMatrix::zero(x.dim);
    for (int i = 0; i < x.dim; ++i)
        for (int k = 0; k < x.dim; ++k) {
            const double xik = x.at(i, k);
            if (xik == 0.0) continue;
            for (int j = 0; j < x.dim; ++j) r.at(i, j) += xik * y.at(k, j);
        }
    return r;
}

inline SquareMatrix transpose(const SquareMatrix& x) {
    SquareMatrix r = SquareMatrix::zero(x.dim);
    for (int i = 0; i < x.dim; ++i)
        for (int j = 0; j < x.dim; ++j) r.at(i, j) = x.at(j, i);
    return r;
}

inline SquareMatrix commutator(const SquareMatrix& x, const SquareMatrix& y) {
    return x * y - y * x;
}

inline double max_abs(const SquareMatrix& x) {
    double m = 0.0;
    for (int i = 0; i < x.dim * x.dim; ++i) m = std::max(m, std::abs(x.a[i]));
    return m;
}

inline bool matrices_finite(const SquareMatrix& x) {
    for (int i = 0; i < x.dim * x.dim; ++i)
        if (!std::isfinite(x.a[i])) return false;
    return true;
}

/// A matrix together with the algebra it is declared to live in.
struct LieAlgebraElement {
    AlgebraId algebra;
    SquareMatrix mat;
};

/// Distance of a matrix from the declared algebra's shape constraints.
inline double algebra_defect(AlgebraId id, const SquareMatrix& m) {
    double d = 0.0;
    auto bump = [&d](double x) { d = std::max(d, std::abs(x)); };
    switch (id) {
        case AlgebraId::so3_r:
            // block-diag(skew 3x3, scalar)
            if (m.dim != 4) return 1e300;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) bump(m.at(i, j) + m.at(j, i));
            for (int i = 0; i < 3; ++i) {
                bump(m.at(i, 3));
                bump(m.at(3, i));
            }
            break;
        case AlgebraId::sl2_r:
            // block-diag(traceless 2x2, scalar)
            if (m.dim != 3) return 1e300;
            bump(m.at(0, 0) + m.at(1, 1));
            bump(m.at(0, 2));
            bump(m.at(1, 2));
            bump(m.at(2, 0));
            bump(m.at(2, 1));
            break;
        case AlgebraId::solv:
            // tangent algebra of the solvable group model: [[b,a,0],[0,0,0],[0,0,c]]
            if (m.dim != 3) return 1e300;
            bump(m.at(0, 2));
            bump(m.at(1, 0));
            bump(m.at(1, 1));
            bump(m.at(1, 2));
            bump(m.at(2, 0));
            bump(m.at(2, 1));
            break;
    }
    return d;
}

inline void validate_element(const LieAlgebraElement& e, double tol = 1e-12) {
    if (!matrices_finite(e.mat)) throw ClosureViolation("non-finite matrix entries");
    if (algebra_defect(e.algebra, e.mat) > tol)
        throw ClosureViolation("matrix violates " + algebra_name(e.algebra) + " shape");
}

/// Ordered basis of one of the built-in algebras with its exact structure
/// constants: [b_i, b_j] = sum_k c^k_ij b_k.
struct BasisTable {
    AlgebraId algebra;
    int dim = 0; // number of basis elements
    std::vector<std::string> names;
    std::vector<LieAlgebraElement> basis;
    std::array<Rat, 64> c{}; // c[k][i][j], stride 4

    const Rat& c_at(int k, int i, int j) const {
        return c[static_cast<std::size_t>(k * 16 + i * 4 + j)];
    }
    Rat& c_at(int k, int i, int j) { return c[static_cast<std::size_t>(k * 16 + i * 4 + j)]; }

    /// Bilinear extension of the structure constants to coefficient vectors.
    RatVec bracket_coeffs(const RatVec& x, const RatVec& y) const {
        if (static_cast<int>(x.size()) != dim || static_cast<int>(y.size()) != dim)
            throw DimensionMismatch("bracket_abstract: coefficient vector length != basis size");
        RatVec out(static_cast<std::size_t>(dim), Rat(0));
        for (int i = 0; i < dim; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < dim; ++j) {
                if (y[j] == 0) continue;
                for (int k = 0; k < dim; ++k) {
                    const Rat& ck = c_at(k, i, j);
                    if (ck != 0) out[k] += x[i] * y[j] * ck;
                }
            }
        }
        return out;
    }
};

namespace detail {

inline SquareMatrix unit4(int i, int j) {
    SquareMatrix m = SquareMatrix::zero(4);
    m.at(i, j) = 1.0;
    return m;
}
inline SquareMatrix unit3(int i, int j) {
    SquareMatrix m = SquareMatrix::zero(3);
    m.at(i, j) = 1.0;
    return m;
}

inline BasisTable make_so3_r() {
    BasisTable t;
    t.algebra = AlgebraId::so3_r;
    t.dim = 4;
    t.names = {"u1", "u2", "u3", "e"};
    // u1 = E23 - E32, u2 = E12 - E21, u3 = E31 - E13, e = E44
    t.basis = {
        {t.algebra, unit4(1, 2) - unit4(2, 1)},
        {t.algebra, unit4(0, 1) - unit4(1, 0)},
        {t.algebra, unit4(2, 0) - unit4(0, 2)},
        {t.algebra, unit4(3, 3)},
    };
    // [u1,u2]=u3, [u2,u3]=u1, [u3,u1]=u2, [ui,e]=0
    t.c_at(2, 0, 1) = 1;
    t.c_at(2, 1, 0) = -1;
    t.c_at(0, 1, 2) = 1;
    t.c_at(0, 2, 1) = -1;
    t.c_at(1, 2, 0) = 1;
    t.c_at(1, 0, 2) = -1;
    return t;
}

inline BasisTable make_sl2_r() {
    BasisTable t;
    t.algebra = AlgebraId::sl2_r;
    t.dim = 4;
    t.names = {"v1", "v2", "v3", "e"};
    // v1 = (E21-E12)/2, v2 = (E12+E21)/2, v3 = (E22-E11)/2, e = E33
    t.basis = {
        {t.algebra, 0.5 * (unit3(1, 0) - unit3(0, 1))},
        {t.algebra, 0.5 * (unit3(0, 1) + unit3(1, 0))},
        {t.algebra, 0.5 * (unit3(1, 1) - unit3(0, 0))},
        {t.algebra, unit3(2, 2)},
    };
    // [v1,v2]=v3, [v2,v3]=-v1, [v3,v1]=v2, [vi,e]=0
    t.c_at(2, 0, 1) = 1;
    t.c_at(2, 1, 0) = -1;
    t.c_at(0, 1, 2) = -1;
    t.c_at(0, 2, 1) = 1;
    t.c_at(1, 2, 0) = 1;
    t.c_at(1, 0, 2) = -1;
    return t;
}

inline BasisTable make_solv() {
    BasisTable t;
    t.algebra = AlgebraId::solv;
    t.dim = 3;
    t.names = {"e1", "e2", "e3"};
    // Tangent matrices of the solvable group model [[y,x,0],[0,1,0],[0,0,e^z]]
    // at the identity; e1 <-> x-translation, e2 <-> y-scaling, e3 <-> R factor.
    t.basis = {
        {t.algebra, unit3(0, 1)},
        {t.algebra, unit3(0, 0)},
        {t.algebra, unit3(2, 2)},
    };
    // [e1,e2]=-e1, [e1,e3]=[e2,e3]=0
    t.c_at(0, 0, 1) = -1;
    t.c_at(0, 1, 0) = 1;
    return t;
}

} // namespace detail

inline const BasisTable& builtin_basis(AlgebraId id) {
    static const BasisTable so3 = detail::make_so3_r();
    static const BasisTable sl2 = detail::make_sl2_r();
    static const BasisTable slv = detail::make_solv();
    switch (id) {
        case AlgebraId::so3_r: return so3;
        case AlgebraId::sl2_r: return sl2;
        case AlgebraId::solv: return slv;
    }
    throw Error("unknown algebra id");
}

/// Matrix commutator in the declared algebra. The solvable algebra is defined
/// by its structure constants; use bracket_abstract for it.
inline LieAlgebraElement bracket(const LieAlgebraElement& x, const LieAlgebraElement& y) {
    if (x.algebra != y.algebra)
        throw AlgebraMismatch("bracket: elements of " + algebra_name(x.algebra) + " and " +
                              algebra_name(y.algebra));
    if (x.algebra == AlgebraId::solv)
        throw AlgebraMismatch("bracket: matrix bracket is defined for so(3)+R and sl(2,R)+R only");
    LieAlgebraElement out{x.algebra, commutator(x.mat, y.mat)};
    if (algebra_defect(out.algebra, out.mat) > 1e-12)
        throw ClosureViolation("bracket left the declared algebra");
    return out;
}

inline RatVec bracket_abstract(const BasisTable& table, const RatVec& x, const RatVec& y) {
    return table.bracket_coeffs(x, y);
}

/// Matrix exponential by scaling and squaring with a fixed order-12 series.
/// The scaling count is raised until the series remainder bound is below tol;
/// exceeding the squaring cap signals a pathological input norm.
inline SquareMatrix matrix_exp(const SquareMatrix& m, double tol = 1e-13) {
    if (tol <= 0) throw Error("matrix_exp: tol must be positive");
    if (!matrices_finite(m)) throw NonConvergence("matrix_exp: non-finite input");
    constexpr int kOrder = 12;
    constexpr int kSquaringCap = 30;

    // infinity norm
    double norm = 0.0;
    for (int i = 0; i < m.dim; ++i) {
        double row = 0.0;
        for (int j = 0; j < m.dim; ++j) row += std::abs(m.at(i, j));
        norm = std::max(norm, row);
    }

    auto remainder_bound = [](double t) {
        // || sum_{k>order} B^k/k! || <= t^13/13! * 1/(1 - t/14) for t < 14
        double term = 1.0;
        for (int k = 1; k <= kOrder + 1; ++k) term *= t / k;
        return (t < 14.0) ? term / (1.0 - t / 14.0) : 1e300;
    };

    int s = 0;
    double scaled = norm;
    while (scaled > 0.5 || remainder_bound(scaled) >= tol) {
        ++s;
        scaled *= 0.5;
        if (s > kSquaringCap)
            throw NonConvergence("matrix_exp: squaring cap exceeded (norm " + std::to_string(norm) +
                                 ")");
    }

    SquareMatrix b = std::ldexp(1.0, -s) * m;
    SquareMatrix sum = SquareMatrix::identity(m.dim);
    SquareMatrix term = SquareMatrix::identity(m.dim);
    for (int k = 1; k <= kOrder; ++k) {
        term = (1.0 / k) * (term * b);
        sum = sum + term;
    }
    for (int k = 0; k < s; ++k) sum = sum * sum;
    return sum;
}

} // namespace homstruct
