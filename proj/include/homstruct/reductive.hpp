// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <vector>

#include "homstruct/matlie.hpp"
#include "homstruct/models.hpp"
#include "homstruct/rational.hpp"

// Reductive decompositions g = m ⊕ h and the homogeneous structure tensor at
// the origin.
//
// Lie subspaces are enumerated as graphs of linear maps L : m₀ → h over a
// fixed complement m₀; the Ad(H)-invariance condition [h, m] ⊆ m is linear in
// L and is solved exactly over the rationals.
//
// The origin tensor S_abc = g(T_{X_a} X_b, X_c) over the m-basis is exact
// rational. Sign convention: the starred bracket fields are realized through
// the Lie-algebra brackets with the compensating sign for the fundamental
// vector fields of the transitive action (nontrivial isotropy), while the
// trivial-isotropy Riemannian-group case uses the left-invariant frame, i.e.
//
//   2 S_abc = σ ( ⟨[X_a,X_b]_m, X_c⟩ − ⟨[X_b,X_c]_m, X_a⟩ + ⟨[X_c,X_a]_m, X_b⟩ ),
//   σ = −1 for h ≠ 0   and   σ = +1 for h = 0.
//
// The origin tables of both product models pin this convention; the
// verifier's crosscheck against the closed-form structures exercises it.

namespace homstruct {

struct ReductiveDecomposition {
    AlgebraId algebra;
    std::vector<RatVec> h_basis;
    std::vector<RatVec> m_basis;
    std::map<std::string, Rat> params;
};

namespace detail {

inline void require_coeff_len(AlgebraId id, const std::vector<RatVec>& vecs, const char* who) {
    const auto& t = builtin_basis(id);
    for (const auto& v : vecs)
        if (static_cast<int>(v.size()) != t.dim)
            throw DimensionMismatch(std::string(who) + ": coefficient vector length != " +
                                    std::to_string(t.dim));
}

inline std::string coeff_label(const BasisTable& t, const RatVec& v) {
    std::string out;
    for (int i = 0; i < t.dim; ++i) {
        const Rat& c = v[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        if (!out.empty()) out += c > 0 ? "+" : "-";
        else if (c < 0) out += "-";
        const Rat ac = abs(c);
        if (ac != 1) out += ac.str() + "*";
        out += t.names[static_cast<std::size_t>(i)];
    }
    return out.empty() ? "0" : out;
}

} // namespace detail

/// Exact validity checks: h a subalgebra, m ∪ h a basis, [m,h] ⊆ m.
inline void validate_decomposition(const ReductiveDecomposition& dec) {
    const auto& t = builtin_basis(dec.algebra);
    detail::require_coeff_len(dec.algebra, dec.h_basis, "validate_decomposition");
    detail::require_coeff_len(dec.algebra, dec.m_basis, "validate_decomposition");
    if (static_cast<int>(dec.h_basis.size() + dec.m_basis.size()) != t.dim)
        throw DimensionMismatch("validate_decomposition: m and h do not fill the algebra");

    for (const auto& a : dec.h_basis)
        for (const auto& b : dec.h_basis)
            if (!in_span(dec.h_basis, t.bracket_coeffs(a, b)))
                throw NotSubalgebra("validate_decomposition: h is not a subalgebra");

    RatMat full(static_cast<std::size_t>(t.dim), RatVec(static_cast<std::size_t>(t.dim), Rat(0)));
    std::size_t col = 0;
    for (const auto& v : dec.m_basis) {
        for (int i = 0; i < t.dim; ++i) full[static_cast<std::size_t>(i)][col] = v[static_cast<std::size_t>(i)];
        ++col;
    }
    for (const auto& v : dec.h_basis) {
        for (int i = 0; i < t.dim; ++i) full[static_cast<std::size_t>(i)][col] = v[static_cast<std::size_t>(i)];
        ++col;
    }
    if (rat_rank(full) != static_cast<std::size_t>(t.dim))
        throw DegenerateSystem("validate_decomposition: m ∪ h is not a basis");

    for (const auto& x : dec.m_basis)
        for (const auto& w : dec.h_basis)
            if (!in_span(dec.m_basis, t.bracket_coeffs(x, w)))
                throw NotReductive("validate_decomposition: [m,h] is not contained in m");
}

/// Affine family of Lie subspaces m = graph(L), L : m₀ → h.
struct SubspaceFamily {
    AlgebraId algebra;
    std::vector<RatVec> h_basis;
    std::vector<RatVec> m0_basis;
    RatMat particular;             // [h index][m0 index]
    std::vector<RatMat> free_dirs; // one per free parameter
    std::vector<std::string> free_names;
    std::vector<std::string> forced_zero;

    std::size_t free_count() const { return free_dirs.size(); }

    ReductiveDecomposition instantiate(const std::vector<Rat>& values) const {
        if (values.size() != free_dirs.size())
            throw DimensionMismatch("instantiate: expected " + std::to_string(free_dirs.size()) +
                                    " parameter value(s)");
        const auto& t = builtin_basis(algebra);
        const std::size_t dh = h_basis.size(), dm = m0_basis.size();
        RatMat L(dh, RatVec(dm, Rat(0)));
        for (std::size_t a = 0; a < dh; ++a)
            for (std::size_t i = 0; i < dm; ++i) {
                L[a][i] = particular[a][i];
                for (std::size_t f = 0; f < free_dirs.size(); ++f)
                    L[a][i] += values[f] * free_dirs[f][a][i];
            }
        ReductiveDecomposition dec;
        dec.algebra = algebra;
        dec.h_basis = h_basis;
        for (std::size_t i = 0; i < dm; ++i) {
            RatVec x = m0_basis[i];
            for (std::size_t a = 0; a < dh; ++a)
                for (int k = 0; k < t.dim; ++k)
                    x[static_cast<std::size_t>(k)] += L[a][i] * h_basis[a][static_cast<std::size_t>(k)];
            dec.m_basis.push_back(std::move(x));
        }
        for (std::size_t f = 0; f < free_names.size(); ++f) dec.params[free_names[f]] = values[f];
        validate_decomposition(dec);
        return dec;
    }

    ReductiveDecomposition instantiate_doubles(const std::vector<double>& values) const {
        std::vector<Rat> r;
        r.reserve(values.size());
        for (double v : values) r.push_back(rat_from_double(v));
        return instantiate(r);
    }
};

namespace detail {

// "u2" -> "lambda_2", "e" -> "lambda"
inline std::string lambda_name(const std::string& basis_name) {
    if (!basis_name.empty() && std::isdigit(static_cast<unsigned char>(basis_name.back())))
        return std::string("lambda_") + basis_name.back();
    return "lambda";
}

} // namespace detail

/// Solve [h, m] ⊆ m for all complements m of h presented as graphs over the
/// fixed complement m₀ spanned by the unused standard basis vectors.
inline SubspaceFamily enumerate_lie_subspaces(AlgebraId algebra,
                                              const std::vector<RatVec>& h_basis) {
    const auto& t = builtin_basis(algebra);
    detail::require_coeff_len(algebra, h_basis, "enumerate_lie_subspaces");
    const std::size_t n = static_cast<std::size_t>(t.dim);
    const std::size_t dh = h_basis.size();

    {
        RatMat hm(n, RatVec(dh, Rat(0)));
        for (std::size_t j = 0; j < dh; ++j)
            for (std::size_t i = 0; i < n; ++i) hm[i][j] = h_basis[j][i];
        if (rat_rank(hm) != dh)
            throw NoComplement("enumerate_lie_subspaces: h basis is not independent");
    }
    for (const auto& a : h_basis)
        for (const auto& b : h_basis)
            if (!in_span(h_basis, t.bracket_coeffs(a, b)))
                throw NotSubalgebra("enumerate_lie_subspaces: h is not a subalgebra");

    // fixed complement: standard basis vectors keeping h ∪ m0 independent
    SubspaceFamily fam;
    fam.algebra = algebra;
    fam.h_basis = h_basis;
    std::vector<RatVec> accum = h_basis;
    std::vector<std::size_t> m0_index;
    for (std::size_t i = 0; i < n && accum.size() < n; ++i) {
        RatVec e(n, Rat(0));
        e[i] = 1;
        RatMat test(n, RatVec(accum.size() + 1, Rat(0)));
        for (std::size_t j = 0; j < accum.size(); ++j)
            for (std::size_t r = 0; r < n; ++r) test[r][j] = accum[j][r];
        for (std::size_t r = 0; r < n; ++r) test[r][accum.size()] = e[r];
        if (rat_rank(test) == accum.size() + 1) {
            accum.push_back(e);
            fam.m0_basis.push_back(e);
            m0_index.push_back(i);
        }
    }
    const std::size_t dm = fam.m0_basis.size();

    // change of basis onto (m0 | h)
    RatMat cb(n, RatVec(n, Rat(0)));
    for (std::size_t j = 0; j < dm; ++j)
        for (std::size_t i = 0; i < n; ++i) cb[i][j] = fam.m0_basis[j][i];
    for (std::size_t j = 0; j < dh; ++j)
        for (std::size_t i = 0; i < n; ++i) cb[i][dm + j] = h_basis[j][i];
    const auto cb_inv_opt = rat_inverse(cb);
    if (!cb_inv_opt) throw DegenerateSystem("enumerate_lie_subspaces: basis inversion failed");
    const RatMat& cb_inv = *cb_inv_opt;
    auto decompose = [&](const RatVec& v) {
        RatVec coords(n, Rat(0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) coords[i] += cb_inv[i][j] * v[j];
        return coords; // first dm entries over m0, last dh over h
    };

    // unknowns L[a][i], flat index a*dm + i
    const std::size_t unknowns = dh * dm;
    RatMat sys;
    RatVec rhs;
    for (std::size_t a = 0; a < dh; ++a) {
        for (std::size_t i = 0; i < dm; ++i) {
            const RatVec br = t.bracket_coeffs(h_basis[a], fam.m0_basis[i]);
            const RatVec co = decompose(br);
            // [W_a, W_b] expanded over h
            std::vector<RatVec> hh(dh);
            for (std::size_t b = 0; b < dh; ++b)
                hh[b] = decompose(t.bracket_coeffs(h_basis[a], h_basis[b]));
            for (std::size_t d = 0; d < dh; ++d) {
                RatVec row(unknowns, Rat(0));
                // + Σ_b L[b][i] ⟨[W_a,W_b]⟩_d  − Σ_j ⟨[W_a,X_i]⟩_{m0,j} L[d][j]
                for (std::size_t b = 0; b < dh; ++b) row[b * dm + i] += hh[b][dm + d];
                for (std::size_t j = 0; j < dm; ++j) row[d * dm + j] -= co[j];
                sys.push_back(std::move(row));
                rhs.push_back(-co[dm + d]);
            }
        }
    }

    const auto sol = solve_affine(sys, rhs, unknowns);
    if (!sol.solvable)
        throw DegenerateSystem("enumerate_lie_subspaces: invariance system has no solution");

    fam.particular.assign(dh, RatVec(dm, Rat(0)));
    for (std::size_t a = 0; a < dh; ++a)
        for (std::size_t i = 0; i < dm; ++i) fam.particular[a][i] = sol.particular[a * dm + i];

    for (const auto& dir : sol.nullspace) {
        RatMat d(dh, RatVec(dm, Rat(0)));
        std::string name;
        for (std::size_t a = 0; a < dh; ++a)
            for (std::size_t i = 0; i < dm; ++i) {
                d[a][i] = dir[a * dm + i];
                if (d[a][i] != 0 && name.empty())
                    name = detail::lambda_name(t.names[m0_index[i]]);
            }
        if (name.empty()) name = "lambda";
        if (std::find(fam.free_names.begin(), fam.free_names.end(), name) != fam.free_names.end())
            name += "_" + std::to_string(fam.free_dirs.size() + 1);
        fam.free_dirs.push_back(std::move(d));
        fam.free_names.push_back(std::move(name));
    }

    // coefficients forced to zero across the entire family
    for (std::size_t a = 0; a < dh; ++a)
        for (std::size_t i = 0; i < dm; ++i) {
            bool zero = fam.particular[a][i] == 0;
            for (const auto& d : fam.free_dirs) zero = zero && d[a][i] == 0;
            if (zero) fam.forced_zero.push_back(detail::lambda_name(t.names[m0_index[i]]));
        }
    return fam;
}

/// Covariant structure tensor components over the m-basis (exact).
struct OriginTensor {
    std::vector<std::string> frame; // textual labels of the m-basis elements
    std::array<Rat, 27> s{};

    const Rat& at(int a, int b, int c) const {
        return s[static_cast<std::size_t>(9 * a + 3 * b + c)];
    }
    Rat& at(int a, int b, int c) { return s[static_cast<std::size_t>(9 * a + 3 * b + c)]; }
    double d_at(int a, int b, int c) const { return to_double(at(a, b, c)); }
};

inline OriginTensor structure_tensor_at_origin(const ReductiveDecomposition& dec,
                                               const RatMat& metric_on_m = rat_identity(3)) {
    validate_decomposition(dec);
    const auto& t = builtin_basis(dec.algebra);
    const std::size_t dm = dec.m_basis.size();
    if (dm != 3) throw DimensionMismatch("structure_tensor_at_origin: expected dim m = 3");
    if (metric_on_m.size() != dm)
        throw DimensionMismatch("structure_tensor_at_origin: metric size != dim m");
    for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t j = 0; j < dm; ++j)
            if (metric_on_m[i][j] != metric_on_m[j][i])
                throw DegenerateSystem("structure_tensor_at_origin: metric not symmetric");
    // leading principal minors positive (SPD)
    {
        const RatMat& g = metric_on_m;
        const Rat m1 = g[0][0];
        const Rat m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        const Rat m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                       g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                       g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
        if (m1 <= 0 || m2 <= 0 || m3 <= 0)
            throw DegenerateSystem("structure_tensor_at_origin: metric not positive definite");
    }

    const std::size_t n = static_cast<std::size_t>(t.dim);
    RatMat cb(n, RatVec(n, Rat(0)));
    for (std::size_t j = 0; j < dm; ++j)
        for (std::size_t i = 0; i < n; ++i) cb[i][j] = dec.m_basis[j][i];
    for (std::size_t j = 0; j < dec.h_basis.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) cb[i][dm + j] = dec.h_basis[j][i];
    const auto cb_inv = rat_inverse(cb);
    if (!cb_inv) throw DegenerateSystem("structure_tensor_at_origin: basis inversion failed");

    // m-components of [X_a, X_b]
    std::array<std::array<RatVec, 3>, 3> p;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const RatVec br = t.bracket_coeffs(dec.m_basis[static_cast<std::size_t>(a)],
                                               dec.m_basis[static_cast<std::size_t>(b)]);
            RatVec mpart(dm, Rat(0));
            for (std::size_t i = 0; i < dm; ++i)
                for (std::size_t j = 0; j < n; ++j) mpart[i] += (*cb_inv)[i][j] * br[j];
            p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(mpart);
        }

    const Rat sigma = dec.h_basis.empty() ? Rat(1) : Rat(-1);
    auto dot = [&](const RatVec& v, int c) {
        Rat acc(0);
        for (std::size_t d = 0; d < dm; ++d) acc += v[d] * metric_on_m[d][static_cast<std::size_t>(c)];
        return acc;
    };

    OriginTensor out;
    for (std::size_t i = 0; i < dm; ++i)
        out.frame.push_back(detail::coeff_label(t, dec.m_basis[i]));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                const Rat twoS = dot(p[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], c) -
                                 dot(p[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)], a) +
                                 dot(p[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)], b);
                out.at(a, b, c) = sigma * twoS / 2;
            }
    return out;
}

/// Fundamental vector field of X at the model origin, by Richardson-
/// extrapolated central differences of the group action along exp(tX).
inline Vec3 tau_map(AlgebraId algebra, const std::vector<double>& coeffs, const ModelSpace& model,
                    bool* warned = nullptr) {
    if (model.algebra != algebra)
        throw AlgebraMismatch("tau_map: model carries " + algebra_name(model.algebra));
    const SquareMatrix gen = algebra_generator(algebra, coeffs);

    auto flow = [&](double t) {
        try {
            return model.act(matrix_exp(t * gen), model.origin);
        } catch (const OutsideDomain&) {
            throw ActionUndefined("tau_map: exp(tX)·o left the chart for t=" + std::to_string(t));
        }
    };
    auto central = [&](double h) {
        const Point plus = flow(h), minus = flow(-h);
        Vec3 d;
        for (int i = 0; i < 3; ++i) {
            double di = plus[static_cast<std::size_t>(i)] - minus[static_cast<std::size_t>(i)];
            const double per = model.chart.period[static_cast<std::size_t>(i)];
            if (per > 0) di -= per * std::round(di / per);
            d[static_cast<std::size_t>(i)] = di / (2 * h);
        }
        return d;
    };

    const double h = 1e-5;
    const Vec3 d1 = central(h), d2 = central(h / 2);
    double disagreement = 0;
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        disagreement = std::max(disagreement, std::abs(d2[static_cast<std::size_t>(i)] - d1[static_cast<std::size_t>(i)]));
        out[static_cast<std::size_t>(i)] = (4 * d2[static_cast<std::size_t>(i)] - d1[static_cast<std::size_t>(i)]) / 3;
    }
    if (warned) *warned = disagreement > 1e-7;
    return out;
}

inline Vec3 tau_map(AlgebraId algebra, const RatVec& coeffs, const ModelSpace& model,
                    bool* warned = nullptr) {
    std::vector<double> c;
    c.reserve(coeffs.size());
    for (const auto& r : coeffs) c.push_back(to_double(r));
    return tau_map(algebra, c, model, warned);
}

} // namespace homstruct
