// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <string>

#include "homstruct/errors.hpp"

// Chart-based tensor calculus on 3-dimensional Riemannian charts.
//
// Index conventions used throughout:
//   Gamma(k,i,j)   = Γ^k_ij, the Christoffel symbol / connection coefficient.
//   R(l,i,j,k)     = R^l_ijk with R(∂_j,∂_k)∂_i = R^l_ijk ∂_l, i.e.
//                    R^l_ijk = ∂_j Γ^l_ki − ∂_k Γ^l_ji + Γ^l_jm Γ^m_ki − Γ^l_km Γ^m_ji.
//   Lowered R(m,i,j,k) = g_ml R^l_ijk, so the sectional curvature of the
//                    (a,b)-coordinate plane is R(a,b,a,b) / (g_aa g_bb − g_ab²).
//   covariant_derivative puts the derivative index FIRST in the result.
//
// Partial derivatives are 4th-order central differences; the default steps
// keep truncation and round-off below the verification tolerances on the
// sampling boxes of both product models.

namespace homstruct {

using Point = std::array<double, 3>;
using Vec3 = std::array<double, 3>;

inline constexpr double kFdStep = 1e-5;          // first derivatives of fields
inline constexpr double kFdStepCurvature = 1e-4; // Γ-derivatives inside curvature

/// Symmetric 3x3 matrix value (row-major).
struct Mat3 {
    std::array<double, 9> a{};
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(3 * i + j)]; }
    double operator()(int i, int j) const { return a[static_cast<std::size_t>(3 * i + j)]; }
};

inline double det3(const Mat3& m) {
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

inline Mat3 inverse3(const Mat3& m) {
    const double det = det3(m);
    if (std::abs(det) < 1e-12) throw SingularMetric("matrix not invertible to 1e-12");
    Mat3 inv;
    inv(0, 0) = (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) / det;
    inv(0, 1) = (m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2)) / det;
    inv(0, 2) = (m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1)) / det;
    inv(1, 0) = (m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2)) / det;
    inv(1, 1) = (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) / det;
    inv(1, 2) = (m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2)) / det;
    inv(2, 0) = (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)) / det;
    inv(2, 1) = (m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1)) / det;
    inv(2, 2) = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) / det;
    return inv;
}

/// Tensor components at a point; rank up to 5 over a 3-dimensional chart.
struct TensorValue {
    int rank = 0;
    std::array<double, 243> v{};

    explicit TensorValue(int r = 0) : rank(r) {}

    std::size_t size() const {
        std::size_t n = 1;
        for (int i = 0; i < rank; ++i) n *= 3;
        return n;
    }
    template <class... I>
    static std::size_t flat(I... idx) {
        std::size_t f = 0;
        ((f = 3 * f + static_cast<std::size_t>(idx)), ...);
        return f;
    }
    template <class... I>
    double& operator()(I... idx) {
        return v[flat(idx...)];
    }
    template <class... I>
    double operator()(I... idx) const {
        return v[flat(idx...)];
    }
};

inline TensorValue operator-(const TensorValue& x, const TensorValue& y) {
    TensorValue r(x.rank);
    for (std::size_t i = 0; i < r.size(); ++i) r.v[i] = x.v[i] - y.v[i];
    return r;
}

inline TensorValue operator+(const TensorValue& x, const TensorValue& y) {
    TensorValue r(x.rank);
    for (std::size_t i = 0; i < r.size(); ++i) r.v[i] = x.v[i] + y.v[i];
    return r;
}

inline TensorValue operator*(double s, const TensorValue& x) {
    TensorValue r = x;
    for (std::size_t i = 0; i < r.size(); ++i) r.v[i] *= s;
    return r;
}

inline double max_abs(const TensorValue& x) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x.v[i]));
    return m;
}

/// Connection coefficients Γ^k_ij at a point.
struct ChristoffelValue {
    std::array<double, 27> a{};
    double& operator()(int k, int i, int j) {
        return a[static_cast<std::size_t>(9 * k + 3 * i + j)];
    }
    double operator()(int k, int i, int j) const {
        return a[static_cast<std::size_t>(9 * k + 3 * i + j)];
    }
};

/// A single coordinate chart. `period[i] > 0` marks coordinate i as periodic
/// (finite differences of chart-valued maps unwrap across the seam).
struct Chart {
    std::string name;
    std::array<std::string, 3> coords;
    std::function<bool(const Point&)> in_domain;
    Point origin{};
    std::array<double, 3> period{0.0, 0.0, 0.0};
};

struct MetricField {
    Chart chart;
    std::function<Mat3(const Point&)> g;
    // Optional closed forms; finite differences remain available as the
    // independent route.
    std::function<ChristoffelValue(const Point&)> christoffel_closed;
    // d[l](k,i,j) = ∂_l Γ^k_ij
    std::function<std::array<ChristoffelValue, 3>(const Point&)> christoffel_deriv_closed;
};

struct TensorField {
    Chart chart;
    int contravariant = 0;
    int covariant = 0;
    std::function<TensorValue(const Point&)> eval;
    int rank() const { return contravariant + covariant; }
};

struct ConnectionField {
    Chart chart;
    std::function<ChristoffelValue(const Point&)> coeff;
    bool has_torsion = false;
};

enum class DerivMode { closed_form, finite_diff };
enum class IndexDirection { up, down };

inline void require_in_domain(const Chart& c, const Point& p, const char* who) {
    if (!c.in_domain(p))
        throw OutsideDomain(std::string(who) + ": point outside domain of chart " + c.name);
}

inline void require_fd_ball(const Chart& c, const Point& p, double radius, const char* who) {
    for (int ax = 0; ax < 3; ++ax)
        for (double s : {-radius, radius}) {
            Point q = p;
            q[static_cast<std::size_t>(ax)] += s;
            if (!c.in_domain(q))
                throw OutsideDomain(std::string(who) + ": finite-difference stencil leaves chart " +
                                    c.name);
        }
}

/// 4th-order central difference of a flat-array-valued map along one axis.
template <std::size_t N, class F>
std::array<double, N> deriv4_flat(F&& f, const Point& p, int axis, double h) {
    Point p2 = p, p1 = p, m1 = p, m2 = p;
    p2[static_cast<std::size_t>(axis)] += 2 * h;
    p1[static_cast<std::size_t>(axis)] += h;
    m1[static_cast<std::size_t>(axis)] -= h;
    m2[static_cast<std::size_t>(axis)] -= 2 * h;
    const auto f2 = f(p2), f1 = f(p1), g1 = f(m1), g2 = f(m2);
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i)
        out[i] = (-f2[i] + 8.0 * f1[i] - 8.0 * g1[i] + g2[i]) / (12.0 * h);
    return out;
}

/// Christoffel symbols of a metric, by attached closed form or by 4th-order
/// central differences of the metric components.
inline ChristoffelValue christoffel(const MetricField& metric, const Point& p, DerivMode mode,
                                    double fd_step = kFdStep) {
    require_in_domain(metric.chart, p, "christoffel");
    if (mode == DerivMode::closed_form) {
        if (!metric.christoffel_closed)
            throw Error("christoffel: metric has no closed form attached");
        return metric.christoffel_closed(p);
    }
    require_fd_ball(metric.chart, p, 2 * fd_step, "christoffel");
    const Mat3 ginv = inverse3(metric.g(p));
    std::array<std::array<double, 9>, 3> dg; // dg[l] = ∂_l g
    for (int l = 0; l < 3; ++l)
        dg[static_cast<std::size_t>(l)] =
            deriv4_flat<9>([&](const Point& q) { return metric.g(q).a; }, p, l, fd_step);
    auto dgv = [&](int l, int i, int j) {
        return dg[static_cast<std::size_t>(l)][static_cast<std::size_t>(3 * i + j)];
    };
    ChristoffelValue out;
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                double s = 0.0;
                for (int l = 0; l < 3; ++l)
                    s += ginv(k, l) * (dgv(i, j, l) + dgv(j, i, l) - dgv(l, i, j));
                out(k, i, j) = 0.5 * s;
            }
    return out;
}

/// Levi-Civita connection of a metric.
inline ConnectionField levi_civita(const MetricField& metric,
                                   DerivMode mode = DerivMode::closed_form) {
    ConnectionField conn;
    conn.chart = metric.chart;
    conn.coeff = [metric, mode](const Point& p) { return christoffel(metric, p, mode); };
    conn.has_torsion = false;
    return conn;
}

namespace detail {

inline ChristoffelValue best_gamma(const MetricField& metric, const Point& p) {
    return metric.christoffel_closed ? metric.christoffel_closed(p)
                                     : christoffel(metric, p, DerivMode::finite_diff);
}

inline std::array<ChristoffelValue, 3> gamma_derivatives(const MetricField& metric, const Point& p,
                                                         double fd_step) {
    if (metric.christoffel_deriv_closed) return metric.christoffel_deriv_closed(p);
    require_fd_ball(metric.chart, p, 2 * fd_step, "curvature");
    std::array<ChristoffelValue, 3> out;
    for (int l = 0; l < 3; ++l) {
        const auto d = deriv4_flat<27>([&](const Point& q) { return best_gamma(metric, q).a; }, p,
                                       l, fd_step);
        out[static_cast<std::size_t>(l)].a = d;
    }
    return out;
}

} // namespace detail

/// Curvature tensor R^l_ijk of the Levi-Civita connection (valence (1,3)).
inline TensorValue curvature(const MetricField& metric, const Point& p,
                             double fd_step = kFdStepCurvature) {
    require_in_domain(metric.chart, p, "curvature");
    const ChristoffelValue G = detail::best_gamma(metric, p);
    const auto dG = detail::gamma_derivatives(metric, p, fd_step);
    TensorValue R(4);
    for (int l = 0; l < 3; ++l)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double s = dG[static_cast<std::size_t>(j)](l, k, i) -
                               dG[static_cast<std::size_t>(k)](l, j, i);
                    for (int m = 0; m < 3; ++m)
                        s += G(l, j, m) * G(m, k, i) - G(l, k, m) * G(m, j, i);
                    R(l, i, j, k) = s;
                }
    return R;
}

/// Fully lowered curvature R_mijk = g_ml R^l_ijk (valence (0,4)).
inline TensorValue curvature_lowered(const MetricField& metric, const Point& p,
                                     double fd_step = kFdStepCurvature) {
    const TensorValue R = curvature(metric, p, fd_step);
    const Mat3 g = metric.g(p);
    TensorValue out(4);
    for (int m = 0; m < 3; ++m)
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) {
                    double s = 0.0;
                    for (int l = 0; l < 3; ++l) s += g(m, l) * R(l, i, j, k);
                    out(m, i, j, k) = s;
                }
    return out;
}

/// Sectional curvature of the coordinate plane (a,b) at p.
inline double sectional_curvature(const MetricField& metric, const Point& p, int a, int b) {
    const TensorValue rl = curvature_lowered(metric, p);
    const Mat3 g = metric.g(p);
    const double denom = g(a, a) * g(b, b) - g(a, b) * g(a, b);
    return rl(a, b, a, b) / denom;
}

/// Coordinate covariant derivative; the result carries the derivative index
/// first, so a valence (r,s) input yields valence (r,s+1) with layout
/// (i, original indices...). Supports r ∈ {0,1} and r+s ≤ 4.
inline TensorValue covariant_derivative(const ConnectionField& conn, const TensorField& field,
                                        const Point& p, double fd_step = kFdStep) {
    const int r = field.contravariant, s = field.covariant;
    const int rank = r + s;
    if (rank > 4 || r > 1)
        throw DimensionMismatch("covariant_derivative: valence (r,s) with r<=1, r+s<=4 required");
    require_in_domain(field.chart, p, "covariant_derivative");
    require_fd_ball(field.chart, p, 2 * fd_step, "covariant_derivative");

    const ChristoffelValue G = conn.coeff(p);
    const TensorValue f0 = field.eval(p);
    std::array<std::array<double, 243>, 3> df;
    for (int ax = 0; ax < 3; ++ax)
        df[static_cast<std::size_t>(ax)] =
            deriv4_flat<243>([&](const Point& q) { return field.eval(q).v; }, p, ax, fd_step);

    std::size_t n = f0.size();
    std::array<std::size_t, 5> weight{}; // weight of slot t in the flat index
    {
        std::size_t w = 1;
        for (int t = rank - 1; t >= 0; --t) {
            weight[static_cast<std::size_t>(t)] = w;
            w *= 3;
        }
    }

    TensorValue out(rank + 1);
    for (int i = 0; i < 3; ++i) {
        for (std::size_t flat = 0; flat < n; ++flat) {
            double val = df[static_cast<std::size_t>(i)][flat];
            for (int t = 0; t < rank; ++t) {
                const std::size_t w = weight[static_cast<std::size_t>(t)];
                const int digit = static_cast<int>((flat / w) % 3);
                const std::size_t base = flat - static_cast<std::size_t>(digit) * w;
                for (int m = 0; m < 3; ++m) {
                    const double fm = f0.v[base + static_cast<std::size_t>(m) * w];
                    if (t < r)
                        val += G(digit, i, m) * fm; // contravariant slot
                    else
                        val -= G(m, i, digit) * fm; // covariant slot
                }
            }
            out.v[static_cast<std::size_t>(i) * n + flat] = val;
        }
    }
    return out;
}

/// Contract one slot of a tensor with g (down) or g^{-1} (up) at p. The slot
/// keeps its position; the caller tracks the valence change.
inline TensorValue raise_lower(const MetricField& metric, const TensorField& field, int slot,
                               IndexDirection dir, const Point& p) {
    require_in_domain(metric.chart, p, "raise_lower");
    const TensorValue f = field.eval(p);
    if (slot < 0 || slot >= f.rank) throw DimensionMismatch("raise_lower: slot out of range");
    const Mat3 g = metric.g(p);
    const Mat3 contractor = (dir == IndexDirection::up) ? inverse3(g) : g;

    std::size_t w = 1;
    for (int t = f.rank - 1; t > slot; --t) w *= 3;

    TensorValue out(f.rank);
    for (std::size_t flat = 0; flat < f.size(); ++flat) {
        const int digit = static_cast<int>((flat / w) % 3);
        const std::size_t base = flat - static_cast<std::size_t>(digit) * w;
        double s = 0.0;
        for (int m = 0; m < 3; ++m)
            s += contractor(digit, m) * f.v[base + static_cast<std::size_t>(m) * w];
        out.v[flat] = s;
    }
    return out;
}

/// Metric area 2-form of the surface factor spanned by coordinate slots
/// (si,sj): dV = sign * sqrt(det of surface block) dx^si ∧ dx^sj.
/// Block-diagonality against the remaining coordinate is checked at every
/// evaluation point.
inline TensorField wedge_area_form(const MetricField& metric, int si, int sj,
                                   double orientation_sign) {
    if (si == sj || si < 0 || sj < 0 || si > 2 || sj > 2)
        throw DimensionMismatch("wedge_area_form: invalid surface slots");
    const int sk = 3 - si - sj;
    TensorField f;
    f.chart = metric.chart;
    f.covariant = 2;
    f.eval = [metric, si, sj, sk, orientation_sign](const Point& p) {
        const Mat3 g = metric.g(p);
        if (std::abs(g(si, sk)) > 1e-12 || std::abs(g(sj, sk)) > 1e-12)
            throw NotProductMetric("wedge_area_form: metric is not block-diagonal across the "
                                   "surface and line slots");
        const double det2 = g(si, si) * g(sj, sj) - g(si, sj) * g(si, sj);
        const double s = orientation_sign * std::sqrt(det2);
        TensorValue out(2);
        out(si, sj) = s;
        out(sj, si) = -s;
        return out;
    };
    return f;
}

/// View a metric as a (0,2) tensor field.
inline TensorField metric_as_field(const MetricField& metric) {
    TensorField f;
    f.chart = metric.chart;
    f.covariant = 2;
    f.eval = [metric](const Point& p) {
        const Mat3 g = metric.g(p);
        TensorValue out(2);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) out(i, j) = g(i, j);
        return out;
    };
    return f;
}

/// View the lowered curvature as a (0,4) tensor field.
inline TensorField curvature_field(const MetricField& metric) {
    TensorField f;
    f.chart = metric.chart;
    f.covariant = 4;
    f.eval = [metric](const Point& p) { return curvature_lowered(metric, p); };
    return f;
}

} // namespace homstruct
