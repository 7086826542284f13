// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "homstruct/diffgeo.hpp"
#include "homstruct/matlie.hpp"

// The concrete product models.
//
//   s2xr:  spherical chart (theta, phi, y) on the hyperquadric model,
//          g = diag(1, sin² theta, 1), origin (pi/2, 0, 0) <-> (1,0,0,0).
//          The isometry group SO(3)×R is the block group diag(A, e^t); the
//          sphere factor acts through the transpose of A so that the
//          fundamental vector fields of u2, u3 at the origin are the tangent
//          vectors of the tau table (+d/dx², −d/dx³).
//   h2xr:  upper half-plane chart (x, y, z), g = (dx²+dy²)/y² + dz², origin
//          (0,1,0) <-> (i,0). Two representations: SL(2,R)×R acting by Möbius
//          transformations × translation, and the solvable group acting on
//          itself by left multiplication (x,y,z)·p = (x + y p_x, y p_y, z + p_z).

namespace homstruct {

inline constexpr double kS2ThetaMargin = 0.05;
inline constexpr double kH2MinY = 1e-3;

/// An isometry of a model, with optional closed-form Jacobian.
struct IsometryMap {
    std::string name;
    std::function<Point(const Point&)> fwd;
    std::function<Mat3(const Point&)> jacobian_closed; // empty -> finite differences
    bool orientation_preserving = true;
};

struct ModelSpace {
    std::string key; // "s2xr" | "h2xr"
    std::string coset_tag;
    AlgebraId algebra;
    Chart chart;
    MetricField metric;
    Point origin{};
    std::vector<RatVec> isotropy; // h basis, coefficients over builtin_basis
    std::function<Point(const SquareMatrix&, const Point&)> act;
    std::function<SquareMatrix(const Point&)> transitive_to; // maps origin to p
    std::array<Vec3, 4> tau_basis_exact{}; // chart components of tau(basis_i) at o
    std::array<std::string, 3> frame_names;
    std::array<Vec3, 3> frame_chart_vectors{};
    Point sample_lo{}, sample_hi{};
};

/// Generator matrix of an algebra coefficient vector.
inline SquareMatrix algebra_generator(AlgebraId id, const std::vector<double>& coeffs) {
    const auto& t = builtin_basis(id);
    if (static_cast<int>(coeffs.size()) != t.dim)
        throw DimensionMismatch("algebra_generator: coefficient count != basis size");
    SquareMatrix m = SquareMatrix::zero(t.basis[0].mat.dim);
    for (int i = 0; i < t.dim; ++i)
        m = m + coeffs[static_cast<std::size_t>(i)] * t.basis[static_cast<std::size_t>(i)].mat;
    return m;
}

/// exp(t X) as a group element of the model's matrix group.
inline SquareMatrix group_exp(const ModelSpace& model, const std::vector<double>& coeffs,
                              double t = 1.0) {
    SquareMatrix g = algebra_generator(model.algebra, coeffs);
    return matrix_exp(t * g);
}

namespace detail {

inline std::array<double, 3> s2_embed(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

} // namespace detail

inline ModelSpace make_s2xr() {
    using std::numbers::pi;
    ModelSpace m;
    m.key = "s2xr";
    m.coset_tag = "SO(3)×ℝ/SO(2)";
    m.algebra = AlgebraId::so3_r;

    m.chart.name = "s2xr";
    m.chart.coords = {"theta", "phi", "y"};
    m.chart.in_domain = [](const Point& p) {
        return p[0] > kS2ThetaMargin && p[0] < pi - kS2ThetaMargin;
    };
    m.chart.origin = {pi / 2, 0.0, 0.0};
    m.chart.period = {0.0, 2 * pi, 0.0};
    m.origin = m.chart.origin;

    m.metric.chart = m.chart;
    m.metric.g = [](const Point& p) {
        Mat3 g;
        g(0, 0) = 1.0;
        g(1, 1) = std::sin(p[0]) * std::sin(p[0]);
        g(2, 2) = 1.0;
        return g;
    };
    m.metric.christoffel_closed = [](const Point& p) {
        const double st = std::sin(p[0]), ct = std::cos(p[0]);
        ChristoffelValue G;
        G(0, 1, 1) = -st * ct;          // Γ^θ_φφ
        G(1, 0, 1) = G(1, 1, 0) = ct / st; // Γ^φ_θφ
        return G;
    };
    m.metric.christoffel_deriv_closed = [](const Point& p) {
        const double st = std::sin(p[0]);
        std::array<ChristoffelValue, 3> d{};
        d[0](0, 1, 1) = -std::cos(2 * p[0]);
        d[0](1, 0, 1) = d[0](1, 1, 0) = -1.0 / (st * st);
        return d;
    };

    m.isotropy = {rat_vec({1, 0, 0, 0})};

    m.act = [in_domain = m.chart.in_domain](const SquareMatrix& g, const Point& p) -> Point {
        const auto x = detail::s2_embed(p[0], p[1]);
        std::array<double, 3> xp{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) xp[static_cast<std::size_t>(i)] += g.at(j, i) * x[static_cast<std::size_t>(j)];
        const double n = std::sqrt(xp[0] * xp[0] + xp[1] * xp[1] + xp[2] * xp[2]);
        for (auto& c : xp) c /= n;
        Point q{std::acos(std::clamp(xp[2], -1.0, 1.0)), std::atan2(xp[1], xp[0]),
                p[2] + std::log(g.at(3, 3))};
        if (!in_domain(q)) throw OutsideDomain("s2xr action left the chart domain");
        return q;
    };

    m.transitive_to = [](const Point& p) {
        const auto r0 = detail::s2_embed(p[0], p[1]);
        // complete r0 to a positively oriented orthonormal frame of rows
        std::array<double, 3> aux = (std::abs(r0[1]) < 0.9) ? std::array<double, 3>{0, 1, 0}
                                                            : std::array<double, 3>{0, 0, 1};
        const double d = aux[0] * r0[0] + aux[1] * r0[1] + aux[2] * r0[2];
        std::array<double, 3> r1{aux[0] - d * r0[0], aux[1] - d * r0[1], aux[2] - d * r0[2]};
        const double n1 = std::sqrt(r1[0] * r1[0] + r1[1] * r1[1] + r1[2] * r1[2]);
        for (auto& c : r1) c /= n1;
        const std::array<double, 3> r2{r0[1] * r1[2] - r0[2] * r1[1],
                                       r0[2] * r1[0] - r0[0] * r1[2],
                                       r0[0] * r1[1] - r0[1] * r1[0]};
        SquareMatrix g = SquareMatrix::zero(4);
        for (int j = 0; j < 3; ++j) {
            g.at(0, j) = r0[static_cast<std::size_t>(j)];
            g.at(1, j) = r1[static_cast<std::size_t>(j)];
            g.at(2, j) = r2[static_cast<std::size_t>(j)];
        }
        g.at(3, 3) = std::exp(p[2]);
        return g;
    };

    m.tau_basis_exact = {Vec3{0, 0, 0}, Vec3{0, 1, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 1}};
    m.frame_names = {"∂/∂x²", "∂/∂x³", "∂/∂y"};
    m.frame_chart_vectors = {Vec3{0, 1, 0}, Vec3{-1, 0, 0}, Vec3{0, 0, 1}};

    m.sample_lo = {0.3, 0.0, -2.0};
    m.sample_hi = {pi - 0.3, 2 * pi, 2.0};
    return m;
}

namespace detail {

inline Chart h2xr_chart() {
    Chart c;
    c.name = "h2xr";
    c.coords = {"x", "y", "z"};
    c.in_domain = [](const Point& p) { return p[1] > kH2MinY; };
    c.origin = {0.0, 1.0, 0.0};
    return c;
}

inline MetricField h2xr_metric(const Chart& chart) {
    MetricField f;
    f.chart = chart;
    f.g = [](const Point& p) {
        const double y2 = p[1] * p[1];
        Mat3 g;
        g(0, 0) = 1.0 / y2;
        g(1, 1) = 1.0 / y2;
        g(2, 2) = 1.0;
        return g;
    };
    f.christoffel_closed = [](const Point& p) {
        const double iy = 1.0 / p[1];
        ChristoffelValue G;
        G(0, 0, 1) = G(0, 1, 0) = -iy; // Γ^x_xy
        G(1, 0, 0) = iy;               // Γ^y_xx
        G(1, 1, 1) = -iy;              // Γ^y_yy
        return G;
    };
    f.christoffel_deriv_closed = [](const Point& p) {
        const double iy2 = 1.0 / (p[1] * p[1]);
        std::array<ChristoffelValue, 3> d{};
        d[1](0, 0, 1) = d[1](0, 1, 0) = iy2;
        d[1](1, 0, 0) = -iy2;
        d[1](1, 1, 1) = iy2;
        return d;
    };
    return f;
}

} // namespace detail

inline ModelSpace make_h2xr() {
    ModelSpace m;
    m.key = "h2xr";
    m.coset_tag = "SL(2,ℝ)×ℝ/SO(2)";
    m.algebra = AlgebraId::sl2_r;
    m.chart = detail::h2xr_chart();
    m.origin = m.chart.origin;
    m.metric = detail::h2xr_metric(m.chart);
    m.isotropy = {rat_vec({1, 0, 0, 0})};

    m.act = [in_domain = m.chart.in_domain](const SquareMatrix& g, const Point& p) -> Point {
        const double a = g.at(0, 0), b = g.at(0, 1), c = g.at(1, 0), d = g.at(1, 1);
        const double x = p[0], y = p[1];
        const double den = (c * x + d) * (c * x + d) + c * c * y * y;
        if (den <= 0.0) throw OutsideDomain("h2xr action: Möbius denominator vanished");
        Point q{((a * x + b) * (c * x + d) + a * c * y * y) / den,
                (a * d - b * c) * y / den, p[2] + std::log(g.at(2, 2))};
        if (!in_domain(q)) throw OutsideDomain("h2xr action left the chart domain");
        return q;
    };

    m.transitive_to = [](const Point& p) {
        const double sy = std::sqrt(p[1]);
        SquareMatrix g = SquareMatrix::zero(3);
        g.at(0, 0) = sy;
        g.at(0, 1) = p[0] / sy;
        g.at(1, 1) = 1.0 / sy;
        g.at(2, 2) = std::exp(p[2]);
        return g;
    };

    m.tau_basis_exact = {Vec3{0, 0, 0}, Vec3{1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, 1}};
    m.frame_names = {"∂/∂x", "∂/∂y", "∂/∂z"};
    m.frame_chart_vectors = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

    m.sample_lo = {-2.0, 0.2, -2.0};
    m.sample_hi = {2.0, 5.0, 2.0};
    return m;
}

/// The trivial-isotropy representation: the solvable group model acting on
/// itself, realized on the same chart and metric as make_h2xr().
inline ModelSpace make_h2xr_solv() {
    ModelSpace m;
    m.key = "h2xr";
    m.coset_tag = "H²×ℝ/{Id}";
    m.algebra = AlgebraId::solv;
    m.chart = detail::h2xr_chart();
    m.origin = m.chart.origin;
    m.metric = detail::h2xr_metric(m.chart);
    m.isotropy = {};

    m.act = [in_domain = m.chart.in_domain](const SquareMatrix& g, const Point& p) -> Point {
        const double y0 = g.at(0, 0), x0 = g.at(0, 1), z0 = std::log(g.at(2, 2));
        if (y0 <= 0.0) throw OutsideDomain("solv action: group element has y <= 0");
        Point q{x0 + y0 * p[0], y0 * p[1], z0 + p[2]};
        if (!in_domain(q)) throw OutsideDomain("solv action left the chart domain");
        return q;
    };

    m.transitive_to = [](const Point& p) {
        SquareMatrix g = SquareMatrix::zero(3);
        g.at(0, 0) = p[1];
        g.at(0, 1) = p[0];
        g.at(1, 1) = 1.0;
        g.at(2, 2) = std::exp(p[2]);
        return g;
    };

    m.tau_basis_exact = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}, Vec3{0, 0, 0}};
    m.frame_names = {"e1", "e2", "e3"};
    m.frame_chart_vectors = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

    m.sample_lo = {-2.0, 0.2, -2.0};
    m.sample_hi = {2.0, 5.0, 2.0};
    return m;
}

enum class StructureLabel { lambda, solv };

/// A closed-form homogeneous structure tensor as a (0,3) field, with its
/// coset tag.
struct NamedStructure {
    std::string model_key;
    StructureLabel label = StructureLabel::lambda;
    double lambda = 0.0;
    double canonical_lambda = 0.0; // representative of the class λ ~ −λ
    std::string coset_tag;
    std::string formula;
    TensorField tensor;
};

inline NamedStructure named_structure(const ModelSpace& model, StructureLabel label,
                                      double lambda = 0.0) {
    NamedStructure ns;
    ns.model_key = model.key;
    ns.label = label;
    ns.lambda = lambda;
    ns.canonical_lambda = std::abs(lambda);
    ns.tensor.chart = model.chart;
    ns.tensor.covariant = 3;

    const TensorField area = wedge_area_form(model.metric, 0, 1, +1.0);

    if (label == StructureLabel::solv) {
        if (model.key != "h2xr")
            throw LabelMismatch("named_structure: T_solv lives on h2xr only");
        ns.coset_tag = "H²×ℝ/{Id}";
        ns.formula = "θ¹⊗(θ¹∧θ²)";
        ns.canonical_lambda = 0.0;
        ns.tensor.eval = [area](const Point& p) {
            const TensorValue dv = area.eval(p);
            const double theta1 = 1.0 / p[1]; // θ¹(∂x)
            TensorValue s(3);
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) s(0, j, k) = theta1 * dv(j, k);
            return s;
        };
        return ns;
    }

    // λ-family: λ·(d(line) ⊗ dV_surface); the line coordinate is slot 2 in
    // both charts.
    ns.coset_tag = model.key == "s2xr" ? "SO(3)×ℝ/SO(2)" : "SL(2,ℝ)×ℝ/SO(2)";
    ns.formula = model.key == "s2xr" ? "λ·(dy⊗dV_S²)" : "λ·(dz⊗dV_H²)";
    ns.tensor.eval = [area, lambda](const Point& p) {
        const TensorValue dv = area.eval(p);
        TensorValue s(3);
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) s(2, j, k) = lambda * dv(j, k);
        return s;
    };
    return ns;
}

/// 4th-order finite-difference Jacobian of a chart map, unwrapping periodic
/// output coordinates.
inline Mat3 fd_jacobian(const std::function<Point(const Point&)>& f, const Chart& out_chart,
                        const Point& p, double h = kFdStep) {
    Mat3 J;
    for (int i = 0; i < 3; ++i) {
        Point p2 = p, p1 = p, m1 = p, m2 = p;
        p2[static_cast<std::size_t>(i)] += 2 * h;
        p1[static_cast<std::size_t>(i)] += h;
        m1[static_cast<std::size_t>(i)] -= h;
        m2[static_cast<std::size_t>(i)] -= 2 * h;
        const Point f2 = f(p2), f1 = f(p1), g1 = f(m1), g2 = f(m2);
        for (int a = 0; a < 3; ++a) {
            const double per = out_chart.period[static_cast<std::size_t>(a)];
            const double ref = f1[static_cast<std::size_t>(a)];
            auto unwrap = [per, ref](double x) {
                if (per > 0) x -= per * std::round((x - ref) / per);
                return x;
            };
            const double v2 = unwrap(f2[static_cast<std::size_t>(a)]);
            const double v1 = ref;
            const double w1 = unwrap(g1[static_cast<std::size_t>(a)]);
            const double w2 = unwrap(g2[static_cast<std::size_t>(a)]);
            J(a, i) = (-v2 + 8 * v1 - 8 * w1 + w2) / (12 * h);
        }
    }
    return J;
}

/// Pullback of a covariant tensor field: (φ*S)(u,v,w)|_p = S(dφu,dφv,dφw)|_φ(p).
inline TensorValue pullback_tensor(const IsometryMap& phi, const TensorField& field,
                                   const Point& p) {
    if (field.contravariant != 0)
        throw DimensionMismatch("pullback_tensor: covariant fields only");
    const Point q = phi.fwd(p);
    require_in_domain(field.chart, q, "pullback_tensor");
    const Mat3 J = phi.jacobian_closed ? phi.jacobian_closed(p) : fd_jacobian(phi.fwd, field.chart, p);
    const TensorValue s = field.eval(q);
    const int rank = field.rank();

    std::array<std::size_t, 4> weight{};
    {
        std::size_t w = 1;
        for (int t = rank - 1; t >= 0; --t) {
            weight[static_cast<std::size_t>(t)] = w;
            w *= 3;
        }
    }
    TensorValue out(rank);
    for (std::size_t flat = 0; flat < out.size(); ++flat) {
        double acc = 0.0;
        for (std::size_t src = 0; src < s.size(); ++src) {
            double f = 1.0;
            for (int t = 0; t < rank && f != 0.0; ++t) {
                const int it = static_cast<int>((flat / weight[static_cast<std::size_t>(t)]) % 3);
                const int at = static_cast<int>((src / weight[static_cast<std::size_t>(t)]) % 3);
                f *= J(at, it);
            }
            acc += f * s.v[src];
        }
        out.v[flat] = acc;
    }
    return out;
}

/// Max-norm deviation of the pulled-back metric from the metric at p.
inline double metric_pullback_residual(const ModelSpace& model, const IsometryMap& phi,
                                       const Point& p) {
    const TensorField gf = metric_as_field(model.metric);
    const TensorValue pulled = pullback_tensor(phi, gf, p);
    const TensorValue base = gf.eval(p);
    return max_abs(pulled - base);
}

/// Wrap a group element as an isometry of the model.
inline IsometryMap isometry_from_group(const ModelSpace& model, const SquareMatrix& g,
                                       std::string name = "group_element") {
    IsometryMap phi;
    phi.name = std::move(name);
    phi.fwd = [act = model.act, g](const Point& p) { return act(g, p); };
    phi.orientation_preserving = true; // connected group
    return phi;
}

/// Catalog used by the isomorphism search: identity, a generic group motion,
/// and the two orientation-reversing reflections of each model.
inline std::vector<IsometryMap> isometry_catalog(const ModelSpace& model) {
    std::vector<IsometryMap> cat;

    IsometryMap id;
    id.name = "identity";
    id.fwd = [](const Point& p) { return p; };
    id.jacobian_closed = [](const Point&) {
        Mat3 j;
        j(0, 0) = j(1, 1) = j(2, 2) = 1.0;
        return j;
    };
    id.orientation_preserving = true;
    cat.push_back(id);

    std::vector<double> coeffs;
    if (model.algebra == AlgebraId::so3_r)
        coeffs = {0.3, 0.2, -0.4, 0.7};
    else if (model.algebra == AlgebraId::sl2_r)
        coeffs = {0.25, -0.35, 0.15, -0.6};
    else
        coeffs = {0.3, -0.2, 0.5};
    cat.push_back(isometry_from_group(model, group_exp(model, coeffs), "group_motion"));

    IsometryMap refl;
    refl.name = "reflection";
    if (model.key == "s2xr") {
        // x³ ↦ −x³, i.e. θ ↦ π−θ
        refl.fwd = [](const Point& p) { return Point{std::numbers::pi - p[0], p[1], p[2]}; };
    } else {
        refl.fwd = [](const Point& p) { return Point{-p[0], p[1], p[2]}; };
    }
    refl.jacobian_closed = [](const Point&) {
        Mat3 j;
        j(0, 0) = -1.0;
        j(1, 1) = j(2, 2) = 1.0;
        return j;
    };
    refl.orientation_preserving = false;
    cat.push_back(refl);

    IsometryMap flip;
    flip.name = "r_flip"; // flips the ℝ factor
    flip.fwd = [](const Point& p) { return Point{p[0], p[1], -p[2]}; };
    flip.jacobian_closed = [](const Point&) {
        Mat3 j;
        j(0, 0) = j(1, 1) = 1.0;
        j(2, 2) = -1.0;
        return j;
    };
    flip.orientation_preserving = false;
    cat.push_back(flip);

    return cat;
}

/// Deterministic uniform in [0,1) (top 53 bits; avoids distribution
/// implementation differences).
inline double unit_uniform(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random group element with moderate generator coefficients.
inline SquareMatrix random_group_element(const ModelSpace& model, std::mt19937_64& rng,
                                         double rot_scale = 0.3, double transl_scale = 1.0) {
    const auto& t = builtin_basis(model.algebra);
    std::vector<double> c(static_cast<std::size_t>(t.dim));
    for (int i = 0; i < t.dim; ++i) {
        const double scale = (i == t.dim - 1) ? transl_scale : rot_scale;
        c[static_cast<std::size_t>(i)] = scale * (2.0 * unit_uniform(rng) - 1.0);
    }
    return group_exp(model, c);
}

/// Random point in the model's verification sampling box.
inline Point random_sample_point(const ModelSpace& model, std::mt19937_64& rng) {
    Point p;
    for (int i = 0; i < 3; ++i) {
        const double u = unit_uniform(rng);
        p[static_cast<std::size_t>(i)] =
            model.sample_lo[static_cast<std::size_t>(i)] +
            u * (model.sample_hi[static_cast<std::size_t>(i)] - model.sample_lo[static_cast<std::size_t>(i)]);
    }
    return p;
}

} // namespace homstruct
