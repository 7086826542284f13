// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "homstruct/diffgeo.hpp"
#include "homstruct/models.hpp"
#include "homstruct/reductive.hpp"

// Certification engine for the equations ∇̃g = ∇̃R = ∇̃T = 0 with
// ∇̃ = ∇ − T, plus the origin crosscheck and the isomorphism search.
//
// Sampling is reproducible and order independent: the coordinates of sample i
// come from an splitmix64 stream keyed by (seed, i) alone, and all residuals
// aggregate through max-norms.

namespace homstruct {

struct VerificationConfig {
    int samples = 100;
    double tol = 1e-6;
    double fd_step = 1e-5;
    std::uint64_t seed = 42;
    std::vector<double> lambdas = {0.0, 0.5, 1.0, 2.0};
};

inline void validate_config(const VerificationConfig& cfg) {
    if (cfg.samples < 1) throw Error("config: samples must be >= 1");
    if (!(cfg.tol > 0)) throw Error("config: tol must be positive");
    if (!(cfg.fd_step > 0) || cfg.fd_step > 1e-2) throw Error("config: fd_step in (0, 1e-2]");
}

struct ASResidualReport {
    std::string model_key;
    std::string label; // "T_lambda" | "T_solv"
    double lambda = 0.0;
    double nabla_g = 0.0;
    double nabla_R = 0.0;
    double nabla_T = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    int samples = 0;

    bool operator==(const ASResidualReport&) const = default;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

inline double stream_uniform(std::uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

} // namespace detail

/// Sample i of the run keyed by (seed, i); independent of every other sample.
inline Point indexed_sample(const ModelSpace& model, std::uint64_t seed, int index) {
    std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(index + 1));
    Point p;
    for (int i = 0; i < 3; ++i) {
        const double u = detail::stream_uniform(state);
        p[static_cast<std::size_t>(i)] =
            model.sample_lo[static_cast<std::size_t>(i)] +
            u * (model.sample_hi[static_cast<std::size_t>(i)] -
                 model.sample_lo[static_cast<std::size_t>(i)]);
    }
    return p;
}

inline Point indexed_sample_checked(const ModelSpace& model, std::uint64_t seed, int index) {
    constexpr int kResampleCap = 100;
    for (int k = 0; k < kResampleCap; ++k) {
        const Point p = indexed_sample(model, seed + static_cast<std::uint64_t>(k), index);
        if (model.chart.in_domain(p)) return p;
    }
    throw OutsideDomain("sampling: no in-domain point found after resampling");
}

/// Connection coefficients of ∇̃ = ∇ − T, with T^k_ij = g^kl S_ijl.
inline ConnectionField as_connection(const ModelSpace& model, const NamedStructure& structure) {
    ConnectionField conn;
    conn.chart = model.chart;
    conn.has_torsion = true;
    conn.coeff = [metric = model.metric, tensor = structure.tensor](const Point& p) {
        ChristoffelValue G = detail::best_gamma(metric, p);
        const Mat3 ginv = inverse3(metric.g(p));
        const TensorValue S = tensor.eval(p);
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    double t = 0.0;
                    for (int l = 0; l < 3; ++l) t += ginv(k, l) * S(i, j, l);
                    G(k, i, j) -= t;
                }
        return G;
    };
    return conn;
}

/// Max-norm residuals of ∇̃g, ∇̃R, ∇̃T over the seeded sample set.
inline ASResidualReport verify_ambrose_singer(const ModelSpace& model,
                                              const NamedStructure& structure,
                                              const VerificationConfig& cfg) {
    validate_config(cfg);
    const ConnectionField conn = as_connection(model, structure);
    const TensorField gf = metric_as_field(model.metric);
    const TensorField rf = curvature_field(model.metric);

    ASResidualReport rep;
    rep.model_key = model.key;
    rep.label = structure.label == StructureLabel::solv ? "T_solv" : "T_lambda";
    rep.lambda = structure.lambda;
    rep.seed = cfg.seed;
    rep.samples = cfg.samples;

    for (int i = 0; i < cfg.samples; ++i) {
        const Point p = indexed_sample_checked(model, cfg.seed, i);
        rep.nabla_g = std::max(rep.nabla_g, max_abs(covariant_derivative(conn, gf, p, cfg.fd_step)));
        rep.nabla_R = std::max(rep.nabla_R, max_abs(covariant_derivative(conn, rf, p, cfg.fd_step)));
        rep.nabla_T =
            std::max(rep.nabla_T, max_abs(covariant_derivative(conn, structure.tensor, p, cfg.fd_step)));
    }
    rep.pass = rep.nabla_g < cfg.tol && rep.nabla_R < cfg.tol && rep.nabla_T < cfg.tol;
    return rep;
}

/// Symmetric-space anchor: ∇R of the Levi-Civita connection itself.
inline double levi_civita_curvature_residual(const ModelSpace& model,
                                             const VerificationConfig& cfg) {
    validate_config(cfg);
    const ConnectionField conn = levi_civita(model.metric);
    const TensorField rf = curvature_field(model.metric);
    double res = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
        const Point p = indexed_sample_checked(model, cfg.seed, i);
        res = std::max(res, max_abs(covariant_derivative(conn, rf, p, cfg.fd_step)));
    }
    return res;
}

/// Compare the reductive-pipeline origin tensor against the closed-form
/// structure, both expressed over the τ-image frame of the m-basis.
inline double crosscheck_origin(const ModelSpace& model, const ReductiveDecomposition& dec,
                                const NamedStructure& structure) {
    const OriginTensor pipeline = structure_tensor_at_origin(dec);

    // frame vectors τ(m_a) in chart components; trivial isotropy uses the
    // exact left-invariant frame, coset models the finite-difference flow
    std::array<Vec3, 3> frame{};
    const auto& t = builtin_basis(dec.algebra);
    for (std::size_t a = 0; a < 3; ++a) {
        if (dec.h_basis.empty()) {
            for (int i = 0; i < t.dim; ++i) {
                const double ci = to_double(dec.m_basis[a][static_cast<std::size_t>(i)]);
                for (int j = 0; j < 3; ++j)
                    frame[a][static_cast<std::size_t>(j)] +=
                        ci * model.tau_basis_exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            }
        } else {
            frame[a] = tau_map(dec.algebra, dec.m_basis[a], model);
        }
    }
    {
        Mat3 f;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) f(i, j) = frame[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
        if (std::abs(det3(f)) < 1e-6)
            throw FrameMismatch("crosscheck_origin: τ images do not span the tangent space");
    }

    const TensorValue closed = structure.tensor.eval(model.origin);
    double dev = 0.0;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                double contracted = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        for (int k = 0; k < 3; ++k)
                            contracted += closed(i, j, k) *
                                          frame[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                                          frame[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)] *
                                          frame[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
                dev = std::max(dev, std::abs(pipeline.d_at(a, b, c) - contracted));
            }
    return dev;
}

/// Total metric contraction ‖T‖²_g at a point.
inline double structure_norm_sq(const MetricField& metric, const TensorField& tensor,
                                const Point& p) {
    const Mat3 gi = inverse3(metric.g(p));
    const TensorValue S = tensor.eval(p);
    double acc = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                const double sijk = S(i, j, k);
                if (sijk == 0.0) continue;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c)
                            acc += sijk * S(a, b, c) * gi(i, a) * gi(j, b) * gi(k, c);
            }
    return acc;
}

/// A sample box shrunk so that catalogued motions cannot leave the chart.
inline Point safe_indexed_sample(const ModelSpace& model, std::uint64_t seed, int index,
                                 double theta_shrink = 0.55) {
    Point p = indexed_sample(model, seed, index);
    if (model.key == "s2xr") {
        const double lo = model.sample_lo[0] + theta_shrink;
        const double hi = model.sample_hi[0] - theta_shrink;
        std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * static_cast<std::uint64_t>(index + 1));
        p[0] = lo + detail::stream_uniform(state) * (hi - lo);
    }
    return p;
}

enum class IsomVerdict { isomorphic_witness, not_isomorphic, no_witness_found };

struct IsomorphismResult {
    IsomVerdict verdict = IsomVerdict::no_witness_found;
    std::string witness;
    double witness_deviation = std::numeric_limits<double>::infinity();
    double norm_lambda = 0.0; // ‖T^λ‖_g
    double norm_mu = 0.0;     // ‖T^μ‖_g
    std::string certificate;
};

/// Search the isometry catalog for φ with φ*T^λ = T^μ; when no witness is
/// found, the metric norm ‖T‖_g (an isometry invariant, constant by
/// homogeneity) decides genuine non-isomorphism.
inline IsomorphismResult isomorphism_test(const ModelSpace& model, double lambda, double mu,
                                          const std::vector<IsometryMap>& catalog,
                                          const VerificationConfig& cfg = {}) {
    validate_config(cfg);
    if (catalog.empty()) throw Error("isomorphism_test: empty catalog");
    const NamedStructure tl = named_structure(model, StructureLabel::lambda, lambda);
    const NamedStructure tm = named_structure(model, StructureLabel::lambda, mu);

    IsomorphismResult res;
    res.norm_lambda = std::sqrt(structure_norm_sq(model.metric, tl.tensor, model.origin));
    res.norm_mu = std::sqrt(structure_norm_sq(model.metric, tm.tensor, model.origin));

    const int points = std::min(cfg.samples, 25);
    for (const auto& phi : catalog) {
        double dev = 0.0;
        for (int i = 0; i < points; ++i) {
            const Point p = safe_indexed_sample(model, cfg.seed, i);
            dev = std::max(dev, max_abs(pullback_tensor(phi, tl.tensor, p) - tm.tensor.eval(p)));
        }
        if (dev < cfg.tol) {
            res.verdict = IsomVerdict::isomorphic_witness;
            res.witness = phi.name;
            res.witness_deviation = dev;
            return res;
        }
    }

    if (std::abs(res.norm_lambda - res.norm_mu) > cfg.tol) {
        res.verdict = IsomVerdict::not_isomorphic;
        res.certificate = "metric norm differs: ‖T^λ‖_g = " + std::to_string(res.norm_lambda) +
                          " vs ‖T^μ‖_g = " + std::to_string(res.norm_mu);
        return res;
    }
    res.verdict = IsomVerdict::no_witness_found;
    return res;
}

/// Max deviation of the structure under `count` random transitive group
/// elements at safe sample points.
inline double invariance_residual(const ModelSpace& model, const NamedStructure& structure,
                                  const VerificationConfig& cfg, int count = 20,
                                  int points_per_element = 3) {
    validate_config(cfg);
    std::mt19937_64 rng(cfg.seed ^ 0xA5A5A5A5A5A5A5A5ull);
    double res = 0.0;
    for (int k = 0; k < count; ++k) {
        const auto phi = isometry_from_group(model, random_group_element(model, rng, 0.2, 1.0));
        for (int j = 0; j < points_per_element; ++j) {
            const Point p = safe_indexed_sample(model, cfg.seed, k * points_per_element + j, 0.4);
            res = std::max(res,
                           max_abs(pullback_tensor(phi, structure.tensor, p) - structure.tensor.eval(p)));
        }
    }
    return res;
}

/// Variance of ‖T‖²_g across the sample set (homogeneity witness).
inline double norm_variance(const ModelSpace& model, const NamedStructure& structure,
                            const VerificationConfig& cfg) {
    validate_config(cfg);
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(cfg.samples));
    for (int i = 0; i < cfg.samples; ++i)
        vals.push_back(
            structure_norm_sq(model.metric, structure.tensor, indexed_sample_checked(model, cfg.seed, i)));
    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(vals.size());
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    return var / static_cast<double>(vals.size());
}

} // namespace homstruct
