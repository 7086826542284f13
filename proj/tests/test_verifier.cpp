// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "homstruct/verifier.hpp"

using namespace homstruct;

namespace {

RatVec unit_vec(int dim, int i) {
    RatVec v(static_cast<std::size_t>(dim), Rat(0));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

VerificationConfig quick_cfg(int samples = 30) {
    VerificationConfig cfg;
    cfg.samples = samples;
    return cfg;
}

} // namespace

TEST_CASE("verify_ambrose_singer: the λ-families and T_solv certify") {
    const auto cfg = quick_cfg();
    for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
        for (const auto& m : {make_s2xr(), make_h2xr()}) {
            const auto s = named_structure(m, StructureLabel::lambda, lambda);
            const auto rep = verify_ambrose_singer(m, s, cfg);
            INFO(m.key << " lambda=" << lambda << " g=" << rep.nabla_g << " R=" << rep.nabla_R
                       << " T=" << rep.nabla_T);
            REQUIRE(rep.pass);
        }
    }
    const auto solv = make_h2xr_solv();
    const auto rep = verify_ambrose_singer(solv, named_structure(solv, StructureLabel::solv), cfg);
    INFO("solv g=" << rep.nabla_g << " R=" << rep.nabla_R << " T=" << rep.nabla_T);
    REQUIRE(rep.pass);
}

TEST_CASE("verify_ambrose_singer: a symmetric perturbation fails on ∇̃g") {
    const auto m = make_h2xr();
    auto s = named_structure(m, StructureLabel::lambda, 1.0);
    const auto base = s.tensor.eval; // T^λ + 0.1·dy⊗(dx⊗dy + dy⊗dx)
    s.tensor.eval = [base](const Point& p) {
        TensorValue v = base(p);
        v(1, 0, 1) += 0.1;
        v(1, 1, 0) += 0.1;
        return v;
    };
    const auto cfg = quick_cfg();
    const auto rep = verify_ambrose_singer(m, s, cfg);
    REQUIRE_FALSE(rep.pass);
    REQUIRE(rep.nabla_g > cfg.tol);

    SECTION("the ∇̃g residual equals the skew-symmetry defect") {
        double skew = 0.0, res_g = rep.nabla_g;
        for (int i = 0; i < cfg.samples; ++i) {
            const Point p = indexed_sample_checked(m, cfg.seed, i);
            const TensorValue v = s.tensor.eval(p);
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c) skew = std::max(skew, std::abs(v(a, b, c) + v(a, c, b)));
        }
        REQUIRE(std::abs(res_g - skew) < 1e-8);
    }
}

TEST_CASE("symmetric-space anchor: ∇R = 0 for the Levi-Civita connection") {
    const auto cfg = quick_cfg();
    REQUIRE(levi_civita_curvature_residual(make_s2xr(), cfg) < cfg.tol);
    REQUIRE(levi_civita_curvature_residual(make_h2xr(), cfg) < cfg.tol);
}

TEST_CASE("crosscheck_origin: pipeline vs closed forms") {
    SECTION("s2xr λ-family") {
        const auto m = make_s2xr();
        const auto fam = enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0)});
        for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
            const auto dec = fam.instantiate_doubles({lambda});
            const auto s = named_structure(m, StructureLabel::lambda, lambda);
            REQUIRE(crosscheck_origin(m, dec, s) < 1e-8);
        }
    }
    SECTION("h2xr λ-family through sl(2,R)") {
        const auto m = make_h2xr();
        const auto fam = enumerate_lie_subspaces(AlgebraId::sl2_r, {unit_vec(4, 0)});
        for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
            const auto dec = fam.instantiate_doubles({lambda});
            const auto s = named_structure(m, StructureLabel::lambda, lambda);
            REQUIRE(crosscheck_origin(m, dec, s) < 1e-8);
        }
    }
    SECTION("solvable case is exact") {
        const auto m = make_h2xr_solv();
        const auto fam = enumerate_lie_subspaces(AlgebraId::solv, {});
        const auto dec = fam.instantiate({});
        const auto s = named_structure(m, StructureLabel::solv);
        REQUIRE(crosscheck_origin(m, dec, s) == 0.0);
    }
    SECTION("sign sensitivity: the crosscheck rejects the flipped structure") {
        const auto m = make_s2xr();
        const auto fam = enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0)});
        const auto dec = fam.instantiate_doubles({1.0});
        const auto wrong = named_structure(m, StructureLabel::lambda, -1.0);
        REQUIRE(crosscheck_origin(m, dec, wrong) > 1.0);
    }
    SECTION("degenerate τ images raise FrameMismatch") {
        auto m = make_h2xr_solv();
        m.tau_basis_exact = {Vec3{1, 0, 0}, Vec3{1, 0, 0}, Vec3{0, 0, 1}, Vec3{0, 0, 0}};
        const auto fam = enumerate_lie_subspaces(AlgebraId::solv, {});
        const auto dec = fam.instantiate({});
        REQUIRE_THROWS_AS(crosscheck_origin(m, dec, named_structure(m, StructureLabel::solv)),
                          FrameMismatch);
    }
}

TEST_CASE("isomorphism_test: witnesses and certificates") {
    const auto cfg = quick_cfg();
    for (const auto& m : {make_s2xr(), make_h2xr()}) {
        const auto catalog = isometry_catalog(m);
        SECTION(m.key + ": λ = μ has the identity witness") {
            const auto r = isomorphism_test(m, 1.0, 1.0, catalog, cfg);
            REQUIRE(r.verdict == IsomVerdict::isomorphic_witness);
            REQUIRE(r.witness == "identity");
        }
        SECTION(m.key + ": λ = −μ is matched by the reflection") {
            const auto r = isomorphism_test(m, 1.0, -1.0, catalog, cfg);
            REQUIRE(r.verdict == IsomVerdict::isomorphic_witness);
            REQUIRE((r.witness == "reflection" || r.witness == "r_flip"));
            REQUIRE(r.witness_deviation < cfg.tol);
        }
        SECTION(m.key + ": |λ| ≠ |μ| is certified non-isomorphic") {
            const auto r = isomorphism_test(m, 1.0, 2.0, catalog, cfg);
            REQUIRE(r.verdict == IsomVerdict::not_isomorphic);
            REQUIRE(r.norm_lambda == Catch::Approx(std::sqrt(2.0)).margin(1e-6));
            REQUIRE(r.norm_mu == Catch::Approx(2.0 * std::sqrt(2.0)).margin(1e-6));
            REQUIRE_FALSE(r.certificate.empty());
        }
    }
}

TEST_CASE("‖T‖²_g is constant over the manifold") {
    const auto cfg = quick_cfg();
    for (const auto& [m, label] : {std::pair{make_s2xr(), StructureLabel::lambda},
                                   std::pair{make_h2xr(), StructureLabel::lambda},
                                   std::pair{make_h2xr_solv(), StructureLabel::solv}}) {
        const auto s = named_structure(m, label, 1.3);
        REQUIRE(norm_variance(m, s, cfg) < 1e-10);
        if (label == StructureLabel::lambda) {
            // ‖T^λ‖_g = √2·|λ|
            const double n = std::sqrt(structure_norm_sq(m.metric, s.tensor, m.origin));
            REQUIRE(n == Catch::Approx(std::sqrt(2.0) * 1.3).margin(1e-9));
        }
    }
}

TEST_CASE("invariance of named structures under random group elements") {
    const auto cfg = quick_cfg();
    for (const auto& [m, label] : {std::pair{make_s2xr(), StructureLabel::lambda},
                                   std::pair{make_h2xr(), StructureLabel::lambda},
                                   std::pair{make_h2xr_solv(), StructureLabel::solv}}) {
        const auto s = named_structure(m, label, 1.0);
        INFO(m.coset_tag);
        REQUIRE(invariance_residual(m, s, cfg) < cfg.tol);
    }
}

TEST_CASE("verification is deterministic for a fixed seed") {
    const auto m = make_s2xr();
    const auto s = named_structure(m, StructureLabel::lambda, 1.0);
    const auto cfg = quick_cfg();
    const auto a = verify_ambrose_singer(m, s, cfg);
    const auto b = verify_ambrose_singer(m, s, cfg);
    REQUIRE(a == b); // bit-identical residuals

    VerificationConfig other = cfg;
    other.seed = 43;
    const auto c = verify_ambrose_singer(m, s, other);
    REQUIRE_FALSE(a == c); // different samples, different residual pattern
}

TEST_CASE("configuration validation") {
    VerificationConfig cfg;
    cfg.samples = 0;
    REQUIRE_THROWS_AS(validate_config(cfg), Error);
    cfg = {};
    cfg.tol = 0.0;
    REQUIRE_THROWS_AS(validate_config(cfg), Error);
    cfg = {};
    cfg.fd_step = 1.0;
    REQUIRE_THROWS_AS(validate_config(cfg), Error);
}
