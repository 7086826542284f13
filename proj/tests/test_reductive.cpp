// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "homstruct/reductive.hpp"

using namespace homstruct;

namespace {

const std::vector<Rat> kLambdaSamples = {Rat(-2), Rat(-1), Rat(0), Rat(1, 2), Rat(1), Rat(3)};

RatVec unit_vec(int dim, int i) {
    RatVec v(static_cast<std::size_t>(dim), Rat(0));
    v[static_cast<std::size_t>(i)] = 1;
    return v;
}

} // namespace

TEST_CASE("enumerate_lie_subspaces: so(3)+R with h = <u1>") {
    const auto fam = enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0)});
    REQUIRE(fam.free_count() == 1);
    REQUIRE(fam.free_names == std::vector<std::string>{"lambda"});
    REQUIRE(fam.forced_zero == std::vector<std::string>{"lambda_2", "lambda_3"});
    REQUIRE(fam.m0_basis.size() == 3);

    // the free direction attaches u1 to e only
    REQUIRE(fam.free_dirs[0][0][0] == 0);
    REQUIRE(fam.free_dirs[0][0][1] == 0);
    REQUIRE(fam.free_dirs[0][0][2] == 1);
    for (std::size_t i = 0; i < 3; ++i) REQUIRE(fam.particular[0][i] == 0);

    for (const auto& lambda : kLambdaSamples) {
        const auto dec = fam.instantiate({lambda});
        // m^λ = <u2, u3, e + λ u1> exactly
        REQUIRE(dec.m_basis[0] == unit_vec(4, 1));
        REQUIRE(dec.m_basis[1] == unit_vec(4, 2));
        RatVec last = unit_vec(4, 3);
        last[0] = lambda;
        REQUIRE(dec.m_basis[2] == last);
        REQUIRE_NOTHROW(validate_decomposition(dec));
    }
}

TEST_CASE("enumerate_lie_subspaces: sl(2,R)+R with h = <v1>") {
    const auto fam = enumerate_lie_subspaces(AlgebraId::sl2_r, {unit_vec(4, 0)});
    REQUIRE(fam.free_count() == 1);
    REQUIRE(fam.forced_zero == std::vector<std::string>{"lambda_2", "lambda_3"});
    for (const auto& lambda : kLambdaSamples) {
        const auto dec = fam.instantiate({lambda});
        REQUIRE(dec.m_basis[0] == unit_vec(4, 1)); // v2
        REQUIRE(dec.m_basis[1] == unit_vec(4, 2)); // v3
        RatVec last = unit_vec(4, 3);
        last[0] = lambda;
        REQUIRE(dec.m_basis[2] == last); // e + λ v1
    }
}

TEST_CASE("enumerate_lie_subspaces: trivial isotropy gives m = g") {
    const auto fam = enumerate_lie_subspaces(AlgebraId::solv, {});
    REQUIRE(fam.free_count() == 0);
    REQUIRE(fam.forced_zero.empty());
    const auto dec = fam.instantiate({});
    REQUIRE(dec.m_basis.size() == 3);
    for (int i = 0; i < 3; ++i) REQUIRE(dec.m_basis[static_cast<std::size_t>(i)] == unit_vec(3, i));
}

TEST_CASE("enumerate_lie_subspaces: degenerate inputs are rejected") {
    SECTION("dependent h basis") {
        RatVec two_u1 = unit_vec(4, 0);
        two_u1[0] = 2;
        REQUIRE_THROWS_AS(enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0), two_u1}),
                          NoComplement);
    }
    SECTION("h not a subalgebra") {
        REQUIRE_THROWS_AS(enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0), unit_vec(4, 1)}),
                          NotSubalgebra);
    }
    SECTION("wrong coefficient length") {
        REQUIRE_THROWS_AS(enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(3, 0)}),
                          DimensionMismatch);
    }
}

TEST_CASE("structure_tensor_at_origin: so(3)+R family reproduces the classification table") {
    const auto fam = enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0)});
    for (const auto& lambda : kLambdaSamples) {
        const auto S = structure_tensor_at_origin(fam.instantiate({lambda}));
        // m-frame {u2, u3, e+λu1}: τ(u2)=∂x², τ(u3)=−∂x³, τ(e+λu1)=∂y.
        // The chart-frame table T(∂y,∂x²,∂x³)=+λ therefore reads S(2,0,1)=−λ here.
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                for (int c = 0; c < 3; ++c) {
                    Rat expected(0);
                    if (a == 2 && b == 0 && c == 1) expected = -lambda;
                    if (a == 2 && b == 1 && c == 0) expected = lambda;
                    INFO("entry (" << a << b << c << ") lambda=" << lambda.str());
                    REQUIRE(S.at(a, b, c) == expected);
                }
    }
}

TEST_CASE("structure_tensor_at_origin: sl(2,R)+R family matches the same pattern") {
    const auto fam = enumerate_lie_subspaces(AlgebraId::sl2_r, {unit_vec(4, 0)});
    for (const auto& lambda : kLambdaSamples) {
        const auto S = structure_tensor_at_origin(fam.instantiate({lambda}));
        REQUIRE(S.at(2, 0, 1) == -lambda);
        REQUIRE(S.at(2, 1, 0) == lambda);
        REQUIRE(S.at(0, 1, 2) == 0);
        REQUIRE(S.at(1, 2, 0) == 0);
    }
}

TEST_CASE("structure_tensor_at_origin: solvable group case matches the (-)-connection table") {
    const auto fam = enumerate_lie_subspaces(AlgebraId::solv, {});
    const auto S = structure_tensor_at_origin(fam.instantiate({}));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                Rat expected(0);
                if (a == 0 && b == 0 && c == 1) expected = 1;  // T_{e1}e1 = e2
                if (a == 0 && b == 1 && c == 0) expected = -1; // T_{e1}e2 = -e1
                REQUIRE(S.at(a, b, c) == expected);
            }
}

TEST_CASE("structure_tensor_at_origin: direct evaluation of the Riemannian-group formula") {
    // independent oracle: 2 g(T_X Y, Z) = g([X,Y],Z) − g([Y,Z],X) + g([Z,X],Y)
    // on all 27 basis triples, orthonormal basis
    const auto& t = builtin_basis(AlgebraId::solv);
    const auto fam = enumerate_lie_subspaces(AlgebraId::solv, {});
    const auto S = structure_tensor_at_origin(fam.instantiate({}));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c) {
                const auto ab = t.bracket_coeffs(unit_vec(3, a), unit_vec(3, b));
                const auto bc = t.bracket_coeffs(unit_vec(3, b), unit_vec(3, c));
                const auto ca = t.bracket_coeffs(unit_vec(3, c), unit_vec(3, a));
                const Rat direct = (ab[static_cast<std::size_t>(c)] - bc[static_cast<std::size_t>(a)] + ca[static_cast<std::size_t>(b)]) / 2;
                REQUIRE(S.at(a, b, c) == direct);
            }
}

TEST_CASE("origin tensor properties") {
    SECTION("skew in the last two slots") {
        for (auto id : {AlgebraId::so3_r, AlgebraId::sl2_r}) {
            const auto fam = enumerate_lie_subspaces(id, {unit_vec(4, 0)});
            for (const auto& lambda : kLambdaSamples) {
                const auto S = structure_tensor_at_origin(fam.instantiate({lambda}));
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int c = 0; c < 3; ++c) REQUIRE(S.at(a, b, c) == -S.at(a, c, b));
            }
        }
    }
    SECTION("linearity in lambda (exact)") {
        const auto fam = enumerate_lie_subspaces(AlgebraId::so3_r, {unit_vec(4, 0)});
        const auto S1 = structure_tensor_at_origin(fam.instantiate({Rat(1)}));
        for (const auto& lambda : kLambdaSamples) {
            const auto S = structure_tensor_at_origin(fam.instantiate({lambda}));
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    for (int c = 0; c < 3; ++c)
                        REQUIRE(S.at(a, b, c) == lambda * S1.at(a, b, c));
        }
    }
    SECTION("non-reductive decomposition is rejected") {
        ReductiveDecomposition dec;
        dec.algebra = AlgebraId::so3_r;
        dec.h_basis = {unit_vec(4, 0)};
        RatVec bad = unit_vec(4, 1); // u2 + u1
        bad[0] = 1;
        dec.m_basis = {bad, unit_vec(4, 2), unit_vec(4, 3)};
        REQUIRE_THROWS_AS(structure_tensor_at_origin(dec), NotReductive);
    }
    SECTION("m and h that fail to span are rejected") {
        ReductiveDecomposition dec;
        dec.algebra = AlgebraId::so3_r;
        dec.h_basis = {unit_vec(4, 0)};
        RatVec sum = unit_vec(4, 1); // u2 + u3 duplicates the span
        sum[2] = 1;
        dec.m_basis = {unit_vec(4, 1), unit_vec(4, 2), sum};
        REQUIRE_THROWS_AS(structure_tensor_at_origin(dec), DegenerateSystem);
    }
}

TEST_CASE("tau_map: tabulated values on both models") {
    SECTION("s2xr") {
        const auto m = make_s2xr();
        const Vec3 tu2 = tau_map(AlgebraId::so3_r, std::vector<double>{0, 1, 0, 0}, m);
        const Vec3 tu3 = tau_map(AlgebraId::so3_r, std::vector<double>{0, 0, 1, 0}, m);
        const Vec3 te = tau_map(AlgebraId::so3_r, std::vector<double>{0, 0, 0, 1}, m);
        // τ(u2) = ∂/∂x² = ∂φ, τ(u3) = −∂/∂x³ = ∂θ, τ(e) = ∂/∂y
        REQUIRE(std::abs(tu2[0]) < 1e-9);
        REQUIRE(tu2[1] == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(std::abs(tu2[2]) < 1e-9);
        REQUIRE(tu3[0] == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(std::abs(tu3[1]) < 1e-9);
        REQUIRE(te[2] == Catch::Approx(1.0).margin(1e-12));
        // isotropy direction vanishes
        const Vec3 tu1 = tau_map(AlgebraId::so3_r, std::vector<double>{1, 0, 0, 0}, m);
        for (double c : tu1) REQUIRE(std::abs(c) < 1e-9);
    }
    SECTION("h2xr") {
        const auto m = make_h2xr();
        const Vec3 tv2 = tau_map(AlgebraId::sl2_r, std::vector<double>{0, 1, 0, 0}, m);
        const Vec3 tv3 = tau_map(AlgebraId::sl2_r, std::vector<double>{0, 0, 1, 0}, m);
        REQUIRE(tv2[0] == Catch::Approx(1.0).margin(1e-9));
        REQUIRE(std::abs(tv2[1]) < 1e-9);
        REQUIRE(tv3[1] == Catch::Approx(-1.0).margin(1e-9)); // τ(v3) = −∂/∂y
        REQUIRE(std::abs(tv3[0]) < 1e-9);
    }
    SECTION("solv frame") {
        const auto m = make_h2xr_solv();
        for (int i = 0; i < 3; ++i) {
            std::vector<double> c(3, 0.0);
            c[static_cast<std::size_t>(i)] = 1.0;
            const Vec3 tau = tau_map(AlgebraId::solv, c, m);
            for (int j = 0; j < 3; ++j)
                REQUIRE(tau[static_cast<std::size_t>(j)] ==
                        Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-9));
        }
    }
}

TEST_CASE("tau_map: linearity under finite differencing") {
    std::mt19937_64 rng(321);
    for (const auto& m : {make_s2xr(), make_h2xr()}) {
        const int n = 4;
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> x(n), y(n);
            for (auto& c : x) c = 2.0 * unit_uniform(rng) - 1.0;
            for (auto& c : y) c = 2.0 * unit_uniform(rng) - 1.0;
            const double a = 2.0 * unit_uniform(rng) - 1.0;
            const double b = 2.0 * unit_uniform(rng) - 1.0;
            std::vector<double> combo(n);
            for (int i = 0; i < n; ++i) combo[static_cast<std::size_t>(i)] = a * x[static_cast<std::size_t>(i)] + b * y[static_cast<std::size_t>(i)];
            const Vec3 tx = tau_map(m.algebra, x, m);
            const Vec3 ty = tau_map(m.algebra, y, m);
            const Vec3 tc = tau_map(m.algebra, combo, m);
            for (int i = 0; i < 3; ++i)
                REQUIRE(tc[static_cast<std::size_t>(i)] ==
                        Catch::Approx(a * tx[static_cast<std::size_t>(i)] + b * ty[static_cast<std::size_t>(i)]).margin(1e-8));
        }
    }
}

TEST_CASE("tau_map: closed-form fundamental field of the Möbius action") {
    // For traceless X = (α β; γ δ), the induced field at w is −γw² + (α−δ)w + β.
    const auto m = make_h2xr();
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<double> c(4);
        for (auto& x : c) x = 2.0 * unit_uniform(rng) - 1.0;
        const SquareMatrix X = algebra_generator(AlgebraId::sl2_r, c);
        const std::complex<double> w(m.origin[0], m.origin[1]);
        const double alpha = X.at(0, 0), beta = X.at(0, 1), gamma = X.at(1, 0), delta = X.at(1, 1);
        const std::complex<double> field = -gamma * w * w + (alpha - delta) * w + beta;
        const Vec3 tau = tau_map(AlgebraId::sl2_r, c, m);
        REQUIRE(tau[0] == Catch::Approx(field.real()).margin(1e-8));
        REQUIRE(tau[1] == Catch::Approx(field.imag()).margin(1e-8));
        REQUIRE(tau[2] == Catch::Approx(c[3]).margin(1e-10)); // z-translation rate
    }
}

TEST_CASE("tau_map: errors and warnings") {
    SECTION("model/algebra mismatch") {
        const auto m = make_s2xr();
        REQUIRE_THROWS_AS(tau_map(AlgebraId::sl2_r, std::vector<double>{0, 1, 0, 0}, m),
                          AlgebraMismatch);
    }
    SECTION("differencing off the chart raises ActionUndefined") {
        auto m = make_s2xr();
        m.origin = {kS2ThetaMargin + 1e-9, 0.0, 0.0};
        REQUIRE_THROWS_AS(tau_map(AlgebraId::so3_r, std::vector<double>{0, 0, 1, 0}, m),
                          ActionUndefined);
    }
    SECTION("no warning on the standard models") {
        const auto m = make_h2xr();
        bool warned = true;
        tau_map(AlgebraId::sl2_r, std::vector<double>{0.3, -0.2, 0.5, 1.0}, m, &warned);
        REQUIRE_FALSE(warned);
    }
}
