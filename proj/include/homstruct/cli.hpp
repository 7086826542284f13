// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "homstruct/report.hpp"
#include "homstruct/verifier.hpp"

// Command implementations behind the homstruct binary. Exit codes:
//   0  success
//   2  verification failure (residual above tolerance, crosscheck deviation)
//   64 usage error

namespace homstruct {

struct CmdResult {
    int exit_code = 0;
    std::string text;
    std::vector<ReportDocument> docs;
};

namespace cli_detail {

inline std::string fmt_sci(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.3e", v);
    return b;
}
inline std::string fmt_num(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%g", v);
    return b;
}

struct SpaceRep {
    ModelSpace model;
    SubspaceFamily family;
    StructureLabel label;
};

inline std::vector<SpaceRep> reps_for(const std::string& space) {
    std::vector<SpaceRep> reps;
    if (space == "s2xr") {
        ModelSpace m = make_s2xr();
        reps.push_back({m, enumerate_lie_subspaces(m.algebra, m.isotropy), StructureLabel::lambda});
    } else if (space == "h2xr") {
        ModelSpace m = make_h2xr();
        reps.push_back({m, enumerate_lie_subspaces(m.algebra, m.isotropy), StructureLabel::lambda});
        ModelSpace s = make_h2xr_solv();
        reps.push_back({s, enumerate_lie_subspaces(s.algebra, s.isotropy), StructureLabel::solv});
    } else {
        throw Error("unknown space '" + space + "' (expected s2xr or h2xr)");
    }
    return reps;
}

/// Origin tensor of the instantiated family expressed in the model's
/// presentation frame at o (the orthonormal coordinate frame of the table).
inline OriginTensorReport origin_report(const ModelSpace& model, const SubspaceFamily& fam,
                                        const std::vector<Rat>& values) {
    const auto dec = fam.instantiate(values);
    const auto S = structure_tensor_at_origin(dec);
    const auto& t = builtin_basis(dec.algebra);

    // exact τ images of the m-basis, as chart vectors
    std::array<Vec3, 3> tau{};
    for (std::size_t a = 0; a < 3; ++a)
        for (int i = 0; i < t.dim; ++i) {
            const double ci = to_double(dec.m_basis[a][static_cast<std::size_t>(i)]);
            for (int j = 0; j < 3; ++j)
                tau[a][static_cast<std::size_t>(j)] +=
                    ci * model.tau_basis_exact[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    Mat3 F;
    for (int i = 0; i < 3; ++i)
        for (int a = 0; a < 3; ++a) F(i, a) = tau[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)];
    const Mat3 Finv = inverse3(F);

    // presentation frame vectors over the τ basis
    std::array<Vec3, 3> c{};
    for (int j = 0; j < 3; ++j)
        for (int a = 0; a < 3; ++a)
            for (int i = 0; i < 3; ++i)
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)] +=
                    Finv(a, i) * model.frame_chart_vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];

    OriginTensorReport rep;
    rep.frame = {model.frame_names[0], model.frame_names[1], model.frame_names[2]};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double v = 0.0;
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b)
                        for (int d = 0; d < 3; ++d)
                            v += S.d_at(a, b, d) * c[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)] *
                                 c[static_cast<std::size_t>(j)][static_cast<std::size_t>(b)] *
                                 c[static_cast<std::size_t>(k)][static_cast<std::size_t>(d)];
                if (std::abs(v) > 1e-14) rep.entries.push_back({i, j, k, v});
            }
    return rep;
}

inline FamilyReport family_report(const SpaceRep& rep) {
    FamilyReport fr;
    fr.label = named_structure(rep.model, rep.label, 1.0).formula;
    fr.free_params = rep.family.free_names;
    fr.forced_zero = rep.family.forced_zero;
    return fr;
}

} // namespace cli_detail

inline CmdResult cmd_classify(const std::string& space) {
    using namespace cli_detail;
    CmdResult out;
    std::vector<SpaceRep> reps;
    try {
        reps = reps_for(space);
    } catch (const Error& e) {
        return {64, std::string(e.what()) + "\n", {}};
    }

    const std::vector<double> lambdas = {0.0, 0.5, 1.0, 2.0};
    std::string text = "space: " + space + "\n";
    for (const auto& rep : reps) {
        ReportDocument doc;
        doc.command = "classify " + space;
        doc.space = space;
        doc.coset = rep.model.coset_tag;
        doc.families.push_back(family_report(rep));

        const bool is_solv = rep.label == StructureLabel::solv;
        const std::vector<Rat> at_one(rep.family.free_count(), Rat(1));
        doc.origin_tensor = origin_report(rep.model, rep.family, at_one);

        // crosscheck the pipeline table against the closed-form structure
        double dev = 0.0;
        if (is_solv) {
            const auto dec = rep.family.instantiate({});
            dev = crosscheck_origin(rep.model, dec, named_structure(rep.model, rep.label));
        } else {
            for (double l : lambdas) {
                const auto dec = rep.family.instantiate_doubles({l});
                dev = std::max(dev,
                               crosscheck_origin(rep.model, dec, named_structure(rep.model, rep.label, l)));
            }
        }
        const bool ok = is_solv ? dev == 0.0 : dev < 1e-8;
        doc.as_residuals.pass = ok;
        if (!ok) out.exit_code = 2;

        text += "coset: " + doc.coset + "\n";
        text += "  family: " + doc.families[0].label;
        if (!doc.families[0].free_params.empty()) {
            text += "   [free: ";
            for (std::size_t i = 0; i < doc.families[0].free_params.size(); ++i)
                text += (i ? ", " : "") + doc.families[0].free_params[i];
            text += "; forced zero: ";
            for (std::size_t i = 0; i < doc.families[0].forced_zero.size(); ++i)
                text += (i ? ", " : "") + doc.families[0].forced_zero[i];
            text += "]";
        } else {
            text += "   [no free parameters]";
        }
        text += "\n";
        text += is_solv ? "  origin tensor over frame (" : "  origin tensor at λ=1 over frame (";
        for (std::size_t i = 0; i < 3; ++i) text += (i ? ", " : "") + doc.origin_tensor.frame[i];
        text += "):\n";
        for (const auto& e : doc.origin_tensor.entries)
            text += "    T(" + doc.origin_tensor.frame[static_cast<std::size_t>(e.i)] + ", " +
                    doc.origin_tensor.frame[static_cast<std::size_t>(e.j)] + ", " +
                    doc.origin_tensor.frame[static_cast<std::size_t>(e.k)] + ") = " + fmt_num(e.value) +
                    "\n";
        if (!is_solv)
            text += "    (entries scale linearly in λ; λ ≥ 0 is the canonical representative of λ ~ −λ)\n";
        text += std::string("  origin crosscheck vs closed form") +
                (is_solv ? "" : " (λ ∈ {0, 0.5, 1, 2})") + ": max deviation " + fmt_sci(dev) +
                (ok ? "  [ok]" : "  [FAIL]") + "\n";
        out.docs.push_back(std::move(doc));
    }
    out.text = text;
    return out;
}

inline CmdResult cmd_verify(const std::string& space, const std::string& label, double lambda,
                            const VerificationConfig& cfg) {
    using namespace cli_detail;
    CmdResult out;
    if (label != "lambda" && label != "solv")
        return {64, "unknown label '" + label + "' (expected lambda or solv)\n", {}};
    if (label == "solv" && space != "h2xr")
        return {64, "label solv is only available on h2xr\n", {}};

    std::vector<SpaceRep> reps;
    try {
        reps = reps_for(space);
    } catch (const Error& e) {
        return {64, std::string(e.what()) + "\n", {}};
    }
    const SpaceRep& rep = (label == "solv") ? reps[1] : reps[0];
    const NamedStructure structure =
        named_structure(rep.model, rep.label, label == "solv" ? 0.0 : lambda);

    const ASResidualReport as = verify_ambrose_singer(rep.model, structure, cfg);
    const double inv = invariance_residual(rep.model, structure, cfg);
    const bool pass = as.pass && inv < cfg.tol;

    ReportDocument doc;
    {
        char cmd[256];
        std::snprintf(cmd, sizeof cmd,
                      "verify %s --label %s --lambda %g --samples %d --tol %g --seed %llu "
                      "--fd-step %g",
                      space.c_str(), label.c_str(), lambda, cfg.samples, cfg.tol,
                      static_cast<unsigned long long>(cfg.seed), cfg.fd_step);
        doc.command = cmd;
    }
    doc.space = space;
    doc.coset = structure.coset_tag;
    doc.families.push_back(family_report(rep));
    doc.origin_tensor = origin_report(
        rep.model, rep.family,
        std::vector<Rat>(rep.family.free_count(), rat_from_double(label == "solv" ? 0.0 : lambda)));
    doc.as_residuals = {as.nabla_g, as.nabla_R, as.nabla_T, as.pass};
    out.docs.push_back(doc);

    std::string text = "space: " + space + "   structure: " + structure.formula;
    if (label == "lambda") text += "   λ = " + fmt_num(lambda);
    text += "\n";
    text += "  coset: " + structure.coset_tag + "\n";
    text += "  samples: " + std::to_string(cfg.samples) + "   seed: " + std::to_string(cfg.seed) +
            "   tol: " + fmt_sci(cfg.tol) + "\n";
    text += "  ∇̃g residual: " + fmt_sci(as.nabla_g) + "\n";
    text += "  ∇̃R residual: " + fmt_sci(as.nabla_R) + "\n";
    text += "  ∇̃T residual: " + fmt_sci(as.nabla_T) + "\n";
    text += "  invariance under 20 group motions: " + fmt_sci(inv) + "\n";
    text += pass ? "  PASS\n" : "  FAIL\n";
    out.text = text;
    out.exit_code = pass ? 0 : 2;
    return out;
}

inline CmdResult cmd_isom(const std::string& space, double lambda, double mu,
                          const VerificationConfig& cfg = {}) {
    using namespace cli_detail;
    CmdResult out;
    std::vector<SpaceRep> reps;
    try {
        reps = reps_for(space);
    } catch (const Error& e) {
        return {64, std::string(e.what()) + "\n", {}};
    }
    const ModelSpace& model = reps[0].model;
    const auto result = isomorphism_test(model, lambda, mu, isometry_catalog(model), cfg);

    ReportDocument doc;
    {
        char cmd[128];
        std::snprintf(cmd, sizeof cmd, "isom %s %g %g", space.c_str(), lambda, mu);
        doc.command = cmd;
    }
    doc.space = space;
    doc.coset = model.coset_tag;
    doc.isomorphism.lambda = lambda;
    doc.isomorphism.mu = mu;

    std::string text = "space: " + space + "   T^λ family, λ = " + fmt_num(lambda) +
                       ", μ = " + fmt_num(mu) + "\n";
    switch (result.verdict) {
        case IsomVerdict::isomorphic_witness:
            doc.isomorphism.verdict = "isomorphic";
            doc.isomorphism.witness = result.witness;
            text += "  isomorphic — witness: " + result.witness + " (pullback deviation " +
                    fmt_sci(result.witness_deviation) + ")\n";
            break;
        case IsomVerdict::not_isomorphic:
            doc.isomorphism.verdict = "not_isomorphic";
            text += "  not isomorphic: ‖T‖_g invariant differs (" + fmt_num(result.norm_lambda) +
                    " vs " + fmt_num(result.norm_mu) + ")\n";
            break;
        case IsomVerdict::no_witness_found:
            doc.isomorphism.verdict = "no_witness_found";
            text += "  no witness found over the catalog (not a proof of non-isomorphism)\n";
            break;
    }
    out.docs.push_back(doc);
    out.text = text;
    return out;
}

} // namespace homstruct
