// Copyright Contributors to the homstruct project
// SPDX-License-Identifier: Apache-2.0

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "homstruct/cli.hpp"

namespace {

int emit(const homstruct::CmdResult& result, const std::string& json_path) {
    std::fputs(result.text.c_str(), stdout);
    if (!json_path.empty() && !result.docs.empty()) {
        std::ofstream f(json_path, std::ios::binary);
        if (!f) {
            std::fprintf(stderr, "cannot write %s\n", json_path.c_str());
            return 74; // EX_IOERR
        }
        f << homstruct::serialize_documents(result.docs);
    }
    return result.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"homogeneous Riemannian structure tensors on S²×ℝ and H²×ℝ"};
    app.require_subcommand(1);
    const std::vector<std::string> spaces = {"s2xr", "h2xr"};

    std::string space, json_path, label = "lambda";
    double lambda = 1.0, mu = 0.0;
    homstruct::VerificationConfig cfg;

    auto* classify = app.add_subcommand("classify", "enumerate Lie subspaces and origin tensors");
    classify->add_option("space", space, "s2xr or h2xr")
        ->required()
        ->check(CLI::IsMember(spaces));
    classify->add_option("--json", json_path, "write the machine-readable report here");

    auto* verify = app.add_subcommand("verify", "certify the Ambrose–Singer equations");
    verify->add_option("space", space, "s2xr or h2xr")->required()->check(CLI::IsMember(spaces));
    verify->add_option("--label", label, "structure family: lambda or solv")
        ->check(CLI::IsMember({"lambda", "solv"}));
    verify->add_option("--lambda", lambda, "family parameter (ignored for solv)");
    verify->add_option("--samples", cfg.samples, "sample count")->check(CLI::PositiveNumber);
    verify->add_option("--tol", cfg.tol, "residual tolerance");
    verify->add_option("--seed", cfg.seed, "RNG seed");
    verify->add_option("--fd-step", cfg.fd_step, "finite-difference step");
    verify->add_option("--json", json_path, "write the machine-readable report here");

    auto* isom = app.add_subcommand("isom", "search for an isomorphism witness between T^λ and T^μ");
    isom->add_option("space", space, "s2xr or h2xr")->required()->check(CLI::IsMember(spaces));
    isom->add_option("lambda", lambda, "λ")->required();
    isom->add_option("mu", mu, "μ")->required();
    isom->add_option("--json", json_path, "write the machine-readable report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (classify->parsed()) return emit(homstruct::cmd_classify(space), json_path);
        if (verify->parsed()) return emit(homstruct::cmd_verify(space, label, lambda, cfg), json_path);
        if (isom->parsed()) return emit(homstruct::cmd_isom(space, lambda, mu, cfg), json_path);
    } catch (const homstruct::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 70; // EX_SOFTWARE: internal failure outside the 0/2/64 contract
    }
    return 64;
}
