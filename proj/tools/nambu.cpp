#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "nambu/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"nambu - exact symbolic checks for Nambu-Poisson and Nambu-Jacobi structures"};
    app.require_subcommand(1);
    app.set_version_flag("--version", NAMBU_VERSION);

    nambu::cli::Job job;
    std::string mode = "exhaustive";

    auto add_common = [&](CLI::App* cmd, bool dim_required = true) {
        auto* d = cmd->add_option("--dim", job.dim, "dimension of the space");
        if (dim_required) d->required();
        cmd->add_flag("--json", job.json, "emit the report as JSON");
        cmd->add_flag("--timing", job.timing, "include elapsed_ms in the report");
        return cmd;
    };
    auto add_cfg = [&](CLI::App* cmd) {
        cmd->add_option("--max-degree", job.cfg.max_degree,
                        "monomial degree bound for the exhaustive sweep (default 2)");
        cmd->add_option("--mode", mode, "exhaustive|random (default exhaustive)");
        cmd->add_option("--samples", job.cfg.samples, "sample count for random mode");
        cmd->add_option("--seed", job.cfg.seed, "seed for random mode");
        cmd->add_option("--workers", job.cfg.workers, "worker threads for the enumeration");
        return cmd;
    };
    auto add_tensor = [&](CLI::App* cmd, const char* help) {
        cmd->add_option("--tensor", job.tensors, help)->required();
        return cmd;
    };
    auto add_constants = [&](CLI::App* cmd) {
        cmd->add_option("--arity", job.arity, "bracket arity n")->required();
        cmd->add_option("--constants", job.constants,
                        "structure-constant entries 'c[k; i1,..,in] = q' (repeatable)");
        cmd->add_option("--constants-file", job.constants_file,
                        "file with one structure-constant entry per line");
        return cmd;
    };

    add_tensor(add_common(app.add_subcommand("contract", "iterated contraction of a tensor")),
               "multivector expression")
        ->add_option("--fields", job.fields, "comma-separated polynomials, applied in order")
        ->required();

    add_common(app.add_subcommand("wedge", "exterior product of two multivectors"))
        ->add_option("--tensor", job.tensors, "multivector expression (give twice)")
        ->expected(2)
        ->required();

    add_common(app.add_subcommand("schouten", "Schouten bracket of two multivectors"))
        ->add_option("--tensor", job.tensors, "multivector expression (give twice)")
        ->expected(2)
        ->required();

    {
        auto* cmd = add_common(app.add_subcommand("bracket", "evaluate the induced n-bracket"));
        cmd->add_option("--tensor", job.tensors, "degree-n multivector")->required();
        cmd->add_option("--fields", job.fields, "comma-separated argument polynomials")
            ->required();
        cmd->add_option("--gamma", job.gamma,
                        "optional degree-(n-1) tensor for the first-order bracket");
    }

    add_tensor(add_common(app.add_subcommand("check-poisson", "Poisson condition for a bivector")),
               "degree-2 multivector");

    add_cfg(add_tensor(
        add_common(app.add_subcommand("check-np", "Nambu-Poisson condition for an n-tensor")),
        "degree-n multivector"));

    {
        auto* cmd = add_cfg(
            add_common(app.add_subcommand("check-nj", "Nambu-Jacobi condition for a (D, G) pair")));
        cmd->add_option("--delta", job.delta, "degree-n multivector D")->required();
        cmd->add_option("--gamma", job.gamma, "degree-(n-1) multivector G")->required();
    }

    add_tensor(add_common(app.add_subcommand("check-decomposable",
                                             "decomposability at regular points")),
               "degree-n multivector");

    add_common(app.add_subcommand("check-involutive", "involutivity of a span of vector fields"))
        ->add_option("--tensor", job.tensors, "vector field (repeat per field)")
        ->required();

    {
        auto* cmd = add_tensor(
            add_common(app.add_subcommand("check-ham", "hamiltonian bracket identity")),
            "degree-n multivector");
        cmd->add_option("--fs", job.fs_text, "comma-separated (n-1) polynomials")->required();
        cmd->add_option("--gs", job.gs_text, "comma-separated (n-1) polynomials")->required();
    }

    {
        auto* cmd = add_tensor(add_common(app.add_subcommand(
                                   "check-fi-direct",
                                   "generalized Jacobi identity on explicit functions")),
                               "degree-n multivector");
        cmd->add_option("--gamma", job.gamma, "optional degree-(n-1) tensor");
        cmd->add_option("--fs", job.fs_text, "comma-separated (n-1) polynomials")->required();
        cmd->add_option("--gs", job.gs_text, "comma-separated n polynomials")->required();
    }

    add_cfg(add_tensor(add_common(app.add_subcommand(
                           "theorem1-crosscheck",
                           "consistency of the tensor verdict with its contractions")),
                       "degree-n multivector"));

    add_constants(add_common(app.add_subcommand("filippov-check",
                                                "generalized Jacobi identity for a bracket")));

    add_constants(add_common(app.add_subcommand(
        "filippov-hypothesis", "are all contractions of the bracket Filippov?")));

    add_constants(add_common(app.add_subcommand("filippov-contract",
                                                "contract a bracket with a vector")))
        ->add_option("--vector", job.vector_text, "comma-separated rational coordinates")
        ->required();

    {
        auto* cmd = add_common(app.add_subcommand("filippov-search",
                                                  "search a structure-constant space"));
        cmd->add_option("--arity", job.arity, "bracket arity n")->required();
        cmd->add_option("--coeffs", job.coeffs, "coefficient set, e.g. \"-1,0,1\"");
        cmd->add_option("--mode", mode, "exhaustive|random (default exhaustive)");
        cmd->add_option("--samples", job.search.samples, "sample count for random mode");
        cmd->add_option("--seed", job.search.seed, "seed for random mode");
        cmd->add_option("--range-begin", job.search.range_begin,
                        "first assignment index (exhaustive slice)");
        cmd->add_option("--range-end", job.search.range_end,
                        "one past the last assignment index");
        cmd->add_option("--max-space", job.search.max_enumerated,
                        "refusal guard on the enumerated count (default 2^24)");
        cmd->add_option("--workers", job.cfg.workers, "worker threads");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (mode == "random") {
        job.cfg.mode = nambu::CheckConfig::Mode::Randomized;
        job.search.mode = nambu::filippov::SearchConfig::Mode::Random;
    } else if (mode != "exhaustive") {
        std::cerr << "error: --mode must be 'exhaustive' or 'random'\n";
        return 2;
    }
    job.command = app.get_subcommands().front()->get_name();

    auto [out, code] = nambu::cli::execute(job);
    (code == 2 ? std::cerr : std::cout) << out;
    return code;
}
