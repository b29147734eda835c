// fdb: expand, chain, asets and verify from the command line.

#include "fdb/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

struct Options {
    std::string alpha;
    std::size_t order = 0;
    std::string format = "text";
    std::string dims = "2,2,2";
    std::size_t trials = 0;
    std::string output;
};

struct AlphaOptions {
    CLI::Option* alpha;
    CLI::Option* order;
};

AlphaOptions add_alpha(CLI::App* cmd, Options& o) {
    auto* a = cmd->add_option("--alpha", o.alpha, "multi-index as a bitstring, digit 0 first (\"101\")");
    auto* n = cmd->add_option("--order", o.order, "all-ones multi-index of this length");
    a->excludes(n);
    return {a, n};
}

fdb::Dims parse_dims(const std::string& s) {
    fdb::Dims d;
    std::size_t vals[3]{};
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        const auto comma = s.find(',', pos);
        const auto tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        if (count == 3 || tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw fdb::UsageError("--dims expects three positive integers z,x,y");
        vals[count++] = std::stoul(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (count == 1) vals[1] = vals[2] = vals[0];
    else if (count != 3) throw fdb::UsageError("--dims expects z,x,y or a single dimension");
    d.z = vals[0];
    d.x = vals[1];
    d.y = vals[2];
    return d;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discrete Faa di Bruno expansions, A-sets and exact verification"};
    app.require_subcommand(1);

    Options o;
    fdb::CliConfig cfg;
    if (auto s = env("FDB_SEED")) {
        try {
            cfg.seed = std::stoull(*s);
        } catch (const std::exception&) {
            std::cerr << "error: FDB_SEED is not an unsigned integer\n";
            return 2;
        }
    }
    if (auto t = env("FDB_TRIALS")) {
        try {
            cfg.trials = std::stoull(*t);
        } catch (const std::exception&) {
            std::cerr << "error: FDB_TRIALS is not an unsigned integer\n";
            return 2;
        }
    }

    auto* expand = app.add_subcommand("expand", "tangent expansion T_alpha f u");
    auto* chain = app.add_subcommand("chain", "chain rule expansion of the difference of f o g");
    auto* asets = app.add_subcommand("asets", "dump the A-set families of alpha as JSON");
    auto* verify = app.add_subcommand("verify", "run verification suites");

    std::vector<AlphaOptions> alpha_opts;
    for (auto* cmd : {expand, chain, asets, verify}) {
        alpha_opts.push_back(add_alpha(cmd, o));
        cmd->add_option("--output,-o", o.output, "write to this file instead of stdout");
    }
    for (auto* cmd : {expand, chain, verify})
        cmd->add_option("--format", o.format, "text, latex or json")->check(CLI::IsMember({"text", "latex", "json"}));
    for (auto* cmd : {expand, chain})
        cmd->add_flag("--standalone", cfg.standalone, "wrap LaTeX output in a complete document");
    asets->add_flag("--validate", cfg.validate, "include per-condition results; exit 1 if any fails");

    verify->add_option("--suite", cfg.suite, "theorem-b, eq9, identities, scaling, smooth-chain, asets or all");
    verify->add_option("--seed", cfg.seed, "root seed (default 1, or FDB_SEED)");
    auto* trials = verify->add_option("--trials", o.trials, "trials per identity (or FDB_TRIALS)");
    verify->add_option("--kmax", cfg.kmax, "largest k for all-ones suites")->check(CLI::Range(1, 8));
    verify->add_option("--dims", o.dims, "space dimensions z,x,y for g: Z -> X and f: X -> Y");
    verify->add_option("--eps-min", cfg.eps_min, "coarsest scaling step is 2^-eps-min (default 3)");
    verify->add_option("--eps-max", cfg.eps_max, "finest scaling step is 2^-eps-max (default 10)");
    verify->add_option("--tolerance", cfg.tolerance, "allowed slope shortfall below |alpha|+1");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        for (const auto& a : alpha_opts) {
            if (a.alpha->count() > 0) cfg.alpha = o.alpha;
            if (a.order->count() > 0) cfg.order = o.order;
        }
        cfg.format = fdb::parse_format(o.format);
        if (trials->count() > 0) cfg.trials = o.trials;
        cfg.dims = parse_dims(o.dims);

        fdb::CommandResult r;
        if (*expand) r = fdb::cmd_expand(cfg);
        else if (*chain) r = fdb::cmd_chain(cfg);
        else if (*asets) r = fdb::cmd_asets(cfg);
        else r = fdb::cmd_verify(cfg);

        if (o.output.empty()) {
            std::cout << r.output;
        } else {
            std::ofstream out(o.output, std::ios::binary);
            if (!out) {
                std::cerr << "error: cannot write " << o.output << "\n";
                return 2;
            }
            out << r.output;
        }
        return r.exit_code;
    } catch (const fdb::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
