#pragma once

// The command layer behind the fdb tool, kept free of argument parsing so
// tests can drive it directly. Every command returns its complete output and
// an exit code: 0 pass, 1 verification failure, 2 usage error.

#include "fdb/asets.hpp"
#include "fdb/expand.hpp"
#include "fdb/render.hpp"
#include "fdb/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdb {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct CommandResult {
    std::string output;
    int exit_code = 0;
};

struct CliConfig {
    std::optional<std::string> alpha;
    std::optional<std::size_t> order;
    Format format = Format::text;
    bool standalone = false;
    bool validate = false;
    std::uint64_t seed = 1;
    /// Unset means the per-suite default.
    std::optional<std::size_t> trials;
    std::size_t kmax = 5;
    std::string suite = "all";
    Dims dims{};
    unsigned eps_min = 3;
    unsigned eps_max = 10;
    double tolerance = 0.2;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"theorem-b", "eq9", "identities", "scaling", "smooth-chain", "asets", "all"};
    return names;
}

/// Default trial counts per suite when --trials is absent.
inline std::size_t default_trials(const std::string& suite) {
    if (suite == "identities") return 1000;
    if (suite == "scaling") return 10;
    if (suite == "smooth-chain") return 20;
    return 50;
}

inline std::optional<MultiIndex> resolve_alpha(const CliConfig& c) {
    if (c.alpha && c.order) throw UsageError("--alpha and --order are mutually exclusive");
    if (c.order) {
        if (*c.order == 0 || *c.order > MultiIndex::max_length) throw UsageError("--order must be in [1, 62]");
        return MultiIndex::ones(*c.order);
    }
    if (!c.alpha) return std::nullopt;
    if (c.alpha->empty()) throw UsageError("--alpha must be a nonempty bitstring");
    try {
        return MultiIndex::from_bitstring(*c.alpha);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline MultiIndex require_alpha(const CliConfig& c) {
    auto a = resolve_alpha(c);
    if (!a) throw UsageError("one of --alpha or --order is required");
    return *a;
}

namespace detail {

inline std::string latex_document(const std::string& lhs, const Expr& e, bool standalone) {
    std::string body = "\\[\n" + lhs + " = " + render_latex(e) + "\n\\]\n";
    if (!standalone) return body;
    return "\\documentclass{article}\n\\usepackage{amsmath}\n\\begin{document}\n" + body + "\\end{document}\n";
}

inline std::string latex_alpha(const MultiIndex& a) {
    std::string s = "(";
    for (std::size_t i = 0; i < a.length(); ++i) {
        if (i) s += ",";
        s += a.digit(i) ? "1" : "0";
    }
    return s + ")";
}

inline std::string formatted(const Expr& e, Format f, const std::string& latex_lhs, bool standalone) {
    switch (f) {
        case Format::text: return render_text(e) + "\n";
        case Format::latex: return latex_document(latex_lhs, e, standalone);
        case Format::json: return to_json_document(e).dump(2) + "\n";
    }
    return {};
}

inline nlohmann::json bitstrings(const std::vector<MultiIndex>& set) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& g : set) out.push_back(g.bitstring());
    return out;
}

}  // namespace detail

inline CommandResult cmd_expand(const CliConfig& c) {
    const MultiIndex a = require_alpha(c);
    const std::string lhs = "T_{" + detail::latex_alpha(a) + "} f(\\bar{u})";
    return {detail::formatted(expand_tangent(a), c.format, lhs, c.standalone), 0};
}

inline CommandResult cmd_chain(const CliConfig& c) {
    const MultiIndex a = require_alpha(c);
    const std::string lhs = "\\Delta_{v}^{" + detail::latex_alpha(a) + "} (f \\circ g)(x)";
    return {detail::formatted(expand_chain(a), c.format, lhs, c.standalone), 0};
}

/// JSON array of {partition, sets, valid}; with --validate each entry also
/// lists its conditions and the exit code reflects the result.
inline CommandResult cmd_asets(const CliConfig& c) {
    const MultiIndex a = require_alpha(c);
    nlohmann::json out = nlohmann::json::array();
    bool all_valid = true;
    for (const auto& fam : build_asets(a)) {
        nlohmann::json sets = nlohmann::json::object();
        sets[MultiIndex::zero(a.length()).bitstring()] = detail::bitstrings(fam.base);
        const auto& blocks = fam.partition.blocks();
        for (std::size_t i = 0; i < blocks.size(); ++i) sets[blocks[i].bitstring()] = detail::bitstrings(fam.blocks[i]);
        const auto report = validate(fam);
        all_valid = all_valid && report.passed();
        nlohmann::json entry = {{"partition", detail::bitstrings(blocks)}, {"sets", std::move(sets)}, {"valid", report.passed()}};
        if (c.validate) {
            nlohmann::json conds = nlohmann::json::array();
            for (const auto& cond : report.conditions)
                conds.push_back({{"name", cond.name}, {"passed", cond.passed}, {"offending", detail::bitstrings(cond.offending)}});
            entry["conditions"] = std::move(conds);
        }
        out.push_back(std::move(entry));
    }
    return {out.dump(2) + "\n", c.validate && !all_valid ? 1 : 0};
}

inline std::vector<VerificationReport> run_suite(const std::string& suite, const CliConfig& c) {
    const auto alpha = resolve_alpha(c);
    SuiteOptions o{c.seed, c.trials.value_or(default_trials(suite)), c.dims};
    std::vector<VerificationReport> out;
    auto ones_up_to = [&](std::size_t kmax) {
        std::vector<MultiIndex> v;
        if (alpha) return std::vector<MultiIndex>{*alpha};
        for (std::size_t k = 1; k <= kmax; ++k) v.push_back(MultiIndex::ones(k));
        return v;
    };
    if (suite == "theorem-b") {
        for (const auto& a : ones_up_to(c.kmax)) out.push_back(verify_theorem_b(o, a));
    } else if (suite == "eq9") {
        for (const auto& a : ones_up_to(c.kmax)) out.push_back(verify_eq9(o, a));
    } else if (suite == "identities") {
        out = identity_suite(o);
    } else if (suite == "scaling") {
        std::vector<unsigned> eps;
        for (unsigned e = c.eps_min; e <= c.eps_max; ++e) eps.push_back(e);
        const std::vector<MultiIndex> alphas =
            alpha ? std::vector<MultiIndex>{*alpha} : std::vector<MultiIndex>{MultiIndex::ones(2), MultiIndex::ones(3)};
        for (const auto& a : alphas) out.push_back(verify_scaling(o, a, eps, c.tolerance));
    } else if (suite == "smooth-chain") {
        out = verify_smooth_chain(o, ones_up_to(std::min<std::size_t>(c.kmax, 3)));
    } else if (suite == "asets") {
        std::vector<MultiIndex> alphas;
        if (alpha) {
            alphas.push_back(*alpha);
        } else {
            for (std::uint64_t bits = 0; bits < 256; ++bits) alphas.emplace_back(8, bits);
        }
        out.push_back(verify_asets(alphas));
    } else {
        throw UsageError("unknown suite '" + suite + "'");
    }
    return out;
}

inline CommandResult cmd_verify(const CliConfig& c) {
    if (c.trials && *c.trials == 0) throw UsageError("--trials must be at least 1");
    if (c.eps_min > c.eps_max || c.eps_max - c.eps_min < 1) throw UsageError("the epsilon grid needs at least two points");
    if (c.eps_max > 60) throw UsageError("--eps-max must be at most 60");
    if (c.dims.z == 0 || c.dims.x == 0 || c.dims.y == 0) throw UsageError("dimensions must be positive");
    if (std::find(suite_names().begin(), suite_names().end(), c.suite) == suite_names().end())
        throw UsageError("unknown suite '" + c.suite + "'");

    std::vector<std::string> suites;
    if (c.suite == "all")
        suites = {"theorem-b", "eq9", "identities", "scaling", "smooth-chain", "asets"};
    else
        suites = {c.suite};

    std::vector<VerificationReport> reports;
    for (const auto& s : suites) {
        auto r = run_suite(s, c);
        reports.insert(reports.end(), r.begin(), r.end());
    }
    const bool ok = all_passed(reports);

    std::string output;
    if (c.format == Format::json) {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& r : reports) rs.push_back(to_json(r));
        output = nlohmann::json{{"schema_version", json_schema_version}, {"seed", c.seed}, {"passed", ok}, {"reports", rs}}
                     .dump(2) +
                 "\n";
    } else {
        for (const auto& r : reports) {
            output += (r.passed() ? "PASS " : "FAIL ") + r.identity;
            if (r.details.contains("alpha")) output += " alpha=" + r.details["alpha"].get<std::string>();
            output += " trials=" + std::to_string(r.trials) + " failures=" + std::to_string(r.failures.size());
            if (r.details.contains("min_slope")) output += " min_slope=" + std::to_string(r.details["min_slope"].get<double>());
            if (r.details.contains("degenerate") && r.details["degenerate"].get<std::size_t>() > 0)
                output += " degenerate=" + std::to_string(r.details["degenerate"].get<std::size_t>());
            output += "\n";
            for (const auto& f : r.failures)
                output += "  seed=" + std::to_string(f.seed) + " alpha=" + f.alpha + " " + f.detail + "\n";
        }
    }
    return {output, ok ? 0 : 1};
}

}  // namespace fdb
