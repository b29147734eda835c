// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include "fdb/commands.hpp"
#include "fdb/fdb.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

using namespace fdb;

namespace {

const char* const tangent_11 = "Δ_{u_{1,2}} f(u_0 + u_2 + u_1) + Δ^2_{u_1, u_2} f(u_0)";
const char* const tangent_111 =
    "Δ_{u_{1,2,3}} f(u_0 + u_3 + u_2 + u_{2,3} + u_1 + u_{1,3} + u_{1,2}) + "
    "Δ^2_{u_1, u_{2,3}} f(u_0 + u_3 + u_2) + "
    "Δ^2_{u_{1,3}, u_2 + u_{2,3}} f(u_0 + u_3 + u_1) + "
    "Δ^2_{u_{1,2}, u_3 + u_{2,3} + u_{1,3}} f(u_0 + u_2 + u_1) + "
    "Δ^3_{u_1, u_2, u_3} f(u_0)";
const char* const chain_11 =
    "Δ_{Δ^2_{v_1, v_2} g(x)} f(g(x) + Δ_{v_1} g(x) + Δ_{v_2} g(x)) + Δ^2_{Δ_{v_1} g(x), Δ_{v_2} g(x)} f(g(x))";
const char* const chain_111 =
    "Δ_{Δ^3_{v_1, v_2, v_3} g(x)} f(g(x) + Δ_{v_1} g(x) + Δ_{v_2} g(x) + Δ_{v_3} g(x) + "
    "Δ^2_{v_1, v_2} g(x) + Δ^2_{v_1, v_3} g(x) + Δ^2_{v_2, v_3} g(x)) + "
    "Δ^2_{Δ_{v_1} g(x), Δ^2_{v_2, v_3} g(x)} f(g(x) + Δ_{v_2} g(x) + Δ_{v_3} g(x)) + "
    "Δ^2_{Δ^2_{v_1, v_3} g(x), Δ_{v_2} g(x) + Δ^2_{v_2, v_3} g(x)} f(g(x) + Δ_{v_1} g(x) + Δ_{v_3} g(x)) + "
    "Δ^2_{Δ^2_{v_1, v_2} g(x), Δ_{v_3} g(x) + Δ^2_{v_1, v_3} g(x) + Δ^2_{v_2, v_3} g(x)} "
    "f(g(x) + Δ_{v_1} g(x) + Δ_{v_2} g(x)) + "
    "Δ^3_{Δ_{v_1} g(x), Δ_{v_2} g(x), Δ_{v_3} g(x)} f(g(x))";

struct Outcome {
    bool passed = true;
    std::string note;
};

std::string canonical_text(const char* printed, std::size_t k) {
    ParseContext ctx;
    ctx.dim = k;
    return render_text(canonicalize(parse_text(printed, ctx))) + "\n";
}

Outcome formulas(const std::function<CommandResult(const CliConfig&)>& cmd, const char* f11, const char* f111) {
    Outcome o;
    for (const auto& [alpha, printed, k, terms] :
         {std::tuple{"11", f11, 2, 2}, std::tuple{"111", f111, 3, 5}}) {
        CliConfig c;
        c.alpha = alpha;
        const auto out = cmd(c).output;
        const auto want = canonical_text(printed, static_cast<std::size_t>(k));
        const auto n = summands(parse_text(out)).size();
        if (out != want || n != static_cast<std::size_t>(terms)) {
            o.passed = false;
            o.note += " alpha=" + std::string(alpha) + " mismatch";
        } else {
            o.note += " alpha=" + std::string(alpha) + " terms=" + std::to_string(n);
        }
    }
    return o;
}

Outcome reports(const std::vector<VerificationReport>& rs) {
    Outcome o;
    std::size_t trials = 0, failures = 0;
    for (const auto& r : rs) {
        trials += r.trials;
        failures += r.failures.size();
        if (!r.passed()) {
            o.passed = false;
            o.note += " " + r.identity + (r.details.contains("alpha") ? ":" + r.details["alpha"].get<std::string>() : "") +
                      " failures=" + std::to_string(r.failures.size());
            if (!r.failures.empty()) o.note += " first: " + r.failures.front().detail;
        }
    }
    o.note = " trials=" + std::to_string(trials) + " failures=" + std::to_string(failures) + o.note;
    return o;
}

// Bell numbers from Stirling numbers of the second kind.
std::vector<std::size_t> bell_by_stirling(std::size_t nmax) {
    std::vector<std::vector<std::size_t>> s(nmax + 1, std::vector<std::size_t>(nmax + 1, 0));
    s[0][0] = 1;
    for (std::size_t n = 1; n <= nmax; ++n)
        for (std::size_t k = 1; k <= n; ++k) s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1];
    std::vector<std::size_t> b(nmax + 1, 0);
    for (std::size_t n = 0; n <= nmax; ++n)
        for (std::size_t k = 0; k <= n; ++k) b[n] += s[n][k];
    return b;
}

Outcome asets_all() {
    Outcome o;
    const auto bell = bell_by_stirling(8);
    std::size_t families = 0, counts_bad = 0, invalid = 0;
    std::map<std::string, std::size_t> by_condition;
    for (std::size_t len = 1; len <= 8; ++len)
        for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
            const MultiIndex a(len, bits);
            const auto fams = build_asets(a);
            families += fams.size();
            if (fams.size() != bell[a.order()] || enumerate_partitions(a).partitions.size() != bell[a.order()])
                ++counts_bad;
            for (const auto& f : fams) {
                const auto v = validate(f);
                if (!v.passed()) ++invalid;
                for (const auto& c : v.conditions)
                    if (!c.passed) ++by_condition[c.name.substr(0, c.name.find(':'))];
            }
        }
    o.passed = counts_bad == 0 && invalid == 0;
    o.note = " families=" + std::to_string(families) + " bell_mismatches=" + std::to_string(counts_bad) +
             " invalid_families=" + std::to_string(invalid);
    for (const auto& [name, n] : by_condition) o.note += " cond" + name + "=" + std::to_string(n);
    return o;
}

Outcome determinism() {
    auto run_all = [] {
        std::string out;
        for (const char* a : {"11", "111", "1011"}) {
            CliConfig c;
            c.alpha = a;
            for (Format f : {Format::text, Format::latex, Format::json}) {
                c.format = f;
                out += cmd_expand(c).output + cmd_chain(c).output;
            }
            out += cmd_asets(c).output;
        }
        CliConfig v;
        v.format = Format::json;
        v.seed = 7;
        v.trials = 3;
        v.kmax = 3;
        for (const char* s : {"theorem-b", "eq9", "identities", "scaling", "smooth-chain"}) {
            v.suite = s;
            out += cmd_verify(v).output;
        }
        return out;
    };
    const auto a = run_all();
    const auto b = run_all();
    return {a == b, " bytes=" + std::to_string(a.size())};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    const SuiteOptions defaults{1, 50, {}};
    struct Criterion {
        const char* id;
        const char* name;
        double limit_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"AC1", "tangent formulas", 1.0, [] { return formulas(cmd_expand, tangent_11, tangent_111); }},
        {"AC2", "chain formulas", 1.0, [] { return formulas(cmd_chain, chain_11, chain_111); }},
        {"AC3", "chain expansion vs direct evaluation", 30.0,
         [&] {
             std::vector<VerificationReport> rs;
             for (std::size_t k = 1; k <= 5; ++k) rs.push_back(verify_theorem_b(defaults, MultiIndex::ones(k)));
             return reports(rs);
         }},
        {"AC4", "tangent expansion vs cuboid operators", 30.0,
         [&] {
             std::vector<VerificationReport> rs;
             for (std::size_t k = 1; k <= 5; ++k) rs.push_back(verify_eq9(defaults, MultiIndex::ones(k)));
             return reports(rs);
         }},
        {"AC5", "A-set conditions and Bell counts up to order 8", 60.0, asets_all},
        {"AC6", "identity suite", 60.0, [] { return reports(identity_suite({1, 1000, {}})); }},
        {"AC7", "remainder order", 10.0,
         [] {
             const SuiteOptions o{1, 10, {}};
             return reports({verify_scaling(o, MultiIndex::ones(2)), verify_scaling(o, MultiIndex::ones(3))});
         }},
        {"AC8", "infinitesimal side", 10.0,
         [] {
             return reports(verify_smooth_chain({1, 20, {}}, {MultiIndex::ones(1), MultiIndex::ones(2), MultiIndex::ones(3)}));
         }},
        {"AC9", "determinism", 60.0, determinism},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string(" exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(clock::now() - t0).count();
        const bool in_time = secs < c.limit_s;
        const bool ok = o.passed && in_time;
        all = all && ok;
        std::printf("%s %s %s time=%.2fs limit=%.0fs%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name, secs, c.limit_s,
                    in_time ? "" : " over-time", o.note.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
