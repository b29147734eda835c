#include "fdb/commands.hpp"

#include <catch_amalgamated.hpp>

using namespace fdb;

namespace {

CliConfig with_alpha(std::string a) {
    CliConfig c;
    c.alpha = std::move(a);
    return c;
}

}  // namespace

TEST_CASE("expand prints one line of text") {
    const auto r = cmd_expand(with_alpha("11"));
    CHECK(r.exit_code == 0);
    CHECK(r.output == "Δ_{u_{1,2}} f(u_0 + u_1 + u_2) + Δ^2_{u_1, u_2} f(u_0)\n");
}

TEST_CASE("order is shorthand for all ones") {
    CliConfig c;
    c.order = 3;
    CHECK(cmd_expand(c).output == cmd_expand(with_alpha("111")).output);
    CHECK(cmd_chain(c).output == cmd_chain(with_alpha("111")).output);
}

TEST_CASE("chain output") {
    CHECK(cmd_chain(with_alpha("1")).output == "Δ_{Δ_{v_1} g(x)} f(g(x))\n");
}

TEST_CASE("latex output is a display body unless standalone") {
    auto c = with_alpha("1");
    c.format = Format::latex;
    const auto body = cmd_expand(c).output;
    CHECK(body.rfind("\\[\n", 0) == 0);
    CHECK(body.find("\\documentclass") == std::string::npos);
    c.standalone = true;
    const auto doc = cmd_expand(c).output;
    CHECK(doc.rfind("\\documentclass{article}", 0) == 0);
    CHECK(doc.find(body) != std::string::npos);
}

TEST_CASE("json output round-trips") {
    auto c = with_alpha("111");
    c.format = Format::json;
    const auto j = nlohmann::json::parse(cmd_chain(c).output);
    CHECK(j["schema_version"] == 1);
    CHECK(parse_json(j.dump()) == expand_chain(MultiIndex::ones(3)));
}

TEST_CASE("asets lists one family per partition") {
    const auto j = nlohmann::json::parse(cmd_asets(with_alpha("11")).output);
    REQUIRE(j.size() == 2);
    CHECK(j[0]["partition"] == nlohmann::json::array({"11"}));
    CHECK(j[0]["sets"]["00"] == nlohmann::json::array({"00", "01", "10"}));
    CHECK(j[0]["valid"] == true);
    CHECK_FALSE(j[0].contains("conditions"));
}

TEST_CASE("asets of the longest index has Bell(8) families") {
    const auto r = cmd_asets(with_alpha("11111111"));
    CHECK(r.exit_code == 0);
    CHECK(nlohmann::json::parse(r.output).size() == 4140);
}

TEST_CASE("asets validation sets the exit code") {
    auto c = with_alpha("111");
    c.validate = true;
    const auto ok = cmd_asets(c);
    CHECK(ok.exit_code == 0);
    CHECK(nlohmann::json::parse(ok.output)[0]["conditions"].size() == 7);
    c.alpha = "1111";
    CHECK(cmd_asets(c).exit_code == 1);
}

TEST_CASE("usage errors") {
    CHECK_THROWS_AS(cmd_expand(CliConfig{}), UsageError);
    CHECK_THROWS_AS(cmd_expand(with_alpha("")), UsageError);
    CHECK_THROWS_AS(cmd_expand(with_alpha("12")), UsageError);
    auto both = with_alpha("11");
    both.order = 2;
    CHECK_THROWS_AS(cmd_chain(both), UsageError);
    CliConfig zero;
    zero.order = 0;
    CHECK_THROWS_AS(cmd_expand(zero), UsageError);

    CliConfig v;
    v.suite = "eq7";
    CHECK_THROWS_AS(cmd_verify(v), UsageError);
    v.suite = "eq9";
    v.trials = 0;
    CHECK_THROWS_AS(cmd_verify(v), UsageError);
    v.trials = 1;
    v.eps_min = 5;
    v.eps_max = 5;
    CHECK_THROWS_AS(cmd_verify(v), UsageError);
    v.eps_max = 10;
    v.dims.x = 0;
    CHECK_THROWS_AS(cmd_verify(v), UsageError);
}

TEST_CASE("verify text and json reports") {
    CliConfig c;
    c.suite = "theorem-b";
    c.trials = 3;
    c.kmax = 2;
    const auto text = cmd_verify(c);
    CHECK(text.exit_code == 0);
    CHECK(text.output == "PASS theorem-b alpha=1 trials=3 failures=0\nPASS theorem-b alpha=11 trials=3 failures=0\n");
    c.format = Format::json;
    const auto j = nlohmann::json::parse(cmd_verify(c).output);
    CHECK(j["passed"] == true);
    CHECK(j["seed"] == 1);
    CHECK(j["reports"].size() == 2);
}

TEST_CASE("verify of a failing suite exits 1") {
    CliConfig c;
    c.suite = "asets";
    c.alpha = "1111";
    const auto r = cmd_verify(c);
    CHECK(r.exit_code == 1);
    CHECK(r.output.rfind("FAIL asets", 0) == 0);
}

TEST_CASE("verify is reproducible for a fixed seed") {
    CliConfig c;
    c.suite = "identities";
    c.trials = 5;
    c.seed = 42;
    CHECK(cmd_verify(c).output == cmd_verify(c).output);
}

TEST_CASE("default trial counts") {
    CHECK(default_trials("identities") == 1000);
    CHECK(default_trials("theorem-b") == 50);
    CHECK(default_trials("scaling") == 10);
}
