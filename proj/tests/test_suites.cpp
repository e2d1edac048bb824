#include "dwv/suites.hpp"

#include <doctest.h>
#include <json.hpp>

#include <stdexcept>

using namespace dwv;

TEST_CASE("configuration errors") {
    CHECK_THROWS_AS(run({"tetrad", {"epsilon"}, 42, 5}), std::invalid_argument);
    CHECK_THROWS_AS(run({"dreibein", {"epsilon"}, 42, 0}), std::invalid_argument);
    CHECK_THROWS_AS(run({"dreibein", {}, 42, 5}), std::invalid_argument);
    CHECK_THROWS_AS(run({"dreibein", {"nonsense"}, 42, 5}), std::invalid_argument);
    CHECK(model_dimension("dreibein") == 3);
    CHECK(model_dimension("vierbein") == 4);
    CHECK(model_dimension("x") == 0);
    CHECK(suite_names().size() == 11);
}

TEST_CASE("JSON report shape, summary and stability") {
    const SuiteConfig cfg{"dreibein", {"appendixA", "epsilon"}, 7, 2};
    const auto res = run(cfg);
    REQUIRE(!res.empty());
    // Canonical order regardless of the request order.
    CHECK(res.front().check_id.rfind("epsilon.n3.", 0) == 0);
    CHECK(res.back().check_id == "appendixA.n3.eh_palatini_reduction");

    const auto doc = nlohmann::json::parse(report_json(cfg, res, true));
    CHECK(doc["model"] == "dreibein");
    CHECK(doc["seed"] == 7);
    CHECK(doc["trials"] == 2);
    CHECK(doc["checks"].size() == res.size());
    for (const auto& c : doc["checks"]) {
        CHECK(c["elapsed_ms"] == 0);
        CHECK(c["status"] == "pass");
        CHECK(c.contains("paper_ref"));
        CHECK(c["residual_term_count"] == 0);
    }
    const Summary s = summarize(res);
    CHECK(doc["summary"]["pass"] == s.pass);
    CHECK(s.pass == res.size());
    CHECK(s.fail == 0);

    CHECK(report_json(cfg, run(cfg), true) == report_json(cfg, res, true));
}

TEST_CASE("text report has one line per check plus a summary") {
    const SuiteConfig cfg{"dreibein", {"epsilon"}, 42, 1};
    const auto res = run(cfg);
    const std::string text = report_text(cfg, res, true);
    std::size_t lines = 0;
    for (char ch : text) lines += ch == '\n';
    CHECK(lines == res.size() + 1);
    CHECK(text.find("0 fail") != std::string::npos);
}

TEST_CASE("failing checks are counted") {
    std::vector<CheckResult> r(3);
    r[1].status = CheckStatus::Fail;
    r[2].status = CheckStatus::Reported;
    const Summary s = summarize(r);
    CHECK(s.pass == 1);
    CHECK(s.fail == 1);
    CHECK(s.reported == 1);
}
