#include <doctest.h>

#include "spingw/verify.hpp"

using namespace spingw;

TEST_CASE("every suite passes with default options")
{
    for (Exec exec : {Exec::serial, Exec::parallel}) {
        VerifyOptions opt;
        opt.exec = exec;
        for (const auto &name : verification_suites()) {
            SuiteResult s = run_suite(name, opt);
            CAPTURE(name);
            CHECK(s.pass());
            CHECK_FALSE(s.invariants.empty());
            for (const auto &inv : s.invariants) {
                CHECK(inv.checked > 0);
                CHECK(inv.counterexample.empty());
            }
        }
    }
}

TEST_CASE("the printed reading with tau_{1,0} second factors fails recursion and WDVV")
{
    VerifyOptions opt;
    opt.reading = Reading::printed_t10;
    CHECK_FALSE(run_suite("wdvv", opt).pass());
    SuiteResult rec = run_suite("recursion", opt);
    CHECK_FALSE(rec.pass());
    bool named = false;
    for (const auto &inv : rec.invariants)
        if (!inv.pass)
            named = named || inv.counterexample.find("2/9 vs pde 4/9") != std::string::npos;
    CHECK(named);
    opt.reading = Reading::printed_t01;
    CHECK(run_suite("wdvv", opt).pass());
    CHECK(run_suite("recursion", opt).pass());
}

TEST_CASE("report json")
{
    VerifyOptions opt;
    std::vector<SuiteResult> results{run_suite("unstable", opt)};
    results.push_back({"synthetic", {{"always fails", false, 3, "", "item 2"}}});
    auto j = report_to_json(results);
    CHECK(j["pass"] == false);
    CHECK(j["suites"][0]["pass"] == true);
    CHECK(j["suites"][1]["invariants"][0]["counterexample"] == "item 2");
    CHECK(j["suites"][1]["invariants"][0]["checked"] == 3);
    CHECK_FALSE(j["suites"][0]["invariants"][0].contains("counterexample"));
    CHECK_THROWS_AS(run_suite("nope", opt), DomainError);
}
