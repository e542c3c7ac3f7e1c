#include <doctest.h>

#include <fstream>
#include <sstream>

#include "spingw/cli.hpp"
#include "spingw/series_io.hpp"
#include "spingw/stable_graph.hpp"
#include "spingw/verify.hpp"
#include "support.hpp"

using namespace spingw;
using testing_support::TempPath;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "spingw");
    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void spit(const std::string &path, const std::string &text)
{
    std::ofstream(path, std::ios::binary) << text;
}

bool contains(const std::string &hay, const std::string &needle) { return hay.find(needle) != std::string::npos; }

} // namespace

TEST_CASE("correlators")
{
    auto r = run({"correlators", "--beta-max", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["r"] == 3);
    CHECK(j["target"] == "P1");
    bool found = false;
    for (const auto &row : j["correlators"])
        if (row["beta"] == 2 && row["n1"] == 0) {
            CHECK(row["value"] == "4/9");
            CHECK(row["n3"] == 7);
            found = true;
        }
    CHECK(found);
    CHECK(j["correlators"].size() == 14);

    auto csv = run({"correlators", "--beta-max", "1", "--n1-max", "3", "--format", "csv"});
    REQUIRE(csv.code == 0);
    CHECK(csv.out == "beta,n1,n3,value\n1,0,1,1\n1,1,3,1/3\n1,2,5,2/9\n1,3,7,2/9\n");

    auto t10 = run({"correlators", "--beta-max", "2", "--n1-max", "0", "--reading", "printed-t10"});
    CHECK(contains(t10.out, "\"value\": \"2/9\""));
}

TEST_CASE("usage errors exit 2")
{
    for (std::vector<std::string> args : {
             std::vector<std::string>{"correlators", "--bogus"},
             {},
             {"frobnicate"},
             {"correlators", "--beta-max", "x"},
             {"correlators", "--format", "xml"},
             {"correlators", "--reading", "sideways"},
             {"correlators", "--target", "point"},
             {"correlators", "--beta-max", "0"},
             {"potential", "--target", "point", "--r", "3"},
             {"verify", "--suite", "nonsense"},
             {"graphs"},
             {"graphs", "stabilize"},
             {"graphs", "enumerate", "--n", "9", "--r", "2"},
             {"cache", "info"},
             {"correlators", "--config", "/nonexistent/spingw.cfg"},
         }) {
        auto r = run(args);
        CAPTURE(args.size());
        CHECK(r.code == 2);
        CHECK_FALSE(r.err.empty());
    }
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(contains(help.out, "correlators"));
}

TEST_CASE("config file with flag overrides")
{
    TempPath cfg("cfg");
    spit(cfg.str(), "# table settings\nbeta_max = 1\nn1_max = 2\nformat = csv\n");
    auto r = run({"correlators", "--config", cfg.str()});
    REQUIRE(r.code == 0);
    CHECK(r.out == "beta,n1,n3,value\n1,0,1,1\n1,1,3,1/3\n1,2,5,2/9\n");
    auto over = run({"correlators", "--config", cfg.str(), "--n1-max", "0", "--format", "json"});
    REQUIRE(over.code == 0);
    CHECK(nlohmann::json::parse(over.out)["correlators"].size() == 1);

    spit(cfg.str(), "beta_max = 1\ncolour = blue\n");
    CHECK(run({"correlators", "--config", cfg.str()}).code == 2);
    spit(cfg.str(), "beta_max 1\n");
    CHECK(run({"correlators", "--config", cfg.str()}).code == 2);

    cli::RunConfig defaults;
    CHECK(defaults.beta_max == 3);
    CHECK(defaults.n1_max == 6);
    CHECK(defaults.t_max == 16);
    CHECK(defaults.format == "json");
    CHECK(defaults.reading == Reading::pde);
}

TEST_CASE("determinism and --output")
{
    TempPath a("a"), b("b");
    REQUIRE(run({"correlators", "--beta-max", "3", "--output", a.str()}).code == 0);
    REQUIRE(run({"correlators", "--beta-max", "3", "--output", b.str()}).code == 0);
    CHECK(slurp(a.str()) == slurp(b.str()));
    CHECK_FALSE(slurp(a.str()).empty());

    auto p1 = run({"potential", "--beta-max", "2", "--t-max", "9"});
    auto p2 = run({"potential", "--beta-max", "2", "--t-max", "9"});
    REQUIRE(p1.code == 0);
    CHECK(p1.out == p2.out);
    auto series = series_from_json(nlohmann::json::parse(p1.out));
    CHECK(series.coefficient({1, 0, 0, 0, 1}) == 1);
}

TEST_CASE("potential")
{
    auto point = run({"potential", "--target", "point", "--r", "2", "--t-max", "5", "--format", "csv"});
    REQUIRE(point.code == 0);
    CHECK(point.out == "t00,coeff\n3,1/6\n");
    auto p1 = run({"potential", "--beta-max", "0", "--t-max", "4", "--format", "csv"});
    REQUIRE(p1.code == 0);
    CHECK(p1.out == "q,t00,t01,t10,t11,coeff\n0,0,3,0,1,1/18\n0,1,1,1,0,1\n0,2,0,0,1,1/2\n");
}

TEST_CASE("cache: warm and cold results agree")
{
    TempPath cache("cache");
    auto cold = run({"correlators", "--beta-max", "3", "--cache", cache.str()});
    REQUIRE(cold.code == 0);
    std::string stored = slurp(cache.str());
    CHECK(contains(stored, "\"format\":1"));
    auto warm = run({"correlators", "--beta-max", "3", "--cache", cache.str()});
    REQUIRE(warm.code == 0);
    CHECK(warm.out == cold.out);
    CHECK(run({"correlators", "--beta-max", "3"}).out == cold.out);

    // A cache filled by a larger request serves a smaller one.
    auto small = run({"correlators", "--beta-max", "2", "--n1-max", "1", "--cache", cache.str()});
    CHECK(small.out == run({"correlators", "--beta-max", "2", "--n1-max", "1"}).out);

    auto pot_warm = run({"potential", "--beta-max", "2", "--t-max", "10", "--cache", cache.str()});
    CHECK(pot_warm.out == run({"potential", "--beta-max", "2", "--t-max", "10"}).out);

    auto info = run({"cache", "info", "--cache", cache.str()});
    REQUIRE(info.code == 0);
    auto j = nlohmann::json::parse(info.out);
    CHECK(j["exists"] == true);
    CHECK(j["beta_max"] == 3);

    REQUIRE(run({"cache", "clear", "--cache", cache.str()}).code == 0);
    CHECK(nlohmann::json::parse(run({"cache", "info", "--cache", cache.str()}).out)["exists"] == false);
}

TEST_CASE("cache incompatibility exits 3")
{
    TempPath cache("badcache");
    spit(cache.str(), "{\"format\":0,\"beta_max\":2,\"n1_max\":1,\"reading\":\"pde\"}\n1,0,1\n");
    auto r = run({"correlators", "--cache", cache.str()});
    CHECK(r.code == 3);
    CHECK(contains(r.err, "format"));

    REQUIRE(run({"correlators", "--beta-max", "2", "--cache", cache.str(), "--reading", "printed-t01"}).code == 3);
    spit(cache.str(), "{\"format\":1,\"beta_max\":2,\"n1_max\":1,\"reading\":\"pde\"}\n1,0,1\n");
    CHECK(run({"correlators", "--beta-max", "2", "--cache", cache.str(), "--reading", "printed-t10"}).code == 3);
    spit(cache.str(), "not json\n");
    CHECK(run({"correlators", "--cache", cache.str()}).code == 3);
    spit(cache.str(), "{\"format\":1,\"beta_max\":2,\"n1_max\":1,\"reading\":\"pde\"}\n1;0;1\n");
    CHECK(run({"correlators", "--cache", cache.str()}).code == 3);
    CHECK(run({"cache", "info", "--cache", cache.str()}).code == 3);
}

TEST_CASE("verify")
{
    auto all = run({"verify"});
    CHECK(all.code == 0);
    auto report = nlohmann::json::parse(all.out);
    CHECK(report["pass"] == true);
    CHECK(report["suites"].size() == verification_suites().size());

    auto t10 = run({"verify", "--reading", "printed-t10"});
    CHECK(t10.code == 1);
    auto bad = nlohmann::json::parse(t10.out);
    bool wdvv_failed = false;
    for (const auto &s : bad["suites"])
        if (s["name"] == "wdvv") {
            wdvv_failed = s["pass"] == false;
            CHECK(contains(s["invariants"][0]["counterexample"].get<std::string>(), "coefficient"));
        }
    CHECK(wdvv_failed);

    auto descent = run({"verify", "--suite", "descent"});
    CHECK(descent.code == 0);
    auto d = nlohmann::json::parse(descent.out);
    REQUIRE(d["suites"].size() == 1);
    CHECK(contains(d["suites"][0]["invariants"][0]["name"].get<std::string>(), "a <= 12, m < r, 2 <= r <= 6"));
}

TEST_CASE("graphs")
{
    auto e = run({"graphs", "enumerate", "--n", "4", "--r", "2", "--max-edges", "1"});
    REQUIRE(e.code == 0);
    auto list = nlohmann::ordered_json::parse(e.out);
    CHECK(list.size() == 4);

    TempPath in("graph"), out("graph_out");
    spit(in.str(), list[1].dump(2) + "\n");
    auto s = run({"graphs", "stabilize", "--input", in.str(), "--output", out.str()});
    REQUIRE(s.code == 0);
    CHECK(slurp(out.str()) == slurp(in.str()));

    auto v = run({"graphs", "validate", "--input", in.str()});
    CHECK(v.code == 0);
    CHECK(nlohmann::json::parse(v.out)["stable"] == true);

    SUBCASE("edge congruence violation")
    {
        spit(in.str(), R"({"r":3,"vertices":[{"genus":0,"class":1},{"genus":0,"class":1}],"tails":[],)"
                       R"("edges":[{"v1":0,"mark1":0,"v2":1,"mark2":0}]})");
        auto bad = run({"graphs", "stabilize", "--input", in.str()});
        CHECK(bad.code == 2);
        CHECK(contains(bad.err, "edge congruence violated"));
        auto val = run({"graphs", "validate", "--input", in.str()});
        CHECK(val.code == 2);
        CHECK(contains(val.err, "edge congruence violated"));
    }
    SUBCASE("unstable vertex is named")
    {
        spit(in.str(), R"({"r":2,"vertices":[{"genus":0,"class":0}],"tails":[{"vertex":0,"label":1,"mark":0}],)"
                       R"("edges":[]})");
        auto val = run({"graphs", "validate", "--input", in.str()});
        CHECK(val.code == 2);
        CHECK(contains(val.err, "stability violated"));
    }
    SUBCASE("malformed file")
    {
        spit(in.str(), "{\"r\": 3, \"vertices\": [");
        CHECK(run({"graphs", "stabilize", "--input", in.str()}).code == 2);
        spit(in.str(), R"({"r":3,"vertices":[],"tails":[{"vertex":4,"label":1,"mark":0}],"edges":[]})");
        CHECK(run({"graphs", "validate", "--input", in.str()}).code == 2);
    }
    SUBCASE("stabilize to a point target contracts a rational tail")
    {
        spit(in.str(), R"({"r":2,"vertices":[{"genus":2,"class":0},{"genus":0,"class":1}],"tails":[],)"
                       R"("edges":[{"v1":0,"mark1":0,"v2":1,"mark2":0}]})");
        auto kept = run({"graphs", "stabilize", "--input", in.str()});
        CHECK(nlohmann::json::parse(kept.out)["vertices"].size() == 2);
        auto pushed = run({"graphs", "stabilize", "--input", in.str(), "--to-point"});
        REQUIRE(pushed.code == 0);
        auto j = nlohmann::json::parse(pushed.out);
        CHECK(j["vertices"].size() == 1);
        CHECK(j["edges"].empty());
    }
}

TEST_CASE("property: graph files round-trip byte-identically")
{
    std::mt19937 rng(12);
    TempPath in("rt_in"), out("rt_out");
    int checked = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto g = testing_support::random_graph(rng, 2 + trial % 3, 4);
        DecoratedGraph s;
        try {
            s = canonical_form(stabilize(g, [](int c) { return c; }));
        } catch (const DomainError &) {
            continue;
        }
        spit(in.str(), graph_to_json(s).dump(2) + "\n");
        auto r = run({"graphs", "stabilize", "--input", in.str(), "--output", out.str()});
        if (r.code != 0)
            continue;  // congruence can break when joining edges of inadmissible vertices
        CHECK(slurp(out.str()) == slurp(in.str()));
        ++checked;
    }
    CHECK(checked > 10);
}
