#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cqs/cli.hpp"
#include "cqs/errors.hpp"
#include "cqs/report.hpp"
#include "oracles.hpp"

#include <fstream>
#include <sstream>

using namespace cqs;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    for (std::string l; std::getline(is, l);) out.push_back(l);
    return out;
}

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("convert examples") {
    Run r = cli({"convert", "nq:20/11", "--to", "interval"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out).at(0) == "interval:-2/5,2/5");
    CHECK(contains(r.out, "canonical class: nq:20/11"));

    r = cli({"convert", "cf:3,2,2,2,3", "--to", "nq"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out).at(0) == "nq:20/11");

    r = cli({"convert", "nq:20/11"});
    CHECK(r.code == kExitOk);
    CHECK(lines(r.out) == std::vector<std::string>{"nq:20/11", "abc:5,4,3", "cone:(1,0),(-11,20)",
                                                   "interval:-2/5,2/5", "cf:3,2,2,2,3",
                                                   "canonical class: nq:20/11"});
    CHECK(cli({"convert", "nq:20/11", "--all"}).out == r.out);
}

TEST_CASE("convert reports the canonical class of the isomorphism pair") {
    Run r = cli({"convert", "nq:7/5", "--to", "nq"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "canonical class: nq:7/3"));
}

TEST_CASE("exit codes") {
    CHECK(cli({"convert", "nq:6/3"}).code == kExitInvalid);
    CHECK(cli({"convert", "nq:6"}).code == kExitParse);
    CHECK(cli({"convert", "xyz:1"}).code == kExitParse);
    CHECK(cli({"analyze", "nq:5/4"}).code == kExitDegenerate);
    CHECK(cli({"analyze", "nq:5/4", "--allow-degenerate"}).code == kExitOk);
    CHECK(cli({"scan", "1"}).code == kExitParse);
    CHECK(cli({"scan", "ten"}).code == kExitParse);
    CHECK(cli({}).code == kExitParse);
    CHECK(cli({"frobnicate"}).code == kExitParse);
    CHECK(cli({"analyze", "nq:20/11", "--json", "--csv"}).code == kExitParse);
    CHECK(cli({"verify", "2"}).code == kExitOk);
}

TEST_CASE("diagnostics are one line and name the invariant") {
    Run r = cli({"convert", "nq:6/3"});
    CHECK(r.out.empty());
    CHECK(lines(r.err).size() == 1);
    CHECK(contains(r.err, "gcd"));

    r = cli({"analyze", "nq:5/4"});
    CHECK(lines(r.err).size() == 1);
    CHECK(contains(r.err, "A_{n-1}"));
}

TEST_CASE("verify respects the oracle bound") {
    setenv("CQS_ORACLE_BOUND", "10", 1);
    Run r = cli({"verify", "11"});
    unsetenv("CQS_ORACLE_BOUND");
    CHECK(r.code == kExitParse);
    CHECK(contains(r.err, "CQS_ORACLE_BOUND"));
}

TEST_CASE("analyze text report for the worked example") {
    Run r = cli({"analyze", "nq:20/11"});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "cf:3,2,2,2,3"));
    CHECK(contains(r.out, "x3*x5 - x4^2"));
    CHECK(contains(r.out, "T1 = 10  V = 3"));
    CHECK(contains(r.out, "VW = 1  qG = 0"));
}

TEST_CASE("analyze csv has a fixed header and one row per degree") {
    Run r = cli({"analyze", "nq:20/11", "--csv"});
    REQUIRE(r.code == kExitOk);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 8);
    CHECK(ls[0] == "i,k,degree,R_u,R_v,dim_t1,dim_v,dim_w,dim_vw,dim_qg,last_deformation");
    CHECK(ls[4] == "4,1,-r^4,5,3,2,1,1,1,0,true");
    for (const std::string& l : ls) CHECK(std::count(l.begin(), l.end(), ',') == 10);
}

TEST_CASE("analyze json round-trips losslessly") {
    std::vector<std::string> inputs{"nq:20/11", "nq:4/1", "nq:7/3", "interval:-2/5,4/5", "abc:5,4,3", "cf:2,5,3"};
    for (int i = 0; i < 40; ++i) inputs.push_back(format(cqs_test::random_nq(300)));
    inputs.push_back(format(cqs_test::random_big_nq(25)));
    for (const std::string& in : inputs) {
        INFO(in);
        for (bool cay : {false, true}) {
            std::vector<std::string> args{"analyze", in, "--json", "--allow-degenerate"};
            if (cay) args.push_back("--cayley");
            Run r = cli(args);
            REQUIRE(r.code == kExitOk);
            const ReportDocument doc = report_from_json(r.out);
            CHECK(to_json(doc) + "\n" == r.out);
            CHECK(doc.schema_version == "1");
            CHECK(doc.input == in);
            CHECK(doc.singularity.nq == Singularity::from(parse_form(in)).nq);
            CHECK(doc.cayley.has_value() == cay);
            const ReportDocument direct = analyze(in, {true, cay});
            CHECK(doc.t1 == direct.t1);
            CHECK(doc.flags == direct.flags);
        }
    }
}

TEST_CASE("json schema rejects malformed documents") {
    CHECK_THROWS_AS(report_from_json("{"), ParseError);
    CHECK_THROWS_AS(report_from_json("{\"schema_version\": \"2\"}"), ParseError);
    CHECK_THROWS_AS(report_from_json("[]"), ParseError);
}

TEST_CASE("rationals are exact strings in json") {
    Run r = cli({"analyze", "nq:20/11", "--json"});
    CHECK(contains(r.out, "\"A\": \"2/5\""));
    CHECK_FALSE(contains(r.out, "0.4"));
}

TEST_CASE("scan 25 matches the committed golden file byte for byte") {
    Run r = cli({"scan", "25"});
    REQUIRE(r.code == kExitOk);
    CHECK(r.out == read_file(std::string(CQS_GOLDEN_DIR) + "/scan25.csv"));
}

TEST_CASE("scan rows") {
    Run r = cli({"scan", "25"});
    auto ls = lines(r.out);
    CHECK(ls.at(0) == kScanHeader);
    CHECK(std::find(ls.begin(), ls.end(), "20,11,5,4,3,7,true,false,10,3,5,1,0,2") != ls.end());
    for (std::size_t j = 1; j < ls.size(); ++j) {
        std::vector<std::int64_t> f;
        std::vector<std::string> raw;
        std::istringstream is(ls[j]);
        for (std::string c; std::getline(is, c, ',');) raw.push_back(c);
        REQUIRE(raw.size() == 14);
        auto num = [&](int k) { return std::stoll(raw[k]); };
        const std::int64_t t1 = num(8), v = num(9), w = num(10), vw = num(11), qg = num(12), gap = num(13);
        CHECK(qg <= vw);
        CHECK(vw <= v);
        CHECK(vw <= w);
        CHECK(w <= t1);
        CHECK(gap == v - vw);
        if (num(3) == 1) CHECK(vw + qg == 0);
    }
}

TEST_CASE("scan output is deterministic across worker counts") {
    const std::string serial = cli({"scan", "40"}).out;
    CHECK(cli({"scan", "40", "-j", "4"}).out == serial);
    CHECK(cli({"scan", "40", "-j", "7"}).out == serial);
    const std::string all = cli({"scan", "40", "--all-q"}).out;
    CHECK(cli({"scan", "40", "--all-q", "-j", "3"}).out == all);
    CHECK(lines(all).size() > lines(serial).size());
}

TEST_CASE("verify passes and reports counts") {
    Run r = cli({"verify", "2"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "all checks passed"));

    r = cli({"verify", "20", "-j", "2"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "0 failures"));
    CHECK(contains(r.out, "vw-bound"));
}

TEST_CASE("verify detects an injected fault") {
    for (const std::string fault : {"vw-bound", "qg-bound"}) {
        Run r = cli({"verify", "20", "--inject-fault", fault});
        CHECK(r.code == kExitVerifyFailed);
        CHECK(contains(r.out, "verification FAILED"));
        bool named = false;
        for (const std::string& l : lines(r.out))
            if (l.rfind("FAIL", 0) == 0) {
                named = true;
                CHECK(contains(l, fault));
                CHECK(contains(l, " q="));
                CHECK(contains(l, "degree="));
            }
        CHECK(named);
    }
}

TEST_CASE("verify summary is identical for any worker count") {
    const VerifySummary a = verify(25, {1, std::nullopt});
    const VerifySummary b = verify(25, {5, std::nullopt});
    CHECK(a.checks == b.checks);
    CHECK(a.checks_by_property == b.checks_by_property);
    CHECK(a.ok());
    CHECK(b.ok());
}

TEST_CASE("cayley examples") {
    Run r = cli({"cayley", "interval:-2/5,4/5", "--json"});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "\"d\": 1"));
    CHECK(contains(r.out, "\"degenerate_base\": false"));

    r = cli({"cayley", "nq:4/1"});
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "d = 1"));
    CHECK(contains(r.out, "degenerate base: yes"));
    CHECK(contains(r.out, "(-1, 2, 0)"));

    r = cli({"cayley", "nq:20/11"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "d = 0"));
    CHECK(cli({"cayley", "nq:6/3"}).code == kExitInvalid);
}

TEST_CASE("reports above the oracle bound omit W and still round-trip") {
    setenv("CQS_ORACLE_BOUND", "10", 1);
    Run r = cli({"analyze", "nq:20/11", "--json"});
    unsetenv("CQS_ORACLE_BOUND");
    REQUIRE(r.code == kExitOk);
    CHECK(contains(r.out, "\"w\": null"));
    const ReportDocument doc = report_from_json(r.out);
    CHECK_FALSE(doc.t1->totals.w.has_value());
    CHECK(to_json(doc) + "\n" == r.out);
}
