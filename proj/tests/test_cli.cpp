#include "friable_cli/cli.hpp"

#include <json.hpp>

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using friable::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "friable");
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);)
        out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3, 1e300, -2.5e-17, 123456789.0}) {
        const auto s = friable::cli::format_number(v);
        CHECK(std::stod(s) == v);
    }
}

TEST_CASE("sum") {
    auto r = call({"sum", "--x", "10", "--y", "2", "--q", "3", "--a", "1"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 3);
    CHECK(ls[0] == friable::cli::csv_header_tag);
    const auto head = split(ls[1]), row = split(ls[2]);
    REQUIRE(head.size() == row.size());
    std::map<std::string, std::string> m;
    for (std::size_t i = 0; i < head.size(); ++i)
        m[head[i]] = row[i];
    CHECK(std::stod(m["re"]) == doctest::Approx(-2));
    CHECK(std::stod(m["abs"]) == doctest::Approx(2));
    CHECK(m["psi"] == "4");
    CHECK(m.count("envelope_THM1"));
    CHECK(m.count("ratio_E4"));

    r = call({"sum", "--x", "1e6", "--y", "100", "--q", "997", "--a", "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["psi"].get<std::uint64_t>() > 0);
    CHECK(j["envelope_FT_rat"].get<double>() > 0);
}

TEST_CASE("argument errors exit 2") {
    CHECK(call({"sum", "--x", "100", "--y", "10", "--q", "10", "--a", "4"}).code == 2);
    CHECK(call({"sum", "--q", "10", "--a", "4"}).code == 2);
    CHECK(call({"sum", "--x", "100", "--y", "10", "--q", "2.5"}).code == 2);
    CHECK(call({"bogus"}).code == 2);
    CHECK(call({}).code == 2);
    CHECK(call({"optimize", "--alpha", "2", "--beta", "0.5"}).code == 2);
    CHECK(call({"sum", "--help"}).code == 0);
}

TEST_CASE("sieve") {
    auto r = call({"sieve", "--x", "30", "--y", "5"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).back() == "30,5,18");
    r = call({"sieve", "--x", "10", "--y", "2", "--list", "--format", "json"});
    CHECK(nlohmann::json::parse(r.out)["members"] == nlohmann::json({1, 2, 4, 8}));
}

TEST_CASE("scan cardinality, order and determinism") {
    const std::vector<std::string> args{"scan", "--x", "1e3", "2e3", "3e3", "--y", "5", "10", "20",
                                        "--q", "7", "11", "13", "--seed", "9"};
    const auto a = call(args), b = call(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    const auto ls = lines(a.out);
    std::vector<std::string> rows;
    for (const auto& l : ls)
        if (!l.empty() && l[0] != '#' && l.rfind("x,", 0) != 0)
            rows.push_back(l);
    CHECK(rows.size() == 27);
    CHECK(split(rows.front())[0] == "1000");
    CHECK(split(rows.back())[0] == "3000");

    auto c = args;
    c.back() = "10";
    CHECK(call(c).out != a.out);

    auto threaded = args;
    threaded.insert(threaded.end(), {"--threads", "3"});
    CHECK(call(threaded).out == a.out);
}

TEST_CASE("scan smoke grid has finite positive ratios") {
    const auto r = call({"scan", "--x", "1e5", "1e6", "--y", "30", "100", "--q", "101", "997", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["rows"].size() == 8);
    for (const auto& row : j["rows"])
        for (const auto& [k, v] : row.items())
            if (k.rfind("ratio_", 0) == 0) {
                REQUIRE(v.is_number());
                CHECK(v.get<double>() > 0);
                CHECK(std::isfinite(v.get<double>()));
            }
    CHECK(j["diagnostics"].size() == 4);
}

TEST_CASE("scan skips q sharing a factor with a fixed a") {
    const auto r = call({"scan", "--x", "1000", "--y", "10", "--q", "6", "7", "9", "--a", "3", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    REQUIRE(j["rows"].size() == 1);
    CHECK(j["rows"][0]["q"] == 7);
}

TEST_CASE("scan budget refusal exits 3") {
    const auto r = call({"scan", "--x", "1e6", "--y", "10", "--q", "7", "--budget", "1e5"});
    CHECK(r.code == 3);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
}

TEST_CASE("verify") {
    auto r = call({"verify"});
    CHECK(r.code == 0);
    CHECK(lines(r.out).size() == 10);
    CHECK(lines(r.out)[0] == friable::cli::csv_header_tag);
    r = call({"verify", "--suite", "buchstab", "--x", "3e4", "--y", "12", "--r", "3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("buchstab,pass") != std::string::npos);
    r = call({"verify", "--sabotage"});
    CHECK(r.code == 1);
    CHECK(r.err.find("counterexample") != std::string::npos);
    CHECK(call({"verify", "--suite", "nope"}).code == 2);
}

TEST_CASE("regions") {
    const auto r = call({"regions"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& v : j["polygons"]["E1"])
        found = found || (v["alpha"] == "1/5" && v["beta"] == "4/5");
    CHECK(found);
    CHECK(j["polygons"].size() == 4);
}

TEST_CASE("optimize") {
    const auto csv = lines(call({"optimize", "--alpha", "0.2", "--beta", "0.5"}).out);
    REQUIRE(csv.size() == 3);
    CHECK(csv[0] == friable::cli::csv_header_tag);
    CHECK(csv[1] == "alpha,beta,omega,kappa,regime,exponent");
    auto r = call({"optimize", "--alpha", "0.5", "--beta", "0.8", "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["omega"].get<double>() == doctest::Approx(0.1));
    CHECK(j["kappa"].get<double>() == doctest::Approx(0.05));
    CHECK(j["regime"] == "under-intersection");
    r = call({"optimize", "--alpha", "0.9", "--beta", "1.5", "--format", "json"});
    REQUIRE(r.code == 0);
    j = nlohmann::json::parse(r.out);
    CHECK(j["regime"] == "trivial");
}

TEST_CASE("--output writes a file") {
    const std::string path = "friable_cli_test_output.csv";
    const auto r = call({"sum", "--x", "100", "--y", "10", "--q", "7", "--a", "2", "--output", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string first;
    std::getline(in, first);
    CHECK(first == friable::cli::csv_header_tag);
    in.close();
    std::remove(path.c_str());
}

}
