#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <qseries/catalog.hpp>

#include "../tools/cli.hpp"

using namespace qseries;

namespace
{

struct Run
{
    int code = 0;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    args.insert(args.begin(), "qseries");
    std::vector<const char *> argv;
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string data(const std::string &name)
{
    return std::string(QSERIES_SOURCE_DIR) + "/data/" + name;
}

struct TempDir
{
    std::filesystem::path path;

    TempDir()
    {
        path = std::filesystem::temp_directory_path() /
               ("qseries-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        std::filesystem::create_directories(path);
    }
    ~TempDir()
    {
        std::filesystem::remove_all(path);
    }

    std::string write(const std::string &name, const std::string &text) const
    {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
};

Json read_json(const std::string &path)
{
    std::ifstream in(path);
    return Json::parse(in);
}

bool contains(const std::string &s, const std::string &part)
{
    return s.find(part) != std::string::npos;
}

} // namespace

TEST_CASE("expand")
{
    auto r = run({"expand", data("rr.json"), "--order", "6"});
    CHECK(r.code == 0);
    CHECK(r.out == "1 + q + q^2 + q^3 + 2q^4 + 2q^5 + 3q^6\n");
    r = run({"expand", data("rr.json"), "--order", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "1\n");

    TempDir tmp;
    const auto out = (tmp.path / "rr_series.json").string();
    r = run({"expand", data("rr.json"), "--order", "4", "--json", out});
    CHECK(r.code == 0);
    CHECK(std::filesystem::exists(out));

    const auto bad = tmp.write("bad.json", R"({"A":[["1","2"],["2","1"]],"B":["0","0"],"C":"0"})");
    r = run({"expand", bad});
    CHECK(r.code == 2);
    CHECK(contains(r.err, "positive definite"));
    CHECK(run({"expand", tmp.write("junk.json", "{ not json")}).code == 2);
    CHECK(run({"expand", (tmp.path / "missing.json").string()}).code == 2);
    CHECK(run({"expand", data("rr.json"), "--order", "x/y"}).code == 2);
}

TEST_CASE("dual")
{
    auto r = run({"dual", data("rank4_b1.json")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, R"("B": ["0","1/2","1/2","0"])"));
    CHECK(contains(r.out, R"("C": "1/48")"));
    CHECK(!contains(r.out, "\"D\""));

    r = run({"dual", data("exam5_b1.json")});
    CHECK(r.code == 0);
    CHECK(contains(r.out, R"("A": [["1","-1/2","0"],["-1/2","1","-1"],["0","-1/2","1"]])"));
    CHECK(contains(r.out, R"("B": ["1","-1","1/2"])"));
    CHECK(contains(r.out, R"("D": [2,2,1])"));

    TempDir tmp;
    for (const auto *name : {"rr.json", "exam5_b0.json", "exam5_b1.json", "rank4_b2.json"}) {
        CAPTURE(name);
        const auto once = (tmp.path / "once.json").string();
        const auto twice = (tmp.path / "twice.json").string();
        REQUIRE(run({"dual", data(name), "--json", once}).code == 0);
        REQUIRE(run({"dual", once, "--json", twice}).code == 0);
        CHECK(read_json(twice) == read_json(data(name)));
    }

    r = run({"dual", data("rank4_b1.json"), "--check", "--order", "20"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "eta fit: {1/2:-3, 1:3}, weight 0, scalar 3"));
    CHECK(contains(r.out, "not an eta quotient"));
}

TEST_CASE("catalog")
{
    auto r = run({"catalog"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "0 failed"));
    CHECK(run({"catalog"}).out == r.out);
    CHECK(run({"catalog", "--parallel", "3"}).out == r.out);
    CHECK(!contains(r.out, " ms"));

    r = run({"catalog", "--filter", "thm-id"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "3 records: 3 passed"));
    CHECK(run({"catalog", "--order", "35"}).code == 0);
    CHECK(run({"catalog", data("catalog.json"), "--filter", "RR"}).code == 0);

    IdentityRecord bad;
    bad.name = "off by one";
    bad.order = 10;
    bad.check = ExprIdentity{inv(poch_expr(poch_infinite(1, 1, 1))), add({scalar(1), qpow(1)})};
    TempDir tmp;
    const auto path = tmp.write("bad.json", catalog_to_json({bad}).dump());
    r = run({"catalog", path});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "FAIL  off by one"));

    CHECK(run({"catalog", tmp.write("broken.json", R"([{"name": "x"}])")}).code == 2);
    CHECK(run({"catalog", "--parallel", "0"}).code == 2);

    const auto dumped = (tmp.path / "dump.json").string();
    CHECK(run({"catalog", "--filter", "RR", "--dump", dumped}).code == 0);
    CHECK(read_json(dumped).size() == 2);
}

TEST_CASE("bailey")
{
    auto r = run({"bailey", "--pair", "BP1", "--nmax", "12", "--order", "25"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "PASS"));
    r = run({"bailey", "--pair", "BP1", "--scale", "2", "--transform", "TBL"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "lhs: 1 + 4q + 4q^2"));
    CHECK(contains(r.out, "EQUAL"));
    CHECK(run({"bailey", "--pair", "BP3", "--transform", "S2BL"}).code == 0);
    CHECK(run({"bailey", "--pair", "BP9"}).code == 2);
    CHECK(run({"bailey", "--pair", "BP1", "--transform", "S2BL"}).code == 2);
    CHECK(run({"bailey"}).code == 2);
}

TEST_CASE("fit")
{
    auto r = run({"fit", data("psi.json")});
    CHECK(r.code == 0);
    CHECK(r.out == "{1:-1, 2:2}, weight 1/2\n");
    r = run({"fit", "--expr", R"({"op":"theta","kind":"psi"})", "--moduli", "1,2", "--json"});
    CHECK(r.code == 0);
    CHECK(Json::parse(r.out).at("quotient").at("weight") == "1/2");
    r = run({"fit", data("exam5_b1.json"), "--order", "20"});
    CHECK(r.code == 1);
    CHECK(contains(r.out, "not an eta quotient"));
    CHECK(run({"fit"}).code == 2);
    CHECK(run({"fit", data("psi.json"), "--moduli", "1,a"}).code == 2);
}

TEST_CASE("usage")
{
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
