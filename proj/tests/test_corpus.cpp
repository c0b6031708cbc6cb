#include <doctest.h>

#include <fstream>

#include "folia/corpus.hpp"

using namespace folia;
namespace fs = std::filesystem;

namespace {

// Fresh directory under the system temp dir, removed on scope exit.
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("folia_" + name)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    void write(const std::string& file, const std::string& text) const { std::ofstream(path / file) << text; }
};

Fixture inline_fixture(const std::string& check, Json params, Json expect, bool golden = true) {
    Fixture f;
    f.name = "t";
    f.group = "g";
    f.check = check;
    f.golden = golden;
    f.spec = {{"name", "t"}, {"group", "g"}, {"check", check}, {"inline", {{"vars", {"x"}}, {"components", {"x^2"}}}},
              {"params", params}, {"expect", expect}};
    return f;
}

} // namespace

TEST_CASE("corpus load errors name the file") {
    TempDir d("corpus_load");
    CHECK_THROWS_AS(load_corpus(d.path / "missing"), CorpusLoadError);
    d.write("a.json", "{\"name\": ");
    try {
        load_corpus(d.path);
        FAIL("expected a load error");
    } catch (const CorpusLoadError& e) {
        CHECK(e.path() == d.path / "a.json");
        CHECK(std::string(e.what()).find("a.json") != std::string::npos);
    }
    d.write("a.json", R"({"name": "a", "check": "classify"})");
    CHECK_THROWS_AS(load_corpus(d.path), CorpusLoadError);
    d.write("a.json", R"({"name": "a", "group": "g", "check": "classify"})");
    d.write("b.json", R"({"name": "a", "group": "g", "check": "classify"})");
    CHECK_THROWS_AS(load_corpus(d.path), CorpusLoadError);
}

TEST_CASE("fixture expectations") {
    CorpusOptions o;
    auto pass = run_fixture(inline_fixture("semicomplete", Json::object(), {{"order", 2}, {"verdict", "semicomplete"}}), o);
    CHECK(pass["status"] == "pass");
    auto fail = run_fixture(inline_fixture("semicomplete", Json::object(), {{"order", 3}}), o);
    CHECK(fail["status"] == "fail");
    CHECK(fail["message"] == "order mismatch");
    auto skipped = run_fixture(inline_fixture("semicomplete", Json::object(), {{"order", 3}}, false), o);
    CHECK(skipped["status"] == "skipped");

    Json half = {{"kind", "arc"}, {"centre", {0, 0}}, {"radius", 0.1}, {"angles_pi", {0, 1}}};
    auto approx = run_fixture(inline_fixture("time_form", {{"path", half}}, {{"value", {{"approx", {20, 0}}, {"rel", 1e-6}}}}), o);
    CHECK(approx["status"] == "pass");
    auto off = run_fixture(inline_fixture("time_form", {{"path", half}}, {{"value", {{"approx", {21, 0}}, {"tol", 0.5}}}}), o);
    CHECK(off["status"] == "fail");

    // A crossing of the zero is an error; it passes only when the fixture expects it.
    Json through = {{"kind", "segment"}, {"from", {-1, 0}}, {"to", {1, 0}}};
    auto err = run_fixture(inline_fixture("time_form", {{"path", through}}, Json::object()), o);
    CHECK(err["status"] == "fail");
    CHECK(err["details"]["error"] == "singular_path");
    auto expected = run_fixture(inline_fixture("time_form", {{"path", through}}, {{"error", "singular_path"}}), o);
    CHECK(expected["status"] == "pass");

    CHECK_THROWS_AS(run_fixture(inline_fixture("no_such_check", Json::object(), Json::object()), o), CorpusLoadError);
}

TEST_CASE("corpus report is ordered and independent of scheduling") {
    TempDir d("corpus_order");
    for (std::string n : {"c", "a", "b"})
        d.write(n + ".json", R"({"name": ")" + n + R"(", "group": "g", "check": "semicomplete",
            "inline": {"vars": ["x"], "components": ["x^3"]}, "expect": {"verdict": "not_semicomplete"}})");
    auto fx = load_corpus(d.path);
    REQUIRE(fx.size() == 3);
    CHECK(fx[0].name == "a");
    CHECK(fx[2].name == "c");
    CorpusOptions par, ser;
    ser.parallel = false;
    auto a = run_corpus(fx, par), b = run_corpus(fx, ser);
    CHECK(a.dump() == b.dump());
    CHECK(a["summary"]["passed"] == 3);
    par.filter = "b";
    CHECK(run_corpus(fx, par)["summary"]["total"] == 1);
}
