#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "divcode/errors.hpp"
#include "helpers.hpp"

using namespace divcode;

TEST_CASE("corpus loads with verified checksums and shapes") {
    const FixtureSet& fx = fixture_set();
    CHECK(fx.entries().size() == 20);
    for (const auto& fe : fx.entries()) {
        CHECK(fe.matrix.nrows() == fe.nrows);
        CHECK(fe.matrix.ncols() == fe.ncols);
    }
    CHECK(fx.get("cprime66_13").ncols == 66);
    CHECK(fx.get("code63_12").ncols == 63);
    CHECK(fx.get("code64_12").ncols == 64);
    CHECK(fx.get("code65_12").ncols == 65);
    CHECK_THROWS_AS(fx.get("nonsense"), ParseError);
}

TEST_CASE("verify_all passes every recorded expectation") {
    // automorphism orders run in the acceptance tier; keep the unit sweep quick
    auto checks = fixture_set().verify_all(/*include_aut_orders=*/false);
    CHECK(checks.size() > 40);
    for (const auto& c : checks) {
        CHECK_MESSAGE(c.pass, c.fixture, ":", c.check, " -> ", c.detail);
    }
}

TEST_CASE("sha256 reference vectors") {
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("tampered fixture is rejected") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "divcode_tampered_fixtures";
    fs::remove_all(dir);
    fs::create_directories(dir);
#ifdef DIVCODE_FIXTURE_DIR
    fs::path src = DIVCODE_FIXTURE_DIR;
#else
    fs::path src = "fixtures";
#endif
    for (const auto& entry : fs::directory_iterator(src)) fs::copy(entry, dir / entry.path().filename());
    // flip one character in a matrix file
    fs::path victim = dir / "kummer16.txt";
    std::string body;
    {
        std::ifstream in(victim);
        std::ostringstream os;
        os << in.rdbuf();
        body = os.str();
    }
    body[0] = body[0] == '0' ? '1' : '0';
    std::ofstream(victim) << body;
    CHECK_THROWS_AS(FixtureSet::load_dir(dir.string()), ParseError);
    fs::remove_all(dir);
}
