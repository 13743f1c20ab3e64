// Acceptance harness: runs the verification tiers and prints one PASS/FAIL
// line per check. Exit status 0 iff everything passed.
//
//   acceptance [--tier fast|search|long] [--jobs N] [--fixtures DIR]
//
// Tiers are cumulative: search implies fast, long implies both.

#include <cstring>
#include <iostream>
#include <string>

#include "divcode/verify.hpp"

using namespace divcode;

int main(int argc, char** argv) {
    std::string tier = "search";
    std::string fixtures;
#ifdef DIVCODE_FIXTURE_DIR
    fixtures = DIVCODE_FIXTURE_DIR;
#endif
    std::string checkpoint_dir;
    int jobs = 1;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next = [&]() -> std::string { return i + 1 < argc ? argv[++i] : ""; };
        if (arg == "--tier")
            tier = next();
        else if (arg == "--jobs")
            jobs = std::stoi(next());
        else if (arg == "--fixtures")
            fixtures = next();
        else if (arg == "--checkpoint-dir")
            checkpoint_dir = next();
        else {
            std::cerr << "usage: acceptance [--tier fast|search|long] [--jobs N] [--fixtures DIR]\n";
            return 2;
        }
    }

    FixtureSet fx = FixtureSet::load_dir(fixtures);
    std::vector<CheckResult> all;

    for (const auto& c : fx.verify_all(/*include_aut_orders=*/false))
        all.push_back({"fixture:" + c.fixture + ":" + c.check, "fast", c.pass, c.detail});
    auto fast = run_fast_checks(fx, jobs);
    all.insert(all.end(), fast.begin(), fast.end());
    if (tier == "search" || tier == "long") {
        auto search = run_search_checks(fx, jobs);
        all.insert(all.end(), search.begin(), search.end());
    }
    if (tier == "long") {
        auto lng = run_long_checks(fx, jobs, checkpoint_dir);
        all.insert(all.end(), lng.begin(), lng.end());
    }

    int failures = 0;
    for (const auto& c : all) {
        if (!c.pass) ++failures;
        std::cout << (c.pass ? "PASS" : "FAIL") << " [" << c.tier << "] " << c.id << "  ("
                  << c.detail << ")\n";
    }
    std::cout << (failures ? "FAILED" : "OK") << ": " << (all.size() - size_t(failures)) << "/"
              << all.size() << " checks passed\n";
    return failures ? 1 : 0;
}
