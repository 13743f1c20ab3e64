#pragma once

#include <cstdlib>
#include <random>

#include "divcode/fixtures.hpp"

inline const divcode::FixtureSet& fixture_set() {
    static divcode::FixtureSet set = [] {
#ifdef DIVCODE_FIXTURE_DIR
        return divcode::FixtureSet::load_dir(DIVCODE_FIXTURE_DIR);
#else
        return divcode::FixtureSet::load_dir();
#endif
    }();
    return set;
}

inline divcode::Code fixture_code(const std::string& id) { return fixture_set().get(id).code(); }

// deterministic rng for property tests
inline std::mt19937_64& test_rng() {
    static std::mt19937_64 rng(0x5eed5eedULL);
    return rng;
}

inline divcode::BitVec random_bitvec(int n) {
    divcode::BitVec v(n);
    for (int i = 0; i < n; ++i)
        if (test_rng()() & 1) v.set(i, true);
    return v;
}

inline std::vector<int> random_permutation(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[size_t(i)] = i;
    std::shuffle(p.begin(), p.end(), test_rng());
    return p;
}
