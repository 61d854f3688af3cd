#pragma once

#include "rcr/io.hpp"

#include <string>

#ifndef FIXTURE_DIR
#define FIXTURE_DIR "tests/fixtures"
#endif

inline std::string fixture(const std::string &name) { return std::string(FIXTURE_DIR) + "/" + name; }
inline rcr::Structure load_fixture(const std::string &name) { return rcr::load_structure(fixture(name)); }

inline rcr::Tuple tup(const rcr::Structure &A, std::initializer_list<const char *> names)
{
    rcr::Tuple t;
    for (auto n : names)
        t.push_back(*A.find_element(n));
    return t;
}
