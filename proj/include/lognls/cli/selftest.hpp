#pragma once

#include <string>
#include <vector>

namespace lognls::cli {

struct SelftestRow {
    std::string suite;
    std::string check;
    double measured = 0.0;
    double threshold = 0.0;
    bool pass = false;
};

/// Invariant suite of every module at reduced sizes (a few seconds on one core).
std::vector<SelftestRow> run_selftest();

} // namespace lognls::cli
