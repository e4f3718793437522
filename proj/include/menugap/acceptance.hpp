#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace menugap::acceptance {

struct Options {
    std::uint64_t seed = 2026;
    int layers = 40;
    bool quick = false;  // reduced instance counts and layer depth
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the numbered verification criteria (all ten when `which` is empty)
/// and returns one result per criterion.
std::vector<CriterionResult> run(const Options& opts, const std::vector<int>& which = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace menugap::acceptance
