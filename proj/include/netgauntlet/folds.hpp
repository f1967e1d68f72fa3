#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "netgauntlet/dataset.hpp"

namespace netgauntlet {

/// Stratified k-fold assignment: every record lands in exactly one fold,
/// fold sizes differ by at most one, and per-class counts per fold stay
/// within one of the proportional share.
struct FoldPlan {
    int k = 0;
    std::uint64_t seed = 0;
    std::vector<int> assignment; // per record, 0..k-1
    std::vector<std::string> warnings;

    std::vector<int> test_rows(int fold) const;
    std::vector<int> train_rows(int fold) const;
    std::vector<int> fold_sizes() const;
};

FoldPlan make_fold_plan(const Dataset& data, int k, std::uint64_t seed);

} // namespace netgauntlet
