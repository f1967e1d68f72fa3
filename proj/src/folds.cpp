#include "netgauntlet/folds.hpp"

#include "netgauntlet/rng.hpp"

namespace netgauntlet {

std::vector<int> FoldPlan::test_rows(int fold) const {
    std::vector<int> rows;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        if (assignment[r] == fold) rows.push_back(static_cast<int>(r));
    }
    return rows;
}

std::vector<int> FoldPlan::train_rows(int fold) const {
    std::vector<int> rows;
    for (std::size_t r = 0; r < assignment.size(); ++r) {
        if (assignment[r] != fold) rows.push_back(static_cast<int>(r));
    }
    return rows;
}

std::vector<int> FoldPlan::fold_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(k), 0);
    for (int a : assignment) ++sizes[static_cast<std::size_t>(a)];
    return sizes;
}

FoldPlan make_fold_plan(const Dataset& data, int k, std::uint64_t seed) {
    if (k < 2) throw ConfigError("fold count must be >= 2");
    if (static_cast<std::size_t>(k) > data.n_records) {
        throw SizeError("fold count " + std::to_string(k) + " exceeds record count " +
                        std::to_string(data.n_records));
    }

    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignment.assign(data.n_records, -1);

    const int n_classes = data.scheme.n_classes();
    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(n_classes));
    for (std::size_t r = 0; r < data.n_records; ++r) {
        by_class[static_cast<std::size_t>(data.classes[r])].push_back(static_cast<int>(r));
    }

    // Each class is dealt round-robin starting where the previous class
    // stopped, which keeps total fold sizes within one of each other.
    int offset = 0;
    for (int c = 0; c < n_classes; ++c) {
        auto rows = by_class[static_cast<std::size_t>(c)];
        if (rows.empty()) continue;
        if (rows.size() < static_cast<std::size_t>(k)) {
            plan.warnings.push_back("class '" + data.scheme.class_names()[static_cast<std::size_t>(c)] +
                                    "' has fewer records (" + std::to_string(rows.size()) +
                                    ") than folds; spread best-effort");
        }
        Rng rng(derive_seed(seed, SeedRole::folds, static_cast<std::uint64_t>(c)));
        rng.shuffle(rows);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            plan.assignment[static_cast<std::size_t>(rows[i])] =
                static_cast<int>((offset + i) % static_cast<std::size_t>(k));
        }
        offset = static_cast<int>((offset + rows.size()) % static_cast<std::size_t>(k));
    }
    return plan;
}

} // namespace netgauntlet
