#pragma once

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "netgauntlet/dataset.hpp"
#include "netgauntlet/errors.hpp"
#include "netgauntlet/kdd99.hpp"

namespace testutil {

inline std::filesystem::path temp_root() {
    static const std::filesystem::path root = [] {
        auto p = std::filesystem::temp_directory_path() /
                 ("netgauntlet_tests_" + std::to_string(static_cast<long>(::getpid())));
        std::filesystem::create_directories(p);
        return p;
    }();
    return root;
}

inline std::string write_temp(const std::string& name, const std::string& content) {
    static int counter = 0;
    auto path = temp_root() / (std::to_string(counter++) + "_" + name);
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    return path.string();
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_file: cannot open " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

/// Builds a Dataset by writing CSV text through the real loader.
inline netgauntlet::Dataset csv_dataset(const std::string& text,
                                        const std::vector<netgauntlet::FeatureMeta>& schema,
                                        const netgauntlet::LabelScheme& scheme,
                                        bool header = false) {
    netgauntlet::LoadOptions options;
    options.skip_header = header;
    return netgauntlet::load_csv(write_temp("data.csv", text), schema, scheme, options);
}

inline std::vector<netgauntlet::FeatureMeta> numeric_schema(int m) {
    std::vector<netgauntlet::FeatureMeta> schema;
    for (int f = 0; f < m; ++f) {
        schema.push_back({"f" + std::to_string(f), netgauntlet::FeatureKind::continuous, f});
    }
    return schema;
}

/// Numeric-feature dataset with integer class labels 0..2 mapped onto the
/// label texts normal/smurf/satan (classes 0/1/2 under category5, 0/1/1
/// under binary).
inline netgauntlet::Dataset points_dataset(const std::vector<std::vector<double>>& X,
                                           const std::vector<int>& labels,
                                           bool category5 = false) {
    static const char* kNames[] = {"normal", "smurf", "satan"};
    std::string text;
    for (std::size_t r = 0; r < X.size(); ++r) {
        for (double v : X[r]) {
            std::ostringstream cell;
            cell << std::setprecision(17) << v;
            text += cell.str() + ",";
        }
        text += std::string(kNames[labels[r]]) + "\n";
    }
    auto scheme = category5 ? netgauntlet::kdd99::scheme(netgauntlet::LabelMode::category5)
                            : netgauntlet::LabelScheme::binary();
    return csv_dataset(text, numeric_schema(static_cast<int>(X[0].size())), scheme);
}

} // namespace testutil
