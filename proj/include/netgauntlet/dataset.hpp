#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "netgauntlet/errors.hpp"

namespace netgauntlet {

enum class FeatureKind { continuous, categorical };

/// One predictive feature of the schema. Indices are the zero-based column
/// positions and must form 0..n_features-1 with no gaps.
struct FeatureMeta {
    std::string name;
    FeatureKind kind = FeatureKind::continuous;
    int index = 0;
};

enum class LabelMode { binary, category5 };

/// Maps canonical label text (lowercase, trailing '.' stripped) to a class
/// index. Binary mode needs no table: "normal" vs everything else.
/// category5 mode uses an attack-name -> category table and treats an
/// unmapped attack name as a load error.
class LabelScheme {
public:
    static LabelScheme binary();
    static LabelScheme category5(std::unordered_map<std::string, int> attack_category);

    LabelMode mode() const { return mode_; }
    int n_classes() const { return mode_ == LabelMode::binary ? 2 : 5; }
    const std::vector<std::string>& class_names() const;

    int class_of(const std::string& canonical_label) const;

    const std::unordered_map<std::string, int>& attack_table() const { return attack_category_; }

private:
    LabelMode mode_ = LabelMode::binary;
    std::unordered_map<std::string, int> attack_category_;
};

std::string canonical_label(std::string raw);

struct Column {
    FeatureKind kind = FeatureKind::continuous;
    std::vector<double> values;             // continuous
    std::vector<std::int32_t> codes;        // categorical, index into categories
    std::vector<std::string> categories;    // code -> text, first-appearance order
};

/// Immutable after load. Columns are per-feature arrays; labels hold the
/// canonical label text and `classes` the LabelScheme mapping of each record.
struct Dataset {
    std::vector<FeatureMeta> schema;
    std::vector<Column> columns;
    std::vector<std::string> labels;
    std::vector<int> classes;
    LabelScheme scheme;
    std::size_t n_records = 0;

    std::size_t n_features() const { return schema.size(); }
    FeatureKind kind(std::size_t f) const { return schema[f].kind; }

    double value(std::size_t f, std::size_t r) const { return columns[f].values[r]; }
    std::int32_t code(std::size_t f, std::size_t r) const { return columns[f].codes[r]; }
    const std::string& category_text(std::size_t f, std::size_t r) const {
        return columns[f].categories[static_cast<std::size_t>(columns[f].codes[r])];
    }

    /// Numeric view of one cell: categorical codes coerced to real numbers.
    double numeric(std::size_t f, std::size_t r) const {
        return kind(f) == FeatureKind::continuous ? columns[f].values[r]
                                                  : static_cast<double>(columns[f].codes[r]);
    }

    /// "name:kind|..." echo used to detect train/predict schema mismatches.
    std::string schema_signature() const;

    void check_invariants() const;
};

/// Semantic equality: same schema, same values, same per-record category
/// text and labels. Categorical code numbering may differ.
bool datasets_equal(const Dataset& a, const Dataset& b);

struct LoadOptions {
    bool skip_header = false;
};

Dataset load_csv(const std::string& path, const std::vector<FeatureMeta>& schema,
                 const LabelScheme& scheme, const LoadOptions& options = {});

/// Sidecar schema file: one `name:kind` line per feature, kind in
/// {continuous, categorical}. '#' starts a comment.
std::vector<FeatureMeta> load_schema_file(const std::string& path);

/// Re-emits records in order; continuous cells use shortest round-trip
/// decimals, so load_csv(write_csv(d)) == d.
void write_csv(const Dataset& data, std::ostream& out);
void write_csv_file(const Dataset& data, const std::string& path);

/// Deterministic stratified subsample: per-class proportions within one
/// record of the source, record order preserved.
Dataset stratified_sample(const Dataset& data, std::size_t n, std::uint64_t seed);

Dataset subset_rows(const Dataset& data, std::span<const int> rows);

/// Raw numeric matrix (records x features): continuous values verbatim,
/// categorical codes as reals.
Eigen::MatrixXd encode_numeric(const Dataset& data);

/// Per-feature affine map to [0,1] fitted on a row subset; constant
/// features map to 0.
struct MinMaxScaler {
    Eigen::VectorXd lo;
    Eigen::VectorXd width; // 0 for constant features

    void fit(const Eigen::MatrixXd& X, std::span<const int> rows);
    Eigen::RowVectorXd transform_row(const Eigen::RowVectorXd& row) const;
    Eigen::MatrixXd transform(const Eigen::MatrixXd& X) const;
};

struct NumericEncoding {
    Eigen::MatrixXd raw;
    Eigen::MatrixXd normalized;
    MinMaxScaler scaler;
    std::vector<int> labels;
};

NumericEncoding numeric_encode(const Dataset& data);

} // namespace netgauntlet
