#include "netgauntlet/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include "netgauntlet/rng.hpp"

namespace netgauntlet {

namespace {

const std::vector<std::string> kBinaryClasses = {"normal", "attack"};
const std::vector<std::string> kCategory5Classes = {"normal", "dos", "probe", "r2l", "u2r"};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(',', start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return fields;
}

double parse_double(const std::string& s, std::size_t row, const std::string& feature) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw ParseError("row " + std::to_string(row) + ": cannot parse numeric field '" + s +
                         "' for feature " + feature);
    }
    return v;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

} // namespace

LabelScheme LabelScheme::binary() {
    LabelScheme s;
    s.mode_ = LabelMode::binary;
    return s;
}

LabelScheme LabelScheme::category5(std::unordered_map<std::string, int> attack_category) {
    LabelScheme s;
    s.mode_ = LabelMode::category5;
    s.attack_category_ = std::move(attack_category);
    return s;
}

const std::vector<std::string>& LabelScheme::class_names() const {
    return mode_ == LabelMode::binary ? kBinaryClasses : kCategory5Classes;
}

int LabelScheme::class_of(const std::string& canonical) const {
    if (canonical == "normal") return 0;
    if (mode_ == LabelMode::binary) return 1;
    auto it = attack_category_.find(canonical);
    if (it == attack_category_.end()) {
        throw LabelError("label '" + canonical + "' is not covered by the category5 scheme");
    }
    return it->second;
}

std::string canonical_label(std::string raw) {
    while (!raw.empty() && (raw.back() == '.' || raw.back() == '\r' || raw.back() == ' ')) {
        raw.pop_back();
    }
    std::transform(raw.begin(), raw.end(), raw.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return raw;
}

std::string Dataset::schema_signature() const {
    std::string sig;
    for (const auto& f : schema) {
        sig += f.name;
        sig += f.kind == FeatureKind::continuous ? ":continuous|" : ":categorical|";
    }
    return sig;
}

void Dataset::check_invariants() const {
    if (columns.size() != schema.size()) throw ConsistencyError("column count != schema size");
    for (std::size_t f = 0; f < schema.size(); ++f) {
        if (schema[f].index != static_cast<int>(f)) {
            throw ConsistencyError("schema indices must be 0..n-1 in order");
        }
        const Column& col = columns[f];
        const std::size_t len =
            col.kind == FeatureKind::continuous ? col.values.size() : col.codes.size();
        if (len != n_records) throw ConsistencyError("column '" + schema[f].name + "' length mismatch");
        if (col.kind == FeatureKind::categorical) {
            for (auto c : col.codes) {
                if (c < 0 || static_cast<std::size_t>(c) >= col.categories.size()) {
                    throw ConsistencyError("categorical code out of range in '" + schema[f].name + "'");
                }
            }
        }
    }
    if (labels.size() != n_records || classes.size() != n_records) {
        throw ConsistencyError("label arrays length mismatch");
    }
}

bool datasets_equal(const Dataset& a, const Dataset& b) {
    if (a.n_records != b.n_records || a.schema.size() != b.schema.size()) return false;
    for (std::size_t f = 0; f < a.schema.size(); ++f) {
        if (a.schema[f].name != b.schema[f].name || a.schema[f].kind != b.schema[f].kind) return false;
    }
    if (a.labels != b.labels) return false;
    for (std::size_t f = 0; f < a.schema.size(); ++f) {
        for (std::size_t r = 0; r < a.n_records; ++r) {
            if (a.kind(f) == FeatureKind::continuous) {
                if (a.value(f, r) != b.value(f, r)) return false;
            } else if (a.category_text(f, r) != b.category_text(f, r)) {
                return false;
            }
        }
    }
    return true;
}

Dataset load_csv(const std::string& path, const std::vector<FeatureMeta>& schema,
                 const LabelScheme& scheme, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file: " + path);

    Dataset d;
    d.schema = schema;
    d.scheme = scheme;
    d.columns.resize(schema.size());
    std::vector<std::unordered_map<std::string, std::int32_t>> intern(schema.size());
    for (std::size_t f = 0; f < schema.size(); ++f) d.columns[f].kind = schema[f].kind;

    const std::size_t expected_fields = schema.size() + 1;
    std::string line;
    std::size_t row = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (options.skip_header && !saw_header) {
            saw_header = true;
            continue;
        }
        ++row;
        if (line.empty()) continue;
        std::vector<std::string> fields = split_fields(line);
        if (fields.size() != expected_fields) {
            throw ParseError("row " + std::to_string(row) + ": expected " +
                             std::to_string(expected_fields) + " fields, got " +
                             std::to_string(fields.size()));
        }
        for (std::size_t f = 0; f < schema.size(); ++f) {
            Column& col = d.columns[f];
            if (col.kind == FeatureKind::continuous) {
                col.values.push_back(parse_double(fields[f], row, schema[f].name));
            } else {
                auto [it, inserted] = intern[f].try_emplace(
                    fields[f], static_cast<std::int32_t>(col.categories.size()));
                if (inserted) col.categories.push_back(fields[f]);
                col.codes.push_back(it->second);
            }
        }
        std::string label = canonical_label(fields.back());
        if (label.empty()) throw ParseError("row " + std::to_string(row) + ": empty label");
        d.classes.push_back(scheme.class_of(label));
        d.labels.push_back(std::move(label));
    }
    d.n_records = d.labels.size();
    if (d.n_records == 0) throw EmptyInputError("no records in " + path);
    d.check_invariants();
    return d;
}

std::vector<FeatureMeta> load_schema_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open schema file: " + path);
    std::vector<FeatureMeta> schema;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start]))) ++start;
        line.erase(0, start);
        if (line.empty()) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw ConfigError("schema line '" + line + "' is not name:kind");
        }
        FeatureMeta meta;
        meta.name = line.substr(0, colon);
        std::string kind = line.substr(colon + 1);
        if (kind == "continuous") {
            meta.kind = FeatureKind::continuous;
        } else if (kind == "categorical") {
            meta.kind = FeatureKind::categorical;
        } else {
            throw ConfigError("unknown feature kind '" + kind + "' for " + meta.name);
        }
        meta.index = static_cast<int>(schema.size());
        schema.push_back(std::move(meta));
    }
    if (schema.empty()) throw ConfigError("schema file " + path + " defines no features");
    return schema;
}

void write_csv(const Dataset& data, std::ostream& out) {
    for (std::size_t r = 0; r < data.n_records; ++r) {
        for (std::size_t f = 0; f < data.n_features(); ++f) {
            if (data.kind(f) == FeatureKind::continuous) {
                out << format_double(data.value(f, r));
            } else {
                out << data.category_text(f, r);
            }
            out << ',';
        }
        out << data.labels[r] << '\n';
    }
}

void write_csv_file(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write " + path);
    write_csv(data, out);
}

Dataset subset_rows(const Dataset& data, std::span<const int> rows) {
    Dataset out;
    out.schema = data.schema;
    out.scheme = data.scheme;
    out.n_records = rows.size();
    out.columns.resize(data.columns.size());
    for (std::size_t f = 0; f < data.columns.size(); ++f) {
        const Column& src = data.columns[f];
        Column& dst = out.columns[f];
        dst.kind = src.kind;
        dst.categories = src.categories;
        if (src.kind == FeatureKind::continuous) {
            dst.values.reserve(rows.size());
            for (int r : rows) dst.values.push_back(src.values[static_cast<std::size_t>(r)]);
        } else {
            dst.codes.reserve(rows.size());
            for (int r : rows) dst.codes.push_back(src.codes[static_cast<std::size_t>(r)]);
        }
    }
    out.labels.reserve(rows.size());
    out.classes.reserve(rows.size());
    for (int r : rows) {
        out.labels.push_back(data.labels[static_cast<std::size_t>(r)]);
        out.classes.push_back(data.classes[static_cast<std::size_t>(r)]);
    }
    return out;
}

Dataset stratified_sample(const Dataset& data, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw EmptyInputError("sample size must be positive");
    if (n > data.n_records) {
        throw SizeError("sample size " + std::to_string(n) + " exceeds record count " +
                        std::to_string(data.n_records));
    }

    const int n_classes = data.scheme.n_classes();
    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(n_classes));
    for (std::size_t r = 0; r < data.n_records; ++r) {
        by_class[static_cast<std::size_t>(data.classes[r])].push_back(static_cast<int>(r));
    }

    // Largest-remainder allocation keeps every class within one record of
    // its proportional share.
    std::vector<std::size_t> take(static_cast<std::size_t>(n_classes), 0);
    std::vector<std::pair<double, int>> remainders;
    std::size_t assigned = 0;
    for (int c = 0; c < n_classes; ++c) {
        const double share = static_cast<double>(n) * static_cast<double>(by_class[c].size()) /
                             static_cast<double>(data.n_records);
        take[c] = static_cast<std::size_t>(std::floor(share));
        assigned += take[c];
        remainders.emplace_back(share - std::floor(share), c);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
    });
    for (std::size_t i = 0; assigned < n; ++i) {
        const int c = remainders[i % remainders.size()].second;
        if (take[c] < by_class[c].size()) {
            ++take[c];
            ++assigned;
        }
    }

    std::vector<int> selected;
    selected.reserve(n);
    for (int c = 0; c < n_classes; ++c) {
        auto rows = by_class[c];
        Rng rng(derive_seed(seed, SeedRole::sample, static_cast<std::uint64_t>(c)));
        rng.shuffle(rows);
        selected.insert(selected.end(), rows.begin(), rows.begin() + static_cast<long>(take[c]));
    }
    std::sort(selected.begin(), selected.end());
    return subset_rows(data, selected);
}

Eigen::MatrixXd encode_numeric(const Dataset& data) {
    Eigen::MatrixXd X(static_cast<long>(data.n_records), static_cast<long>(data.n_features()));
    for (std::size_t f = 0; f < data.n_features(); ++f) {
        for (std::size_t r = 0; r < data.n_records; ++r) {
            X(static_cast<long>(r), static_cast<long>(f)) = data.numeric(f, r);
        }
    }
    return X;
}

void MinMaxScaler::fit(const Eigen::MatrixXd& X, std::span<const int> rows) {
    const long m = X.cols();
    lo = Eigen::VectorXd::Zero(m);
    width = Eigen::VectorXd::Zero(m);
    if (rows.empty()) return;
    Eigen::VectorXd hi(m);
    for (long f = 0; f < m; ++f) {
        double mn = X(rows[0], f), mx = X(rows[0], f);
        for (int r : rows) {
            mn = std::min(mn, X(r, f));
            mx = std::max(mx, X(r, f));
        }
        lo(f) = mn;
        width(f) = mx - mn;
    }
}

Eigen::RowVectorXd MinMaxScaler::transform_row(const Eigen::RowVectorXd& row) const {
    Eigen::RowVectorXd out(row.size());
    for (long f = 0; f < row.size(); ++f) {
        out(f) = width(f) > 0.0 ? (row(f) - lo(f)) / width(f) : 0.0;
    }
    return out;
}

Eigen::MatrixXd MinMaxScaler::transform(const Eigen::MatrixXd& X) const {
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (long r = 0; r < X.rows(); ++r) out.row(r) = transform_row(X.row(r));
    return out;
}

NumericEncoding numeric_encode(const Dataset& data) {
    NumericEncoding enc;
    enc.raw = encode_numeric(data);
    std::vector<int> all(data.n_records);
    std::iota(all.begin(), all.end(), 0);
    enc.scaler.fit(enc.raw, all);
    enc.normalized = enc.scaler.transform(enc.raw);
    enc.labels = data.classes;
    return enc;
}

} // namespace netgauntlet
