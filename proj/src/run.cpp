#include "netgauntlet/run.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <sstream>
#include <vector>

#include "netgauntlet/cv.hpp"
#include "netgauntlet/errors.hpp"
#include "netgauntlet/kdd99.hpp"
#include "netgauntlet/rng.hpp"
#include "netgauntlet/selection.hpp"

namespace fs = std::filesystem;

namespace netgauntlet {

namespace {

BinningSpec binning_from(const RunConfig& cfg) {
    BinningSpec spec;
    spec.n_bins = cfg.bins;
    spec.strategy = cfg.bin_strategy == "freq" ? BinStrategy::equal_frequency
                                               : BinStrategy::equal_width;
    return spec;
}

TrainConfig make_train_config(const RunConfig& cfg, ClassifierKind kind) {
    TrainConfig tc = cfg.train;
    tc.kind = kind;
    tc.seed = cfg.seed;
    tc.jobs = cfg.jobs;
    tc.id3_binning = binning_from(cfg);
    tc.validate();
    return tc;
}

std::string fmt(double v) {
    std::ostringstream s;
    s << std::setprecision(17) << v;
    return s.str();
}

nlohmann::json parse_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw DataError(std::string(what) + " unreadable: " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string(what) + " is not valid JSON: " + path + ": " + e.what());
    }
}

// Config as recorded inside result files. Worker count and output directory
// never change results, so they are omitted to keep repeated runs comparable
// byte for byte.
nlohmann::json recorded_config(const RunConfig& cfg) {
    nlohmann::json j = cfg.to_json();
    j.erase("jobs");
    j.erase("out");
    return j;
}

std::string config_comment(const RunConfig& cfg) {
    return "# config " + recorded_config(cfg).dump() + "\n";
}

void write_json_file(const RunConfig& cfg, const fs::path& path, const char* key,
                     nlohmann::json payload) {
    nlohmann::json j{{"config", recorded_config(cfg)}, {key, std::move(payload)}};
    write_text_file(path.string(), j.dump(2) + "\n");
}

std::string metrics_csv_row(const std::string& first, const MetricsReport& m,
                            bool include_literal) {
    std::string line = first + "," + fmt(m.accuracy);
    if (include_literal) line += "," + fmt(m.accuracy_literal);
    line += "," + fmt(m.precision) + "," + fmt(m.recall) + "," + fmt(m.error_rate) + "," +
            fmt(m.detection_rate) + "," + fmt(m.false_alarm_rate) + "," +
            (m.auc_defined ? fmt(m.auc) : std::string("nan")) + "," + fmt(m.build_seconds);
    return line + "\n";
}

} // namespace

void RunConfig::validate() const {
    if (!(corr_threshold > 0.0 && corr_threshold <= 1.0)) {
        throw ConfigError("corr-threshold must be in (0, 1]");
    }
    if (mi_threshold < 0.0) throw ConfigError("mi-threshold must be >= 0");
    if (bins < 2) throw ConfigError("bins must be >= 2");
    if (bin_strategy != "width" && bin_strategy != "freq") {
        throw ConfigError("bin-strategy must be width or freq");
    }
    if (label_mode != "binary" && label_mode != "category5") {
        throw ConfigError("label-mode must be binary or category5");
    }
    if (classifier != "all") classifier_kind_from_string(classifier);
    if (k < 2) throw ConfigError("k must be >= 2");
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    if (out.empty()) throw ConfigError("output directory must not be empty");
}

nlohmann::json RunConfig::to_json() const {
    nlohmann::json train_j{{"max_depth", train.max_depth},
                           {"min_samples_leaf", train.min_samples_leaf},
                           {"n_trees", train.n_trees},
                           {"n_features_per_split", train.n_features_per_split},
                           {"bootstrap", train.bootstrap},
                           {"hidden_units", train.hidden_units},
                           {"learning_rate", train.learning_rate},
                           {"epochs", train.epochs},
                           {"batch_size", train.batch_size}};
    return nlohmann::json{{"data", data},
                          {"schema", schema},
                          {"label_mode", label_mode},
                          {"sample", sample},
                          {"corr_threshold", corr_threshold},
                          {"mi_threshold", mi_threshold},
                          {"bins", bins},
                          {"bin_strategy", bin_strategy},
                          {"classifier", classifier},
                          {"compare", compare},
                          {"k", k},
                          {"seed", seed},
                          {"jobs", jobs},
                          {"out", out},
                          {"paper_literal_accuracy", literal_accuracy},
                          {"header", header},
                          {"model", model},
                          {"train", std::move(train_j)}};
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "data") base.data = value.get<std::string>();
            else if (key == "schema") base.schema = value.get<std::string>();
            else if (key == "label_mode") base.label_mode = value.get<std::string>();
            else if (key == "sample") base.sample = value.get<std::size_t>();
            else if (key == "corr_threshold") base.corr_threshold = value.get<double>();
            else if (key == "mi_threshold") base.mi_threshold = value.get<double>();
            else if (key == "bins") base.bins = value.get<int>();
            else if (key == "bin_strategy") base.bin_strategy = value.get<std::string>();
            else if (key == "classifier") base.classifier = value.get<std::string>();
            else if (key == "compare") base.compare = value.get<bool>();
            else if (key == "k") base.k = value.get<int>();
            else if (key == "seed") base.seed = value.get<std::uint64_t>();
            else if (key == "jobs") base.jobs = value.get<int>();
            else if (key == "out") base.out = value.get<std::string>();
            else if (key == "paper_literal_accuracy") base.literal_accuracy = value.get<bool>();
            else if (key == "header") base.header = value.get<bool>();
            else if (key == "model") base.model = value.get<std::string>();
            else if (key == "train") {
                if (!value.is_object()) throw ConfigError("train must be a JSON object");
                for (const auto& [tk, tv] : value.items()) {
                    if (tk == "max_depth") base.train.max_depth = tv.get<int>();
                    else if (tk == "min_samples_leaf") base.train.min_samples_leaf = tv.get<int>();
                    else if (tk == "n_trees") base.train.n_trees = tv.get<int>();
                    else if (tk == "n_features_per_split") {
                        base.train.n_features_per_split = tv.get<int>();
                    } else if (tk == "bootstrap") base.train.bootstrap = tv.get<bool>();
                    else if (tk == "hidden_units") base.train.hidden_units = tv.get<int>();
                    else if (tk == "learning_rate") base.train.learning_rate = tv.get<double>();
                    else if (tk == "epochs") base.train.epochs = tv.get<int>();
                    else if (tk == "batch_size") base.train.batch_size = tv.get<int>();
                    else throw ConfigError("unknown train config key: " + tk);
                }
            } else {
                throw ConfigError("unknown config key: " + key);
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config value type: ") + e.what());
    }
    return base;
}

RunConfig load_run_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config file unreadable: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file is not valid JSON: " + path + ": " + e.what());
    }
    return run_config_from_json(j, std::move(base));
}

LabelScheme scheme_for(const RunConfig& cfg) {
    return cfg.label_mode == "binary" ? LabelScheme::binary()
                                      : kdd99::scheme(LabelMode::category5);
}

Dataset load_input(const RunConfig& cfg) {
    if (cfg.data.empty()) throw ConfigError("--data is required");
    if (!fs::exists(cfg.data)) throw ConfigError("data file not found: " + cfg.data);
    std::vector<FeatureMeta> schema;
    if (cfg.schema == "kdd99") {
        schema = kdd99::schema();
    } else {
        if (!fs::exists(cfg.schema)) throw ConfigError("schema file not found: " + cfg.schema);
        schema = load_schema_file(cfg.schema);
    }
    LoadOptions options;
    options.skip_header = cfg.header;
    Dataset data = load_csv(cfg.data, schema, scheme_for(cfg), options);
    if (cfg.sample > 0 && cfg.sample < data.n_records) {
        data = stratified_sample(data, cfg.sample, derive_seed(cfg.seed, SeedRole::sample));
    }
    return data;
}

std::vector<ClassifierKind> classifiers_for(const RunConfig& cfg) {
    if (cfg.classifier == "all") {
        return {ClassifierKind::id3, ClassifierKind::cart, ClassifierKind::random_forest,
                ClassifierKind::mlp};
    }
    return {classifier_kind_from_string(cfg.classifier)};
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot open for writing: " + tmp);
        out << content;
        out.flush();
        if (!out) throw DataError("write failed: " + tmp);
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw DataError("cannot move output into place: " + path);
    }
}

int cmd_select(const RunConfig& cfg) {
    cfg.validate();
    Dataset data = load_input(cfg);
    SelectionConfig sc{cfg.corr_threshold, cfg.mi_threshold, binning_from(cfg), cfg.jobs};
    SelectionReport report = run_selection(data, sc);

    fs::create_directories(cfg.out);
    write_json_file(cfg, fs::path(cfg.out) / "selection.json", "selection", report.to_json());

    report.print_table(std::cout);
    std::cout << "features: " << data.n_features() << " -> " << report.stage1_kept.size()
              << " -> " << report.kept.size() << "\n";
    return 0;
}

int cmd_train(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.classifier == "all") {
        throw ConfigError("train needs a single --classifier, not 'all'");
    }
    ClassifierKind kind = classifier_kind_from_string(cfg.classifier);
    Dataset data = load_input(cfg);
    TrainConfig tc = make_train_config(cfg, kind);
    std::vector<int> rows = all_rows(data);
    std::vector<int> features = all_features(data);
    std::unique_ptr<Model> model = train_model(data, rows, features, tc);

    fs::create_directories(cfg.out);
    fs::path path = fs::path(cfg.out) / (to_string(kind) + ".model.json");
    write_json_file(cfg, path, "model", model->to_json());
    std::cout << "trained " << to_string(kind) << " on " << data.n_records << " records -> "
              << path.string() << "\n";
    return 0;
}

int cmd_predict(const RunConfig& cfg) {
    cfg.validate();
    if (cfg.model.empty()) throw ConfigError("predict needs a model file");
    if (!fs::exists(cfg.model)) throw ConfigError("model file not found: " + cfg.model);
    nlohmann::json mj = parse_json_file(cfg.model, "model file");
    std::unique_ptr<Model> model = model_from_json(mj.contains("model") ? mj.at("model") : mj);

    Dataset data = load_input(cfg);
    Recode recode = model->make_recode(data);

    std::string csv = config_comment(cfg);
    csv += "record,predicted,score\n";
    for (std::size_t r = 0; r < data.n_records; ++r) {
        Prediction p = model->predict(recode, static_cast<int>(r));
        csv += std::to_string(r) + "," + model->class_names().at(static_cast<std::size_t>(p.cls)) +
               "," + fmt(attack_score(p)) + "\n";
    }
    fs::create_directories(cfg.out);
    fs::path path = fs::path(cfg.out) / "predictions.csv";
    write_text_file(path.string(), csv);
    std::cout << "predicted " << data.n_records << " records -> " << path.string() << "\n";
    return 0;
}

int cmd_evaluate(const RunConfig& cfg) {
    cfg.validate();
    Dataset data = load_input(cfg);
    FoldPlan plan = make_fold_plan(data, cfg.k, derive_seed(cfg.seed, SeedRole::folds));
    SelectionConfig sc{cfg.corr_threshold, cfg.mi_threshold, binning_from(cfg), cfg.jobs};
    SelectionReport selection = run_selection(data, sc);

    fs::create_directories(cfg.out);
    const fs::path out_dir(cfg.out);
    write_json_file(cfg, out_dir / "selection.json", "selection", selection.to_json());
    const bool lit = cfg.literal_accuracy;

    std::vector<ComparisonRow> comparison;
    nlohmann::json metrics_rows = nlohmann::json::array();
    std::string metrics_csv = config_comment(cfg);
    metrics_csv += std::string("classifier,accuracy") + (lit ? ",accuracy_literal" : "") +
                   ",precision,recall,error,dr,far,auc,build_seconds\n";

    for (ClassifierKind kind : classifiers_for(cfg)) {
        TrainConfig tc = make_train_config(cfg, kind);
        CvResult with_sel = cross_validate(data, &selection, tc, plan);
        const std::string base = "cv_" + to_string(kind);
        write_json_file(cfg, out_dir / (base + "_selection.json"), "result", with_sel.to_json(lit));
        write_text_file((out_dir / (base + "_selection.csv")).string(),
                        config_comment(cfg) + with_sel.to_csv(lit));

        if (cfg.compare) {
            CvResult without_sel = cross_validate(data, nullptr, tc, plan);
            write_json_file(cfg, out_dir / (base + "_no_selection.json"), "result",
                            without_sel.to_json(lit));
            write_text_file((out_dir / (base + "_no_selection.csv")).string(),
                            config_comment(cfg) + without_sel.to_csv(lit));
            comparison.push_back(compare_runs(with_sel, without_sel));
        }

        const MetricsReport& m = with_sel.aggregate;
        metrics_rows.push_back(
            {{"classifier", to_string(kind)}, {"metrics", m.to_json(lit)}});
        metrics_csv += metrics_csv_row(to_string(kind), m, lit);
        std::cout << to_string(kind) << ": accuracy " << std::fixed << std::setprecision(2)
                  << 100.0 * m.accuracy << "%, dr " << std::setprecision(4) << m.detection_rate
                  << ", far " << m.false_alarm_rate << ", auc "
                  << (m.auc_defined ? m.auc : std::numeric_limits<double>::quiet_NaN())
                  << ", build " << std::setprecision(2) << m.build_seconds << "s\n"
                  << std::defaultfloat;
    }

    write_json_file(cfg, out_dir / "metrics.json", "rows", metrics_rows);
    write_text_file((out_dir / "metrics.csv").string(), metrics_csv);

    if (cfg.compare) {
        nlohmann::json rows = nlohmann::json::array();
        for (const ComparisonRow& row : comparison) rows.push_back(row.to_json(lit));
        write_json_file(cfg, out_dir / "comparison.json", "rows", rows);
        write_text_file((out_dir / "comparison.csv").string(),
                        config_comment(cfg) + comparison_csv(comparison));
    }
    return 0;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const TrainingDiverged*>(&e)) return 4;
    if (dynamic_cast<const SchemaError*>(&e)) return 5;
    if (dynamic_cast<const ConfigError*>(&e)) return 2;
    if (dynamic_cast<const DataError*>(&e)) return 3;
    if (dynamic_cast<const Error*>(&e)) return 3;
    return 1;
}

} // namespace netgauntlet
