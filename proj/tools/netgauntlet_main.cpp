#include <CLI11.hpp>

#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include "netgauntlet/errors.hpp"
#include "netgauntlet/run.hpp"

using netgauntlet::RunConfig;

namespace {

// Registers the shared flag set on one subcommand, binding into cfg. CLI11
// only assigns bound variables when a flag is actually passed, which gives
// the documented precedence: flags > config file > defaults.
void add_common_options(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--data", cfg.data, "input CSV of connection records");
    cmd->add_option("--schema", cfg.schema, "'kdd99' or a name:kind schema file");
    cmd->add_option("--label-mode", cfg.label_mode, "binary | category5");
    cmd->add_option("--sample", cfg.sample, "stratified subsample size (0 = all records)");
    cmd->add_option("--corr-threshold", cfg.corr_threshold,
                    "stage-1 redundancy cutoff on |Pearson r|");
    cmd->add_option("--mi-threshold", cfg.mi_threshold,
                    "stage-2 relevance cutoff on MI with the label (bits)");
    cmd->add_option("--bins", cfg.bins, "bins for discretizing continuous features");
    cmd->add_option("--bin-strategy", cfg.bin_strategy, "width | freq");
    cmd->add_option("--classifier", cfg.classifier, "id3 | cart | random_forest | mlp | all");
    cmd->add_option("--k", cfg.k, "cross-validation fold count");
    cmd->add_option("--seed", cfg.seed, "master seed; every sub-seed derives from it");
    cmd->add_option("--jobs", cfg.jobs, "worker thread bound (1 = sequential)");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_flag("--paper-literal-accuracy", cfg.literal_accuracy,
                  "also report the literal TP/total accuracy variant");
    cmd->add_flag("--header", cfg.header, "input file starts with a header line");
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    if (const char* env = std::getenv("NETGAUNTLET_CONFIG")) {
        try {
            cfg = netgauntlet::load_run_config_file(env, std::move(cfg));
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        }
    }

    CLI::App app{"netgauntlet: two-stage feature selection and classic classifiers "
                 "for KDD99-format intrusion detection data"};
    app.require_subcommand(1);

    CLI::App* select = app.add_subcommand("select", "run the two-stage feature filter");
    add_common_options(select, cfg);

    CLI::App* train = app.add_subcommand("train", "train one classifier on a full dataset");
    add_common_options(train, cfg);

    CLI::App* predict = app.add_subcommand("predict", "apply a saved model to a dataset");
    predict->add_option("model", cfg.model, "trained .model.json file")->required();
    add_common_options(predict, cfg);

    CLI::App* evaluate =
        app.add_subcommand("evaluate", "stratified k-fold evaluation of the classifiers");
    evaluate->add_flag("--compare", cfg.compare,
                       "also evaluate without feature selection and emit the comparison");
    add_common_options(evaluate, cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (select->parsed()) return netgauntlet::cmd_select(cfg);
        if (train->parsed()) return netgauntlet::cmd_train(cfg);
        if (predict->parsed()) return netgauntlet::cmd_predict(cfg);
        return netgauntlet::cmd_evaluate(cfg);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return netgauntlet::exit_code_for(e);
    }
}
