#include <CLI11.hpp>

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "netgauntlet/dataset.hpp"
#include "netgauntlet/errors.hpp"
#include "netgauntlet/kdd99.hpp"
#include "netgauntlet/run.hpp"
#include "netgauntlet/synth.hpp"

int main(int argc, char** argv) {
    std::size_t n = netgauntlet::kSynthDefaultRecords;
    std::uint64_t seed = netgauntlet::kSynthDefaultSeed;
    std::string out = "synth.csv";
    std::string label_mode = "binary";

    CLI::App app{"kdd_synth: deterministic KDD99-format traffic generator"};
    app.add_option("--n", n, "record count");
    app.add_option("--seed", seed, "generator seed");
    app.add_option("--out", out, "output CSV path");
    app.add_option("--label-mode", label_mode, "binary | category5 (affects only validation)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (label_mode != "binary" && label_mode != "category5") {
            throw netgauntlet::ConfigError("label-mode must be binary or category5");
        }
        netgauntlet::LabelScheme scheme = label_mode == "binary"
                                              ? netgauntlet::LabelScheme::binary()
                                              : netgauntlet::kdd99::scheme(
                                                    netgauntlet::LabelMode::category5);
        netgauntlet::Dataset data = netgauntlet::synth_kdd99(n, seed, scheme);
        netgauntlet::write_csv_file(data, out);
        std::cout << "wrote " << data.n_records << " records (" << data.n_features()
                  << " features) -> " << out << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return netgauntlet::exit_code_for(e);
    }
}
