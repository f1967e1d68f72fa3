#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "helpers.hpp"
#include "netgauntlet/dataset.hpp"
#include "netgauntlet/errors.hpp"
#include "netgauntlet/kdd99.hpp"
#include "netgauntlet/rng.hpp"
#include "netgauntlet/synth.hpp"

using namespace netgauntlet;

namespace {

std::vector<FeatureMeta> mixed_schema() {
    return {{"size", FeatureKind::continuous, 0},
            {"proto", FeatureKind::categorical, 1},
            {"rate", FeatureKind::continuous, 2}};
}

} // namespace

TEST_CASE("load_csv parses values, codes, and canonical labels") {
    Dataset d = testutil::csv_dataset(
        "1.5,tcp,0.25,normal\n"
        "2,udp,0.5,SMURF.\n"
        "3,tcp,0.75,normal.\n",
        mixed_schema(), LabelScheme::binary());

    CHECK(d.n_records == 3);
    CHECK(d.n_features() == 3);
    CHECK(d.value(0, 0) == doctest::Approx(1.5));
    CHECK(d.value(2, 2) == doctest::Approx(0.75));
    // first-appearance interning
    CHECK(d.columns[1].categories == std::vector<std::string>{"tcp", "udp"});
    CHECK(d.code(1, 0) == 0);
    CHECK(d.code(1, 1) == 1);
    CHECK(d.code(1, 2) == 0);
    // canonical labels: lowercased, trailing dot stripped
    CHECK(d.labels == std::vector<std::string>{"normal", "smurf", "normal"});
    CHECK(d.classes == std::vector<int>{0, 1, 0});
}

TEST_CASE("load_csv header handling and failure modes") {
    auto schema = mixed_schema();
    std::string body = "size,proto,rate,label\n1,tcp,0.5,normal\n";
    CHECK_THROWS_AS(testutil::csv_dataset(body, schema, LabelScheme::binary(), false), ParseError);
    Dataset d = testutil::csv_dataset(body, schema, LabelScheme::binary(), true);
    CHECK(d.n_records == 1);

    CHECK_THROWS_AS(testutil::csv_dataset("1,tcp,normal\n", schema, LabelScheme::binary()),
                    ParseError);
    CHECK_THROWS_AS(testutil::csv_dataset("", schema, LabelScheme::binary()), EmptyInputError);
    CHECK_THROWS_AS(load_csv("/nonexistent/path.csv", schema, LabelScheme::binary()), DataError);
}

TEST_CASE("category5 labels map through the attack table") {
    auto scheme = kdd99::scheme(LabelMode::category5);
    Dataset d = testutil::csv_dataset(
        "1,tcp,0.1,normal\n"
        "2,tcp,0.2,smurf\n"
        "3,tcp,0.3,satan\n"
        "4,tcp,0.4,guess_passwd\n"
        "5,tcp,0.5,rootkit\n",
        mixed_schema(), scheme);
    CHECK(d.classes == std::vector<int>{0, 1, 2, 3, 4});
    CHECK(scheme.class_names() ==
          std::vector<std::string>{"normal", "dos", "probe", "r2l", "u2r"});

    CHECK_THROWS_AS(
        testutil::csv_dataset("1,tcp,0.1,unknown_attack\n", mixed_schema(), scheme), LabelError);
}

TEST_CASE("write_csv round-trips exactly") {
    Dataset d = synth_kdd99(300, 11, LabelScheme::binary());
    std::ostringstream out;
    write_csv(d, out);
    Dataset back = testutil::csv_dataset(out.str(), kdd99::schema(), LabelScheme::binary());
    CHECK(datasets_equal(d, back));
}

TEST_CASE("schema file loader") {
    std::string path = testutil::write_temp("schema.txt",
                                            "# comment\n"
                                            "size:continuous\n"
                                            "proto:categorical\n"
                                            "\n"
                                            "rate:continuous\n");
    auto schema = load_schema_file(path);
    REQUIRE(schema.size() == 3);
    CHECK(schema[0].name == "size");
    CHECK(schema[1].kind == FeatureKind::categorical);
    CHECK(schema[2].index == 2);

    std::string bad = testutil::write_temp("bad.txt", "size:integer\n");
    CHECK_THROWS_AS(load_schema_file(bad), ConfigError);
}

TEST_CASE("schema_signature distinguishes kinds and names") {
    Dataset a = testutil::csv_dataset("1,tcp,2,normal\n", mixed_schema(), LabelScheme::binary());
    auto other = mixed_schema();
    other[2].name = "ratio";
    Dataset b = testutil::csv_dataset("1,tcp,2,normal\n", other, LabelScheme::binary());
    CHECK(a.schema_signature() != b.schema_signature());
    CHECK(a.schema_signature() == a.schema_signature());
}

TEST_CASE("stratified_sample keeps proportions and order") {
    Dataset d = synth_kdd99(1000, 3, LabelScheme::binary());
    Dataset s = stratified_sample(d, 200, 99);
    CHECK(s.n_records == 200);

    auto share = [](const Dataset& x, int cls) {
        double c = 0;
        for (int v : x.classes) c += v == cls;
        return c / static_cast<double>(x.n_records);
    };
    for (int cls : {0, 1}) {
        // per-class proportion within one record of proportional
        CHECK(std::abs(share(s, cls) * 200.0 - share(d, cls) * 200.0) <= 1.0);
    }

    // record order preserved: s's label sequence is a subsequence of d's
    std::size_t at = 0;
    for (std::size_t r = 0; r < s.n_records; ++r) {
        while (at < d.n_records && d.labels[at] != s.labels[r]) ++at;
        REQUIRE(at < d.n_records);
        ++at;
    }

    // deterministic
    Dataset s2 = stratified_sample(d, 200, 99);
    CHECK(datasets_equal(s, s2));

    CHECK_THROWS_AS(stratified_sample(d, 2000, 1), SizeError);
}

TEST_CASE("subset_rows picks exactly the requested records") {
    Dataset d = testutil::csv_dataset(
        "1,tcp,0.1,normal\n2,udp,0.2,smurf\n3,icmp,0.3,normal\n4,tcp,0.4,smurf\n",
        mixed_schema(), LabelScheme::binary());
    std::vector<int> rows = {1, 3};
    Dataset s = subset_rows(d, rows);
    CHECK(s.n_records == 2);
    CHECK(s.value(0, 0) == doctest::Approx(2));
    CHECK(s.category_text(1, 0) == "udp");
    CHECK(s.labels == std::vector<std::string>{"smurf", "smurf"});
}

TEST_CASE("numeric encoding and min-max scaling") {
    Dataset d = testutil::csv_dataset(
        "0,tcp,5,normal\n"
        "10,udp,5,smurf\n"
        "5,tcp,5,normal\n",
        mixed_schema(), LabelScheme::binary());
    NumericEncoding enc = numeric_encode(d);
    CHECK(enc.raw.rows() == 3);
    CHECK(enc.raw.cols() == 3);
    CHECK(enc.raw(0, 0) == 0.0);
    CHECK(enc.raw(1, 1) == 1.0); // udp code
    CHECK(enc.labels == std::vector<int>{0, 1, 0});

    // normalized to [0,1]; constant column maps to 0
    CHECK(enc.normalized.minCoeff() >= 0.0);
    CHECK(enc.normalized.maxCoeff() <= 1.0);
    CHECK(enc.normalized(0, 2) == 0.0);
    CHECK(enc.normalized(2, 0) == doctest::Approx(0.5));
}

TEST_CASE("synth generator is deterministic and scheme-consistent") {
    Dataset a = synth_kdd99(500, 7, LabelScheme::binary());
    Dataset b = synth_kdd99(500, 7, LabelScheme::binary());
    CHECK(datasets_equal(a, b));
    CHECK(a.n_features() == 41);

    Dataset c = synth_kdd99(500, 8, LabelScheme::binary());
    CHECK_FALSE(datasets_equal(a, c));

    std::map<std::string, int> counts;
    for (const auto& l : a.labels) counts[l]++;
    CHECK(counts["normal"] == doctest::Approx(500 * 0.197).epsilon(0.02));
    CHECK(counts.count("smurf") == 1);
    CHECK(counts.count("neptune") == 1);

    // category5 labeling works on the same generated traffic
    Dataset e = synth_kdd99(500, 7, kdd99::scheme(LabelMode::category5));
    for (std::size_t r = 0; r < e.n_records; ++r) {
        CHECK(e.classes[r] == (e.labels[r] == "normal" ? 0 : e.classes[r]));
        CHECK(e.classes[r] >= 0);
        CHECK(e.classes[r] <= 4);
    }
}
