#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <string>
#include <vector>

#include "support/cli_harness.hpp"

namespace {

cli_harness::Paths paths() {
    return {CLI_BIN_PATH, GOLDEN_DIR, DATA_DIR, TEST_TMP_DIR};
}

// every subcommand in both formats; file names double as golden names
const std::vector<std::pair<std::string, std::string>>& golden_cases() {
    static const std::vector<std::pair<std::string, std::string>> cases = {
        {"eval_a2.csv", "eval --order 2 --index 3 --resolution 2 --format csv"},
        {"eval_a2.json", "eval --order 2 --index 3 --resolution 2 --format json"},
        {"kernel_a3.csv", "kernel --order 3 --n 3 --format csv"},
        {"kernel_a3.json", "kernel --order 3 --n 3 --format json"},
        {"lebesgue_a2.csv", "lebesgue --order 2 --n 5 --format csv"},
        {"lebesgue_a2.json", "lebesgue --order 2 --n 5 --format json"},
        {"lemma_a2.csv", "lemma --order 2 --k-max 4 --format csv"},
        {"lemma_a2.json", "lemma --order 2 --k-max 4 --format json"},
        {"forward_a2.csv", std::string("transform --order 2 --input ") + DATA_DIR +
                               "/step_a2n2.csv --format csv"},
        {"forward_a2.json", std::string("transform --order 2 --input ") + DATA_DIR +
                                "/step_a2n2.json --format json"},
        {"inverse_a2.csv", std::string("transform --order 2 --inverse --resolution 2 --input ") +
                               DATA_DIR + "/spectrum_a2.csv --format csv"},
        {"inverse_a2.json", std::string("transform --order 2 --inverse --resolution 2 --input ") +
                                DATA_DIR + "/spectrum_a2.json --format json"},
        {"greedy_a2.csv", std::string("greedy --coeffs ") + DATA_DIR +
                              "/coeffs_greedy_a2.csv --m 2 --resolution 2 --format csv"},
        {"greedy_a2.json", std::string("greedy --coeffs ") + DATA_DIR +
                               "/coeffs_greedy_a2.json --m 2 --resolution 2 --format json"},
        {"gap_a2.csv", "gap --order 2 --k 2 --format csv"},
        {"gap_a2.json", "gap --order 2 --k 2 --format json"},
        {"coeffs_a2.csv", "coeffs --order 2 --max-index 16 --format csv"},
        {"coeffs_a2.json", "coeffs --order 2 --max-index 16 --format json"},
        {"norms_a2.csv", "norms --order 2 --blocks 2 --format csv"},
        {"norms_a2.json", "norms --order 2 --blocks 2 --format json"},
    };
    return cases;
}

} // namespace

TEST_CASE("golden outputs for every subcommand") {
    const auto p = paths();
    for (const auto& [name, args] : golden_cases()) {
        INFO(name);
        const std::string diff = cli_harness::check_golden(p, name, args);
        CHECK(diff.empty());
        if (!diff.empty()) UNSCOPED_INFO(diff);
    }
}

TEST_CASE("verification commands succeed across orders") {
    const auto p = paths();
    CHECK(cli_harness::run(p.cli, "lemma --order 2 --k-max 8") == 0);
    CHECK(cli_harness::run(p.cli, "lemma --order 3 --k-max 6") == 0);
    CHECK(cli_harness::run(p.cli, "gap --order 2 --k 3") == 0);
    CHECK(cli_harness::run(p.cli, "gap --order 3 --k 2") == 0);
    CHECK(cli_harness::run(p.cli, "norms --order 3 --blocks 2") == 0);
}

TEST_CASE("lebesgue accepts a list of indices from a file") {
    const auto p = paths();
    const std::string list = p.tmp + "/n_list.txt";
    {
        std::ofstream out(list);
        out << "1\n2\n5\n21\n";
    }
    const std::string out_path = p.tmp + "/lebesgue_list.csv";
    REQUIRE(cli_harness::run(p.cli, "lebesgue --order 2 --n-list " + list + " --output " +
                                        out_path) == 0);
    const std::string text = cli_harness::read_file(out_path);
    CHECK(text.find("1,0,1,") != std::string::npos);    // L_1 = 1
    CHECK(text.find("5,3,1.75,") != std::string::npos); // L_5 = 1.75
    CHECK(text.find("21,5,2.4375,") != std::string::npos);
}

TEST_CASE("kernel accepts an explicit finer resolution") {
    const auto p = paths();
    const std::string out_path = p.tmp + "/kernel_res.csv";
    REQUIRE(cli_harness::run(p.cli, "kernel --order 2 --n 2 --resolution 2 --output " +
                                        out_path) == 0);
    const std::string text = cli_harness::read_file(out_path);
    CHECK(text.find("order,resolution,n\n2,2,2\n") != std::string::npos);
}

TEST_CASE("a tampered bound exits with code 1") {
    const auto p = paths();
    CHECK(cli_harness::run(p.cli, "lemma --order 2 --k-max 3 --bound-scale 10") == 1);
    CHECK(cli_harness::run(p.cli, "gap --order 2 --k 3 --bound-scale 10") == 1);
}

TEST_CASE("usage and validation errors exit with code 2") {
    const auto p = paths();
    CHECK(cli_harness::run(p.cli, "frobnicate") == 2);
    CHECK(cli_harness::run(p.cli, "eval --order 2 --index 1") == 2);       // missing resolution
    CHECK(cli_harness::run(p.cli, "eval --order 17 --index 1 --resolution 2") == 2);
    CHECK(cli_harness::run(p.cli, "kernel --order 2 --n 0") == 2);
    CHECK(cli_harness::run(p.cli, "kernel --order 2 --n 100 --cell-cap 16") == 2);
    CHECK(cli_harness::run(p.cli, "eval --order 2 --index 9 --resolution 2") == 2); // psi_9 needs N>=4
    CHECK(cli_harness::run(p.cli, "lebesgue --order 2") == 2); // neither --n nor --n-list
    CHECK(cli_harness::run(p.cli, std::string("transform --order 3 --input ") + DATA_DIR +
                                      "/step_a2n2.csv") == 2); // order mismatch
    CHECK(cli_harness::run(p.cli, "transform --order 2 --input /nonexistent.csv") == 2);
    CHECK(cli_harness::run(p.cli, "gap --order 2 --k 1") == 2);
    CHECK(cli_harness::run(p.cli, "--help") == 0);
}

TEST_CASE("files written by the cli read back through it") {
    const auto p = paths();
    const std::string eval_out = p.tmp + "/roundtrip_step.csv";
    REQUIRE(cli_harness::run(p.cli, "eval --order 3 --index 5 --resolution 3 --output " +
                                        eval_out) == 0);
    // feed the written function straight back in as transform input
    CHECK(cli_harness::run(p.cli, "transform --order 3 --input " + eval_out + " --output " +
                                      p.tmp + "/roundtrip_spec.csv") == 0);
}
