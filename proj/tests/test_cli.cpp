// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "exabs/cli.hpp"

namespace exabs::cli {
namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

using Row = std::vector<std::string>;

std::vector<Row> parse_csv(const std::string &text) {
    std::vector<Row> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        Row row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            row.push_back(cell);
        }
        rows.push_back(row);
    }
    return rows;
}

std::size_t column(const Row &header, const std::string &name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return i;
        }
    }
    ADD_FAILURE() << "missing column " << name;
    return 0;
}

std::string temp_file(const std::string &name, const std::string &contents) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream(path) << contents;
    return path.string();
}

TEST(RatioScan, MatchesClosedFormForBothStatistics) {
    const Result r = invoke({"ratio-scan", "--n_points", "512"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 9u);
    const Row &h = rows[0];
    EXPECT_EQ(h, (Row{"overlap_sq", "statistics", "p_two", "p_fac", "ratio", "ratio_eq13", "regime",
                      "status"}));
    const double boson[] = {1.0, 0.8, 2.0 / 3.0, 4.0 / 7.0};
    const double fermion[] = {1.0, 4.0 / 3.0, 2.0, 4.0};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(rows[1 + i][column(h, "statistics")], "boson");
        EXPECT_NEAR(std::stod(rows[1 + i][column(h, "ratio")]), boson[i], 1e-6);
        EXPECT_EQ(rows[1 + i][column(h, "regime")], "crossed-negligible");
        EXPECT_EQ(rows[5 + i][column(h, "statistics")], "fermion");
        EXPECT_NEAR(std::stod(rows[5 + i][column(h, "ratio")]), fermion[i], 1e-6);
    }
}

TEST(RatioScan, FermionUnitOverlapRowIsKept) {
    const Result r = invoke({"ratio-scan", "--stats", "fermion", "--x_values", "0.5,1"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[1][column(rows[0], "status")], "ok");
    EXPECT_EQ(rows[2][column(rows[0], "status")], "PauliViolation");
}

TEST(RatioScan, JsonOutput) {
    const Result r = invoke({"ratio-scan", "--format", "json", "--x_values", "0.25", "--stats", "boson"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 1u);
    EXPECT_NEAR(j[0]["ratio"].get<double>(), 0.8, 1e-6);
}

TEST(RatioScan, InvalidOverlapIsConfigError) {
    const Result r = invoke({"ratio-scan", "--x_values", "1.5"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("InvalidArgument"), std::string::npos);
}

TEST(OracleCheck, SmallSuitePassesForAnySeed) {
    for (const char *seed : {"1", "12345"}) {
        const Result r = invoke({"oracle-check", "--instances", "5", "--seed", seed});
        EXPECT_EQ(r.code, 0) << r.err;
        EXPECT_NE(r.err.find("10/10"), std::string::npos) << r.err;
    }
    const Result a = invoke({"oracle-check", "--instances", "2", "--seed", "1"});
    const Result b = invoke({"oracle-check", "--instances", "2", "--seed", "2"});
    EXPECT_NE(a.out, b.out);
}

TEST(OracleCheck, JsonReportRecordsSeed) {
    const Result r = invoke({"oracle-check", "--instances", "2", "--format", "json", "--seed", "77"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["seed"].get<std::uint64_t>(), 77u);
    EXPECT_EQ(j["status"], "PASS");
    EXPECT_EQ(j["instances"].size(), 4u);
}

TEST(OracleCheck, OversizedGridIsRefused) {
    const Result r = invoke({"oracle-check", "--n_points", "256"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("TooLarge"), std::string::npos);
}

TEST(Experiment, ZeroDelayBosonRowUsesEqualStatePath) {
    const Result r = invoke({"experiment", "--shots", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    const Row &h = rows[0];
    EXPECT_EQ(h, (Row{"delay", "overlap_sq", "p_analytic", "detected", "shots", "regime", "status"}));
    EXPECT_EQ(rows[1][column(h, "status")], "equal-state");
    double previous = 2.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double x = std::stod(rows[i][column(h, "overlap_sq")]);
        EXPECT_LE(x, previous);
        previous = x;
    }
}

TEST(Experiment, RepeatRunsAreByteIdentical) {
    const auto dir = std::filesystem::temp_directory_path();
    const std::string a = (dir / "exabs_exp_a.csv").string();
    const std::string b = (dir / "exabs_exp_b.csv").string();
    ASSERT_EQ(invoke({"experiment", "--seed", "42", "--out", a}).code, 0);
    ASSERT_EQ(invoke({"experiment", "--seed", "42", "--out", b}).code, 0);
    const auto slurp = [](const std::string &p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    EXPECT_FALSE(slurp(a).empty());
    EXPECT_EQ(slurp(a), slurp(b));
}

TEST(Thermal, RubidiumRowAndScaling) {
    const Result r = invoke({"thermal", "--temperatures", "1e-6,2e-6,4e-6"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rows = parse_csv(r.out);
    const Row &h = rows[0];
    const std::size_t lam = column(h, "lambda_T");
    EXPECT_NEAR(std::stod(rows[1][lam]) / 1.87e-7, 1.0, 5e-3);
    for (std::size_t i = 2; i < rows.size(); ++i) {
        EXPECT_NEAR(std::stod(rows[i][lam]) / std::stod(rows[i - 1][lam]), 1.0 / std::sqrt(2.0), 1e-12);
    }
    const Row &hot = rows.back();
    EXPECT_NEAR(std::stod(hot[column(h, "ratio_boson")]), 1.0, 1e-6);
    EXPECT_NEAR(std::stod(hot[column(h, "ratio_fermion")]), 1.0, 1e-6);
}

TEST(Thermal, NonpositiveTemperatureIsConfigError) {
    const Result r = invoke({"thermal", "--temperatures", "1e-6,-1"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("NonpositiveTemperature"), std::string::npos);
}

TEST(Config, UnknownKeyIsRejected) {
    const std::string path = temp_file("exabs_bad.cfg", "theta = 0.3\nbogus_key = 1\n");
    const Result r = invoke({"ratio-scan", "--config", path});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bogus_key"), std::string::npos);
}

TEST(Config, MalformedLineIsRejected) {
    const std::string path = temp_file("exabs_malformed.cfg", "theta 0.3\n");
    EXPECT_EQ(invoke({"ratio-scan", "--config", path}).code, 2);
}

TEST(Config, FlagOverridesFileValue) {
    const std::string path =
        temp_file("exabs_amp.cfg", "# comment\ntheta = 0.2\ncenter_phi = -3\ncenter_psi = 3\n");
    const Result from_file = invoke({"amplitude", "--config", path, "--format", "json"});
    const Result overridden =
        invoke({"amplitude", "--config", path, "--theta", "0.6", "--format", "json"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    ASSERT_EQ(overridden.code, 0) << overridden.err;
    const auto a = nlohmann::json::parse(from_file.out);
    const auto b = nlohmann::json::parse(overridden.out);
    // Far-separated recoil finals: m_direct = i sin(theta) cos(theta).
    EXPECT_NEAR(a["m_direct"]["im"].get<double>(), std::sin(0.2) * std::cos(0.2), 1e-9);
    EXPECT_NEAR(b["m_direct"]["im"].get<double>(), std::sin(0.6) * std::cos(0.6), 1e-9);
}

TEST(Config, MissingFileIsConfigError) {
    EXPECT_EQ(invoke({"thermal", "--config", "/nonexistent/exabs.cfg"}).code, 2);
}

TEST(Amplitude, JsonCarriesDecomposition) {
    const Result r = invoke({"amplitude", "--format", "json", "--stats", "fermion"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    for (const char *key : {"m_direct", "m_crossed", "m_total", "p_two", "p_fac", "interference",
                            "overlap_sq", "norm_factor", "decomposition_residual"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["statistics"], "fermion");
    EXPECT_LT(std::abs(j["decomposition_residual"].get<double>()), 1e-12);
}

TEST(Amplitude, FermionEqualPacketsIsDomainError) {
    const Result r = invoke({"amplitude", "--stats", "fermion", "--center_phi", "0", "--center_psi", "0"});
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("PauliViolation"), std::string::npos);
}

TEST(Arguments, UnknownFlagAndMissingSubcommand) {
    EXPECT_EQ(invoke({"ratio-scan", "--nope", "1"}).code, 2);
    EXPECT_EQ(invoke({}).code, 2);
    EXPECT_EQ(invoke({"ratio-scan", "--format", "xml"}).code, 2);
}

TEST(ExitCodes, Classification) {
    EXPECT_EQ(exit_code_for(ErrorKind::TooLarge), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::NonpositiveTemperature), 2);
    EXPECT_EQ(exit_code_for(ErrorKind::PauliViolation), 3);
    EXPECT_EQ(exit_code_for(ErrorKind::DegenerateBaseline), 3);
}

} // namespace
} // namespace exabs::cli
