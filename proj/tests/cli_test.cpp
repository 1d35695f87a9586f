// Copyright 2026 The bellcompat Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bellcompat_cli.hpp"
#include "gtest/gtest.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct Invocation {
    int code;
    std::string out;
    std::string err;
};

Invocation invoke(const std::vector<std::string> &args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = bellcompat::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

json invoke_json(const std::vector<std::string> &args) {
    const Invocation r = invoke(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return json::parse(r.out);
}

std::filesystem::path temp_path(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("bellcompat_cli_test_" + name);
}

std::string read_file(const std::filesystem::path &p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(CliJm, examples) {
    const json incompatible = invoke_json({"jm", "--axes", "z,x", "--lambda", "0.8"});
    ASSERT_EQ(incompatible["results"].size(), 1u);
    EXPECT_EQ(incompatible["results"][0]["status"], "Incompatible");
    EXPECT_EQ(incompatible["results"][0]["feasibility"]["status"], "Incompatible");

    const json compatible = invoke_json({"jm", "--axes", "z,z", "--lambda", "0.99"});
    EXPECT_EQ(compatible["results"][0]["status"], "Compatible");
    EXPECT_EQ(compatible["results"][0]["feasibility"]["status"], "Compatible");

    const json threshold = invoke_json({"jm", "--axes", "z,x", "--threshold"});
    EXPECT_NEAR(threshold["threshold"].get<double>(), 0.707107, 1e-6);
}

TEST(CliJm, range_reports_threshold_and_rows) {
    const Invocation r = invoke({"jm", "--axes", "z,x", "--lambda-range", "0.5:1:6", "--format", "csv"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    EXPECT_EQ(line, "# threshold=0.707107");
    std::getline(lines, line);
    EXPECT_EQ(line, "lambda,status,margin,feasibility_status,residual");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 6);
}

TEST(CliChsh, examples) {
    const json tsirelson = invoke_json({"chsh", "--canonical", "1.5708,1.5708", "--state", "phi+"});
    EXPECT_NEAR(tsirelson["value"].get<double>(), 2.828427, 1e-6);
    EXPECT_TRUE(tsirelson["violates"].get<bool>());

    // 0.840896 is 2^(-1/4) rounded; 2√2·0.840896² = 1.999998.
    EXPECT_EQ(invoke({"chsh", "--noisy", "0.840896", "--max", "--format", "csv"}).out.substr(0, 38),
              "value,bound,mu,delta,violates\n1.999998");
    const json boundary = invoke_json({"chsh", "--noisy", "0.8408964152537145", "--max"});
    EXPECT_EQ(invoke({"chsh", "--noisy", "0.8408964152537145", "--max", "--format", "csv"}).out.substr(0, 38),
              "value,bound,mu,delta,violates\n2.000000");
    EXPECT_NEAR(boundary["value"].get<double>(), 2.0, 1e-6);
    EXPECT_FALSE(boundary["violates"].get<bool>());

    const json trivial = invoke_json({"chsh", "--canonical", "0,0", "--max"});
    EXPECT_NEAR(trivial["value"].get<double>(), 2.0, 1e-12);
    EXPECT_NEAR(trivial["delta"].get<double>(), 0.0, 1e-12);
}

TEST(CliChsh, full_precision_and_pi_expressions) {
    const json r = invoke_json({"chsh", "--canonical", "pi/2,pi/2", "--state", "phi+", "--precision", "15"});
    EXPECT_NEAR(r["value"].get<double>(), 2.0 * std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(r["bound"].get<double>(), 2.0 * std::sqrt(2.0), 1e-12);
    EXPECT_EQ(r["bound_kind"], "landau");
}

TEST(CliChsh, state_files) {
    const auto vec = temp_path("vector.json");
    std::ofstream(vec) << R"({"vector": {"real": [1, 0, 0, 1], "imag": [0, 0, 0, 0]}})";
    const json from_vector =
        invoke_json({"chsh", "--canonical", "pi/2,pi/2", "--state", "file:" + vec.string(), "--precision", "12"});
    EXPECT_NEAR(from_vector["value"].get<double>(), 2.0 * std::sqrt(2.0), 1e-11);

    const auto dens = temp_path("density.json");
    std::ofstream(dens) << R"({"density": {"real": [[0.25,0,0,0],[0,0.25,0,0],[0,0,0.25,0],[0,0,0,0.25]]}})";
    const json from_density = invoke_json({"chsh", "--canonical", "pi/2,pi/2", "--state", "file:" + dens.string()});
    EXPECT_NEAR(from_density["value"].get<double>(), 0.0, 1e-12);

    const auto bad = temp_path("bad.json");
    std::ofstream(bad) << R"({"density": {"real": [[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]]}})";
    const Invocation r = invoke({"chsh", "--canonical", "pi/2,pi/2", "--state", "file:" + bad.string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(json::parse(r.err)["code"], "InvalidState");
}

TEST(CliRegion, rows_and_header) {
    const json doc = invoke_json({"region", "--e-grid", "0.03:0.5:2", "--delta-grid", "0:1:11"});
    EXPECT_NEAR(doc["entanglement_threshold"].get<double>(), 0.04491, 1e-6);
    ASSERT_EQ(doc["rows"].size(), 22u);
    auto row = [&](double e, double d) {
        for (const auto &r : doc["rows"]) {
            if (std::abs(r["E"].get<double>() - e) < 1e-9 && std::abs(r["Delta"].get<double>() - d) < 1e-9) {
                return r;
            }
        }
        ADD_FAILURE() << "missing row " << e << ", " << d;
        return json();
    };
    EXPECT_NEAR(row(0.5, 1.0)["F1"].get<double>(), 2.828427, 1e-6);
    EXPECT_TRUE(row(0.5, 1.0)["nonlocal"].get<bool>());
    EXPECT_EQ(row(0.5, 0.0)["F1"].get<double>(), 2.0);
    EXPECT_FALSE(row(0.5, 0.0)["nonlocal"].get<bool>());
    EXPECT_FALSE(row(0.03, 1.0)["nonlocal"].get<bool>());
    EXPECT_TRUE(row(0.03, 0.1)["nonlocal"].get<bool>());

    const Invocation csv = invoke({"region", "--e-grid", "0:0.5:3", "--delta-grid", "0:1:2", "--format", "csv"});
    EXPECT_EQ(csv.out,
              "# entanglement_threshold=0.044910\n"
              "E,Delta,F1,nonlocal\n"
              "0.000000,0.000000,2.000000,false\n"
              "0.000000,1.000000,1.414214,false\n"
              "0.250000,0.000000,2.000000,false\n"
              "0.250000,1.000000,2.638958,true\n"
              "0.500000,0.000000,2.000000,false\n"
              "0.500000,1.000000,2.828427,true\n");
}

TEST(CliSample, deterministic_and_close_to_exact) {
    const std::vector<std::string> args{"sample", "--canonical", "pi/2,pi/2", "--state", "phi+", "--shots", "20000",
                                        "--seed", "11"};
    const Invocation first = invoke(args);
    const Invocation second = invoke(args);
    ASSERT_EQ(first.code, 0) << first.err;
    EXPECT_EQ(first.out, second.out);
    const json doc = json::parse(first.out);
    EXPECT_LE(std::abs(doc["estimate"].get<double>() - doc["exact"].get<double>()),
              5.0 * doc["standard_error"].get<double>());
    EXPECT_EQ(doc["correlators"].size(), 4u);
}

TEST(CliVerify, list_and_suites) {
    const Invocation list = invoke({"verify", "--list"});
    EXPECT_EQ(list.code, 0);
    EXPECT_EQ(list.out, "landau\nf1\njm\nwindow\nstationarity\ncorollaries\n");

    const Invocation f1 = invoke({"verify", "f1", "--seed", "7"});
    EXPECT_EQ(f1.code, 0) << f1.out;
    const json doc = json::parse(f1.out);
    EXPECT_TRUE(doc["passed"].get<bool>());
    EXPECT_LE(doc["checks"][0]["deviation"].get<double>(), 1e-6);

    const Invocation landau = invoke({"verify", "landau", "--format", "csv"});
    EXPECT_EQ(landau.code, 0) << landau.out;
    EXPECT_EQ(landau.out.substr(0, landau.out.find('\n')), "suite,check,passed,deviation,tolerance");
}

TEST(CliErrors, usage_errors_exit_two_with_json) {
    for (const std::vector<std::string> &args : std::vector<std::vector<std::string>>{
             {"jm", "--axes", "z,q", "--lambda", "0.5"},
             {"jm", "--axes", "z,x", "--lambda", "1.5"},
             {"jm", "--axes", "z,x"},
             {"chsh", "--canonical", "90deg,90deg", "--max"},
             {"chsh", "--canonical", "1,1"},
             {"region", "--e-grid", "0:0.5:0"},
             {"region", "--e-grid", "0.5:0:3"},
             {"verify", "nope"},
             {"frobnicate"},
             {},
         }) {
        const Invocation r = invoke(args);
        EXPECT_EQ(r.code, 2) << r.out;
        ASSERT_FALSE(r.err.empty());
        EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
        const json e = json::parse(r.err);
        EXPECT_TRUE(e.contains("code"));
        EXPECT_TRUE(e.contains("message"));
    }
    EXPECT_EQ(json::parse(invoke({"jm", "--axes", "z,x", "--lambda", "1.5"}).err)["code"], "OutOfRange");
}

TEST(CliErrors, help_exits_zero) {
    const Invocation r = invoke({"--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("chsh"), std::string::npos);
}

TEST(CliOutput, determinism_and_precision) {
    const std::vector<std::string> args{"region", "--e-grid", "0:0.5:4", "--delta-grid", "0:1:4"};
    EXPECT_EQ(invoke(args).out, invoke(args).out);
    const json p3 = invoke_json({"chsh", "--canonical", "pi/2,pi/2", "--max", "--precision", "3"});
    EXPECT_EQ(p3["value"].get<double>(), 2.828);
    EXPECT_EQ(invoke({"chsh", "--canonical", "0,0", "--max", "--precision", "16"}).code, 2);
}

TEST(CliOutput, json_schema_round_trip) {
    const json doc = invoke_json({"chsh", "--noisy", "0.9", "--state", "schmidt:0.5"});
    for (const char *key : {"command", "setting", "state", "value", "bound", "bound_kind", "mu", "delta", "violates"}) {
        EXPECT_TRUE(doc.contains(key)) << key;
    }
    EXPECT_EQ(json::parse(doc.dump()), doc);
    EXPECT_EQ(doc["bound_kind"], "spectral");
    EXPECT_NEAR(doc["value"].get<double>(), 2.0 * std::sqrt(2.0) * 0.81, 1e-6);
}

TEST(CliOutput, output_file_and_config) {
    const auto out = temp_path("region.csv");
    std::filesystem::remove(out);
    const Invocation written = invoke({"region", "--format", "csv", "--output", out.string()});
    EXPECT_EQ(written.code, 0);
    EXPECT_TRUE(written.out.empty());
    const std::string body = read_file(out);
    EXPECT_EQ(body.substr(0, body.find('\n')), "# entanglement_threshold=0.044910");

    const auto cfg = temp_path("config.ini");
    std::ofstream(cfg) << "[region]\ne-grid = \"0:0.5:2\"\ndelta-grid = \"0:1:2\"\nformat = \"csv\"\n";
    const Invocation from_cfg = invoke({"--config", cfg.string(), "region"});
    ASSERT_EQ(from_cfg.code, 0) << from_cfg.err;
    EXPECT_EQ(std::count(from_cfg.out.begin(), from_cfg.out.end(), '\n'), 6);

    const Invocation overridden = invoke({"--config", cfg.string(), "region", "--delta-grid", "0:1:3"});
    ASSERT_EQ(overridden.code, 0) << overridden.err;
    EXPECT_EQ(std::count(overridden.out.begin(), overridden.out.end(), '\n'), 8);
}
