/*
 * Copyright 2026 The mimo-detect Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mimo/config.hpp"

using namespace mimo;

namespace {

CliInvocation parse(std::vector<std::string> args) { return parse_invocation(args); }

std::string config_error_key(std::vector<std::string> args) {
  try {
    parse(std::move(args));
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<no error>";
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("mimo_test_" + name);
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

} // namespace

TEST_CASE("four-by-four 4-QAM invocation") {
  const auto inv = parse({"--nt", "4", "--nr", "4", "--mod", "4qam", "--detectors", "zf,mmse,ml",
                          "--snr-db", "0:20:4", "--trials", "100000", "--seed", "7"});
  const SimulationConfig& c = inv.config;
  CHECK(c.nt == 4);
  CHECK(c.nr == 4);
  CHECK(c.modulation == "4qam");
  REQUIRE(c.detectors.size() == 3);
  CHECK(c.detectors[2].algorithm == Algorithm::Ml);
  CHECK(c.snr_grid_db == std::vector<double>{0, 4, 8, 12, 16, 20});
  CHECK(c.max_channel_uses == 100000);
  CHECK(c.seed == 7);
  CHECK(inv.output.path == "-");
  CHECK(inv.output.format == OutputFormat::Csv);
}

TEST_CASE("six-by-twelve 16-QAM invocation") {
  const auto inv = parse({"--nt", "6", "--nr", "12", "--mod", "16qam"});
  CHECK(inv.config.nt == 6);
  CHECK(inv.config.nr == 12);
  CHECK(inv.config.constellation().order() == 16);
}

TEST_CASE("constraint and value errors name the key") {
  CHECK(config_error_key({"--nr", "2", "--nt", "4"}) == "nr");
  CHECK(config_error_key({"--nt", "four"}) == "nt");
  CHECK(config_error_key({"--rho", "1.5"}) == "rho");
  CHECK(config_error_key({"--mod", "8psk"}) == "mod");
  CHECK(config_error_key({"--detectors", "zf,map"}) == "detectors");
  CHECK(config_error_key({"--snr-db", "10,5"}) == "snr-db");
  CHECK(config_error_key({"--format", "json"}) == "format");
  CHECK(config_error_key({"--freeze-h", "zero"}) == "freeze-h");
  CHECK(config_error_key({"--trials", "-3"}) == "trials");
  CHECK_THROWS_AS(parse({"--bogus", "1"}), ConfigError);
}

TEST_CASE("snr grid syntax") {
  CHECK(parse_snr_grid("0:20:4") == std::vector<double>{0, 4, 8, 12, 16, 20});
  CHECK(parse_snr_grid("0:19:4") == std::vector<double>{0, 4, 8, 12, 16});
  CHECK(parse_snr_grid("0:1:0.1").size() == 11);
  CHECK(parse_snr_grid("-4:0:2") == std::vector<double>{-4, -2, 0});
  CHECK(parse_snr_grid("0, 2.5,7") == std::vector<double>{0, 2.5, 7});
  CHECK(parse_snr_grid("12") == std::vector<double>{12});
  CHECK(parse_snr_grid("").empty());
  const auto inf = parse_snr_grid("10,inf");
  CHECK(std::isinf(inf[1]));
  CHECK_THROWS_AS(parse_snr_grid("0:10"), ConfigError);
  CHECK_THROWS_AS(parse_snr_grid("0:10:0"), ConfigError);
  CHECK_THROWS_AS(parse_snr_grid("a,b"), ConfigError);
}

TEST_CASE("precedence: defaults < config file < flags") {
  const auto path = temp_file("precedence.cfg");
  {
    std::ofstream out(path);
    out << "# comment line\n"
        << "nt = 2\n"
        << "nr = 8   # trailing comment\n"
        << "mod = 64qam\n"
        << "min_errors = 17\n";
  }
  const auto inv = parse({"--config", path.string(), "--nr", "3"});
  CHECK(inv.config.nt == 2);          // file
  CHECK(inv.config.nr == 3);          // flag beats file
  CHECK(inv.config.modulation == "64qam");
  CHECK(inv.config.min_errors == 17); // underscore spelling accepted
  CHECK(inv.config.max_channel_uses == 100000);  // default

  {
    std::ofstream out(path);
    out << "nt = 2\ncolour = blue\n";
  }
  CHECK(config_error_key({"--config", path.string()}) == "colour");
  {
    std::ofstream out(path);
    out << "nt 2\n";
  }
  CHECK_THROWS_AS(parse({"--config", path.string()}), ConfigError);
  std::filesystem::remove(path);
  CHECK(config_error_key({"--config", "/nonexistent/mimo.cfg"}) == "config");
}

TEST_CASE("help is reported, not thrown") {
  const auto inv = parse({"--help"});
  CHECK(inv.help_requested);
  CHECK(inv.help_text.find("--snr-db") != std::string::npos);
}

TEST_CASE("results format") {
  auto inv = parse({"--nt", "2", "--nr", "2", "--detectors", "zf,vblast-mmse", "--snr-db",
                    "0:10:5", "--trials", "1000", "--seed", "11"});
  const SerCurve curve = estimate_ser(inv.config);
  const std::string csv = format_results(curve, OutputFormat::Csv);
  const auto lines = lines_of(csv);
  std::size_t header = 0;
  while (lines[header].starts_with('#')) ++header;
  CHECK(lines[header] == "snr_db,detector,channel_uses,symbol_errors,ser,ci95_lo,ci95_hi");
  CHECK(lines.size() - header - 1 == 3 * 2);
  CHECK(lines[header + 1].starts_with("0,zf,"));
  CHECK(lines.back().starts_with("10,vblast-mmse,"));
  CHECK(csv.find("@snr_convention") != std::string::npos);
  CHECK(csv.find("@ser_convention") != std::string::npos);
  CHECK(csv.find("# seed = 11") != std::string::npos);

  const std::string tsv = format_results(curve, OutputFormat::Tsv);
  CHECK(tsv.find("snr_db\tdetector\tchannel_uses") != std::string::npos);

  // 17 significant digits reproduce the double exactly.
  const auto fields = split_csv(lines[header + 1]);
  REQUIRE(fields.size() == 7);
  CHECK(std::stod(fields[4]) == curve.points.front().ser);
  CHECK(std::stod(fields[5]) == curve.points.front().ci95_lo);
}

TEST_CASE("empty grid writes a header-only file") {
  auto inv = parse({"--snr-db", "", "--trials", "10"});
  const std::string text = format_results(estimate_ser(inv.config), OutputFormat::Csv);
  const auto lines = lines_of(text);
  CHECK(lines.back() == "snr_db,detector,channel_uses,symbol_errors,ser,ci95_lo,ci95_hi");
}

TEST_CASE("header round trip reproduces the data rows") {
  auto inv = parse({"--nt", "3", "--nr", "5", "--mod", "16qam", "--detectors",
                    "zf,mmse,vblast-zf,sphere", "--snr-db", "0,7.25,15", "--trials", "3000",
                    "--min-errors", "40", "--rho", "0.3", "--seed", "123456789", "--batch-size",
                    "500", "--threads", "3"});
  const std::string first = format_results(estimate_ser(inv.config), OutputFormat::Csv);
  const CliInvocation again = parse_config_text(extract_config_from_header(first));
  CHECK(again.config.rho == inv.config.rho);
  CHECK(again.config.snr_grid_db == inv.config.snr_grid_db);
  CHECK(again.config.threads == 1);
  const std::string second = format_results(estimate_ser(again.config), OutputFormat::Csv);
  CHECK(first == second);
}

TEST_CASE("write_results writes files and reports io errors") {
  auto inv = parse({"--nt", "1", "--nr", "1", "--snr-db", "5", "--trials", "100"});
  const SerCurve curve = estimate_ser(inv.config);
  const auto path = temp_file("out.csv");
  write_results(curve, OutputSettings{path.string(), OutputFormat::Csv});
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == format_results(curve, OutputFormat::Csv));
  std::filesystem::remove(path);

  try {
    write_results(curve, OutputSettings{"/nonexistent/dir/out.csv", OutputFormat::Csv});
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("/nonexistent/dir/out.csv") != std::string::npos);
  }
}
