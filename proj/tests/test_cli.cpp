#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "antsel/cli.hpp"
#include "antsel/error.hpp"

using namespace antsel;
using namespace antsel::cli;

namespace {

std::string usage_message(const std::vector<std::string>& argv) {
  try {
    parse_args(argv);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::kUsage);
    return e.what();
  }
  FAIL("expected UsageError");
  return {};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("antsel_test_" + name)).string();
}

int run_main(std::vector<std::string> args) {
  args.insert(args.begin(), "antsel");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return cli::main(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("parse_value_list") {
  CHECK(parse_value_list("0:2:10") == std::vector<double>{0, 2, 4, 6, 8, 10});
  CHECK(parse_value_list("0.6,0.8") == std::vector<double>{0.6, 0.8});
  CHECK(parse_value_list(" 5 ") == std::vector<double>{5});
  const auto phis = parse_value_list("0:0.1:0.9");
  REQUIRE(phis.size() == 10);
  CHECK(phis[3] == 0.3);
  CHECK(phis[9] == 0.9);
  CHECK(parse_value_list("4:4:64").size() == 16);
  CHECK(parse_value_list("10:-5:0") == std::vector<double>{10, 5, 0});
  CHECK(parse_value_list("").empty());
  CHECK_THROWS_AS(parse_value_list("1:0:3"), Error);
  CHECK_THROWS_AS(parse_value_list("0:1:-3"), Error);
  CHECK_THROWS_AS(parse_value_list("1:2"), Error);
  CHECK_THROWS_AS(parse_value_list("a,b"), Error);
}

TEST_CASE("a preset with an explicit override") {
  const CliConfig c = parse_args({"simulate", "--preset", "fig4", "--m", "64", "--workers", "1"});
  REQUIRE(c.preset.has_value());
  CHECK(*c.preset == "fig4");
  CHECK(c.m_values == std::vector<int>{64});
  CHECK(c.ks_values.size() == 16);
  CHECK(c.ks_values.front() == 4);
  CHECK(c.ks_values.back() == 64);
  CHECK(c.phi_values == std::vector<double>{0.8});
  CHECK(c.tau_values == std::vector<double>{0.8});
  CHECK(c.axis == SweepAxis::kKs);
  CHECK(c.schemes == std::vector<Scheme>{Scheme::kOmpSelection, Scheme::kMrc});

  const CliConfig raw = parse_args({"simulate", "--preset", "fig4"});
  CHECK(raw.m_values == std::vector<int>{64, 128});
}

TEST_CASE("every flag given explicitly") {
  const CliConfig c = parse_args({"simulate", "--m", "64", "--ks", "50", "--phi", "0.6", "--tau",
                                  "0.6", "--snr-db", "0:2:10", "--schemes", "omp,mrc", "--trials",
                                  "10000", "--seed", "42", "--out", "r.csv"});
  CHECK_FALSE(c.preset.has_value());
  CHECK(c.m_values == std::vector<int>{64});
  CHECK(c.ks_values == std::vector<int>{50});
  CHECK(c.phi_values == std::vector<double>{0.6});
  CHECK(c.tau_values == std::vector<double>{0.6});
  CHECK(c.snr_db_values == std::vector<double>{0, 2, 4, 6, 8, 10});
  CHECK(c.schemes.size() == 2);
  CHECK(c.axis == SweepAxis::kSnrDb);
  CHECK(c.trials == 10000);
  CHECK(c.symbols_per_channel == 100);
  CHECK(c.seed == 42);
  CHECK(c.out_path == "r.csv");
  CHECK(c.workers >= 1);
}

TEST_CASE("validation errors name the flag") {
  CHECK(usage_message({"simulate", "--phi", "1.2"}).find("--phi") != std::string::npos);
  CHECK(usage_message({"simulate", "--tau", "-0.5"}).find("--tau") != std::string::npos);
  CHECK(usage_message({"simulate", "--m", "8", "--ks", "9"}).find("--ks") != std::string::npos);
  CHECK(usage_message({"simulate", "--m", "2.5"}).find("--m") != std::string::npos);
  CHECK(usage_message({"simulate", "--trials", "0"}).find("--trials") != std::string::npos);
  CHECK(usage_message({"simulate", "--schemes", "zf"}).find("--schemes") != std::string::npos);
  CHECK(usage_message({"simulate", "--axis", "m"}).find("--axis") != std::string::npos);
  CHECK(usage_message({"simulate", "--snr-db", "0:x:3"}).find("--snr-db") != std::string::npos);
  CHECK(usage_message({"simulate", "--workers", "0"}).find("--workers") != std::string::npos);
  CHECK(usage_message({"simulate", "--bogus", "3"}).find("bogus") != std::string::npos);
  CHECK(usage_message({"simulate", "--preset", "fig9"}).find("preset") != std::string::npos);
  usage_message({});

  // MRC alone ignores K_s, so a K_s above M is harmless there.
  CHECK_NOTHROW(parse_args({"simulate", "--m", "8", "--ks", "9", "--schemes", "mrc"}));
}

TEST_CASE("axis is inferred from the first multi-valued list") {
  CHECK(parse_args({"simulate", "--snr-db", "2", "--phi", "0,0.5"}).axis == SweepAxis::kPhi);
  CHECK(parse_args({"simulate", "--snr-db", "2", "--ks", "4,8"}).axis == SweepAxis::kKs);
  CHECK(parse_args({"simulate", "--snr-db", "2", "--tau", "0,1"}).axis == SweepAxis::kTau);
  CHECK(parse_args({"simulate", "--snr-db", "2"}).axis == SweepAxis::kSnrDb);
  CHECK(parse_args({"simulate", "--phi", "0,0.5", "--axis", "phi"}).axis == SweepAxis::kPhi);
}

TEST_CASE("help lists every flag with preset defaults") {
  const CliConfig c = parse_args({"simulate", "--help"});
  REQUIRE(c.help_requested);
  for (const char* flag : {"--preset", "--m", "--ks", "--phi", "--tau", "--snr-db", "--schemes",
                           "--axis", "--trials", "--symbols-per-channel", "--seed", "--out",
                           "--workers"}) {
    CHECK_MESSAGE(c.help_text.find(flag) != std::string::npos, flag);
  }
  for (const auto& preset : presets()) {
    CHECK(c.help_text.find(std::string(preset.name) + ":") != std::string::npos);
    for (const auto& [flag, value] : preset.flags) {
      CHECK(c.help_text.find(std::string(preset.name) + ": " + std::string(value)) !=
            std::string::npos);
    }
  }
  CHECK(c.help_text.find("--ks 4:4:64") != std::string::npos);
}

TEST_CASE("presets expand to the same config as their flags") {
  for (const auto& preset : presets()) {
    std::vector<std::string> explicit_args = {"simulate"};
    for (const auto& [flag, value] : preset.flags) {
      explicit_args.emplace_back(flag);
      explicit_args.emplace_back(value);
    }
    const CliConfig a = parse_args({"simulate", "--preset", std::string(preset.name)});
    const CliConfig b = parse_args(explicit_args);
    CHECK(a.m_values == b.m_values);
    CHECK(a.ks_values == b.ks_values);
    CHECK(a.phi_values == b.phi_values);
    CHECK(a.tau_values == b.tau_values);
    CHECK(a.snr_db_values == b.snr_db_values);
    CHECK(a.schemes == b.schemes);
    CHECK(a.axis == b.axis);
  }
}

TEST_CASE("format_csv") {
  CHECK(format_csv({}) == std::string(kCsvHeader) + "\n");

  SimPoint p;
  p.m = 64;
  p.k_s = 50;
  p.phi = 0.6;
  p.tau = 0.6;
  p.snr_db = 2;
  p.trials = 3;
  p.symbols_per_channel = 1;
  p.seed = 42;
  const BerRecord rec = BerRecord::from_counts(p, 3, 1);
  const std::vector<BerRecord> one = {rec};
  const std::string csv = format_csv(one);
  CHECK(csv == std::string(kCsvHeader) +
                   "\nomp,64,50,0.6,0.6,2,3,1,42,3,1,0.3333333333333333,0.2721655269759087\n");

  // The ber field parses back to exactly bit_errors / bits_sent.
  const std::string row = csv.substr(csv.find('\n') + 1);
  std::vector<std::string> fields;
  std::istringstream is(row);
  for (std::string f; std::getline(is, f, ',');) fields.push_back(f);
  REQUIRE(fields.size() == 13);
  CHECK(std::stod(fields[11]) == 1.0 / 3.0);
  CHECK(std::stod(fields[12]) == rec.std_error);
}

TEST_CASE("write_csv") {
  const std::string path = temp_path("empty.csv");
  write_csv({}, path);
  CHECK(slurp(path) == std::string(kCsvHeader) + "\n");
  std::remove(path.c_str());

  CHECK_THROWS_AS(write_csv({}, "/nonexistent-dir/x/out.csv"), Error);
}

TEST_CASE("run_config row order and record count") {
  const CliConfig c = parse_args({"simulate", "--m", "8", "--ks", "2,4", "--phi", "0,0.5", "--tau",
                                  "0.2", "--snr-db", "0,5", "--trials", "20",
                                  "--symbols-per-channel", "5", "--workers", "1"});
  const auto recs = run_config(c);
  // OMP: 2 ks x 2 phi x 2 snr; MRC: 2 phi x 2 snr.
  REQUIRE(recs.size() == 12);
  CHECK(recs[0].point.scheme == Scheme::kOmpSelection);
  CHECK(recs[0].point.k_s == 2);
  CHECK(recs[0].point.phi == 0.0);
  CHECK(recs[1].point.snr_db == 5.0);
  CHECK(recs[2].point.phi == 0.5);
  CHECK(recs[4].point.k_s == 4);
  CHECK(recs[8].point.scheme == Scheme::kMrc);
  CHECK(recs[8].point.k_s == 8);
  for (const auto& r : recs) CHECK(r.bits_sent == 100);
}

TEST_CASE("CSV is byte-identical across worker counts") {
  const std::vector<std::string> base = {"simulate", "--m", "16", "--ks", "4", "--phi", "0.5",
                                         "--tau", "0.3", "--snr-db", "0:5:10", "--trials", "500",
                                         "--symbols-per-channel", "10", "--seed", "9"};
  std::string outputs[2];
  const int workers[2] = {1, 8};
  for (int i = 0; i < 2; ++i) {
    auto args = base;
    const std::string path = temp_path("w" + std::to_string(workers[i]) + ".csv");
    args.insert(args.end(), {"--workers", std::to_string(workers[i]), "--out", path});
    REQUIRE(run_main(args) == 0);
    outputs[i] = slurp(path);
    std::remove(path.c_str());
  }
  CHECK(outputs[0] == outputs[1]);
  CHECK(std::count(outputs[0].begin(), outputs[0].end(), '\n') == 7);
}

TEST_CASE("exit status") {
  const std::string path = temp_path("status.csv");
  std::remove(path.c_str());
  CHECK(run_main({"simulate", "--phi", "1.2", "--out", path}) != 0);
  CHECK_FALSE(std::filesystem::exists(path));
  CHECK(run_main({"simulate", "--bogus"}) != 0);
  CHECK(run_main({"simulate", "--help"}) == 0);
  CHECK(run_main({"simulate", "--m", "4", "--ks", "2", "--snr-db", "0", "--trials", "5",
                  "--workers", "1", "--out", "/nonexistent-dir/x/out.csv"}) == 1);
  CHECK(run_main({"simulate", "--m", "4", "--ks", "2", "--snr-db", "0", "--trials", "5",
                  "--workers", "1", "--out", path}) == 0);
  CHECK(std::filesystem::exists(path));
  std::remove(path.c_str());
}
