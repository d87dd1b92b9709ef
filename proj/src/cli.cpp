#include "antsel/cli.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "antsel/error.hpp"

namespace antsel::cli {
namespace {

[[noreturn]] void usage_error(std::string_view flag, const std::string& msg) {
  throw Error(Errc::kUsage, std::string(flag) + ": " + msg);
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(value)) {
    throw Error(Errc::kUsage, "'" + t + "' is not a number");
  }
  return value;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

struct FlagSpec {
  std::string_view name;
  std::string_view help;
  std::string_view fallback;
};

// Built-in defaults, used when neither the command line nor a preset sets
// the flag. --workers falls back to the environment, then the core count.
const std::vector<FlagSpec>& flag_specs() {
  static const std::vector<FlagSpec> specs = {
      {"--m", "Receive antenna count(s) M", "64"},
      {"--ks", "Selected antenna count(s) K_s for the OMP scheme", "32"},
      {"--phi", "Exponential correlation coefficient(s) in [0, 1)", "0"},
      {"--tau", "Channel estimation error variance(s) in [0, 1]", "0"},
      {"--snr-db", "SNR per bit in dB", "0:2:10"},
      {"--schemes", "Comma list of combining schemes: omp, mrc", "omp,mrc"},
      {"--axis", "Sweep axis: snr-db, phi, ks or tau (default: first multi-valued)", ""},
      {"--trials", "Channel realisations per point", "10000"},
      {"--symbols-per-channel", "BPSK symbols per channel realisation", "100"},
      {"--seed", "Master RNG seed", "1"},
      {"--out", "Output CSV path", "ber.csv"},
  };
  return specs;
}

std::string preset_default(const Preset& preset, std::string_view flag) {
  for (const auto& [name, value] : preset.flags) {
    if (name == flag) return std::string(value);
  }
  return {};
}

std::string describe_flag(const FlagSpec& spec) {
  std::ostringstream os;
  os << spec.help << " [default: " << (spec.fallback.empty() ? "auto" : spec.fallback);
  for (const auto& preset : presets()) {
    const std::string v = preset_default(preset, spec.name);
    if (!v.empty()) os << "; " << preset.name << ": " << v;
  }
  os << "]";
  return os.str();
}

std::string presets_footer() {
  std::ostringstream os;
  os << "Presets (each equivalent to the flags shown; explicit flags override):\n";
  for (const auto& preset : presets()) {
    os << "  " << preset.name << "  " << preset.summary << "\n       ";
    for (const auto& [name, value] : preset.flags) os << " " << name << " " << value;
    os << "\n";
  }
  os << "Values accept a comma list (0.6,0.8) or an inclusive range start:step:stop.\n"
     << "Worker count defaults to $" << kWorkersEnv << ", then the number of cores.";
  return os.str();
}

std::vector<int> to_ints(std::string_view flag, const std::vector<double>& values) {
  std::vector<int> out;
  out.reserve(values.size());
  for (const double v : values) {
    if (v != std::floor(v) || std::abs(v) > 1e9) usage_error(flag, format_double(v) + " is not an integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::vector<double> parse_flag_list(std::string_view flag, const std::string& text) {
  std::vector<double> values;
  try {
    values = parse_value_list(text);
  } catch (const Error& e) {
    usage_error(flag, e.detail());
  }
  if (values.empty()) usage_error(flag, "empty value list");
  return values;
}

void validate_config(const CliConfig& c) {
  for (const int m : c.m_values) {
    if (m < 1) usage_error("--m", std::to_string(m) + " must be >= 1");
  }
  const bool has_omp = std::find(c.schemes.begin(), c.schemes.end(), Scheme::kOmpSelection) !=
                       c.schemes.end();
  for (const int k : c.ks_values) {
    if (k < 1) usage_error("--ks", std::to_string(k) + " must be >= 1");
    for (const int m : c.m_values) {
      if (has_omp && k > m) {
        usage_error("--ks", std::to_string(k) + " exceeds --m " + std::to_string(m));
      }
    }
  }
  for (const double phi : c.phi_values) {
    if (!(phi >= 0.0 && phi < 1.0)) usage_error("--phi", format_double(phi) + " outside [0, 1)");
  }
  for (const double tau : c.tau_values) {
    if (!(tau >= 0.0 && tau <= 1.0)) usage_error("--tau", format_double(tau) + " outside [0, 1]");
  }
  for (const double snr : c.snr_db_values) {
    if (!std::isfinite(std::pow(10.0, -snr / 10.0)) || std::pow(10.0, -snr / 10.0) <= 0.0) {
      usage_error("--snr-db", format_double(snr) + " out of range");
    }
  }
  if (c.schemes.empty()) usage_error("--schemes", "no scheme selected");
  if (c.trials < 1) usage_error("--trials", "must be >= 1");
  if (c.symbols_per_channel < 1) usage_error("--symbols-per-channel", "must be >= 1");
  if (c.workers < 1) usage_error("--workers", "must be >= 1");
  if (c.out_path.empty()) usage_error("--out", "empty path");
}

template <typename T>
T parse_integer(std::string_view flag, const std::string& text) {
  const std::string t = trim(text);
  T value{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
    usage_error(flag, "'" + t + "' is not a valid integer");
  }
  return value;
}

int default_workers() {
  if (const char* env = std::getenv(std::string(kWorkersEnv).c_str())) {
    return parse_integer<int>(kWorkersEnv, env);
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> table = {
      {"fig1", "BER vs SNR, M = 64, K_s in {32, 50}, (phi, tau) grid",
       {{"--m", "64"}, {"--ks", "32,50"}, {"--phi", "0.6,0.8"}, {"--tau", "0.6,0.8"},
        {"--snr-db", "0:2:10"}, {"--schemes", "omp,mrc"}, {"--axis", "snr-db"}}},
      {"fig2", "BER vs phi, M = 64, tau = 0.8, SNR = 2 dB, K_s in {16, 32, 50}",
       {{"--m", "64"}, {"--ks", "16,32,50"}, {"--phi", "0:0.1:0.9"}, {"--tau", "0.8"},
        {"--snr-db", "2"}, {"--schemes", "omp,mrc"}, {"--axis", "phi"}}},
      {"fig3", "BER vs phi, M = 16, SNR = 2 dB, K_s in {8, 10}",
       {{"--m", "16"}, {"--ks", "8,10"}, {"--phi", "0:0.1:0.9"}, {"--tau", "0.4,0.8"},
        {"--snr-db", "2"}, {"--schemes", "omp,mrc"}, {"--axis", "phi"}}},
      {"fig4", "BER vs K_s, M in {64, 128}, phi = tau = 0.8",
       {{"--m", "64,128"}, {"--ks", "4:4:64"}, {"--phi", "0.8"}, {"--tau", "0.8"},
        {"--snr-db", "2,10"}, {"--schemes", "omp,mrc"}, {"--axis", "ks"}}},
  };
  return table;
}

std::vector<double> parse_value_list(std::string_view spec) {
  const std::string s = trim(spec);
  std::vector<double> out;
  if (s.empty()) return out;

  if (s.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(s);
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() != 3) {
      throw Error(Errc::kUsage, "range '" + s + "' must look like start:step:stop");
    }
    const double start = parse_double(parts[0]);
    const double step = parse_double(parts[1]);
    const double stop = parse_double(parts[2]);
    if (step == 0.0 || (stop - start) / step < 0.0) {
      throw Error(Errc::kUsage, "range '" + s + "' has a step that never reaches stop");
    }
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000) throw Error(Errc::kUsage, "range '" + s + "' is too long");
    for (long i = 0; i < count; ++i) {
      // Snap to 12 significant digits so 0:0.1:0.9 yields 0.3, not 0.30000000000000004.
      const double v = start + static_cast<double>(i) * step;
      const double scale = std::pow(10.0, 12 - std::ceil(std::log10(std::max(std::abs(v), 1e-300))));
      out.push_back(v == 0.0 ? 0.0 : std::round(v * scale) / scale);
    }
    return out;
  }

  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) out.push_back(parse_double(item));
  return out;
}

CliConfig parse_args(const std::vector<std::string>& argv) {
  CLI::App app{"Monte Carlo BER simulator for OMP-based receive antenna selection", "antsel"};
  app.require_subcommand(1);
  auto* sim = app.add_subcommand("simulate", "Run a BER sweep and write a CSV");
  sim->footer(presets_footer());

  std::string preset_name;
  std::vector<std::string> preset_names;
  for (const auto& p : presets()) preset_names.emplace_back(p.name);
  auto* preset_opt = sim->add_option("--preset", preset_name, "Named parameter preset")
                         ->check(CLI::IsMember(preset_names));

  std::map<std::string_view, std::string> raw;
  std::map<std::string_view, CLI::Option*> opts;
  for (const auto& spec : flag_specs()) {
    opts[spec.name] = sim->add_option(std::string(spec.name), raw[spec.name], describe_flag(spec));
  }
  std::string workers_raw;
  auto* workers_opt = sim->add_option(
      "--workers", workers_raw,
      "Worker threads [default: $" + std::string(kWorkersEnv) + " or core count]");

  CliConfig cfg;
  std::vector<const char*> cargv;
  cargv.push_back("antsel");
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    cfg.help_requested = true;
    cfg.help_text = sim->parsed() ? sim->help() : app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::CallForAllHelp&) {
    cfg.help_requested = true;
    cfg.help_text = app.help("", CLI::AppFormatMode::All);
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw Error(Errc::kUsage, e.what());
  }

  const Preset* preset = nullptr;
  if (preset_opt->count() > 0) {
    cfg.preset = preset_name;
    for (const auto& p : presets()) {
      if (p.name == preset_name) preset = &p;
    }
  }

  auto resolve = [&](std::string_view flag) -> std::string {
    if (opts.at(flag)->count() > 0) return raw.at(flag);
    if (preset) {
      std::string v = preset_default(*preset, flag);
      if (!v.empty()) return v;
    }
    for (const auto& spec : flag_specs()) {
      if (spec.name == flag) return std::string(spec.fallback);
    }
    return {};
  };

  cfg.m_values = to_ints("--m", parse_flag_list("--m", resolve("--m")));
  cfg.ks_values = to_ints("--ks", parse_flag_list("--ks", resolve("--ks")));
  cfg.phi_values = parse_flag_list("--phi", resolve("--phi"));
  cfg.tau_values = parse_flag_list("--tau", resolve("--tau"));
  cfg.snr_db_values = parse_flag_list("--snr-db", resolve("--snr-db"));

  {
    std::istringstream is(resolve("--schemes"));
    std::string name;
    while (std::getline(is, name, ',')) {
      try {
        const Scheme s = parse_scheme(trim(name));
        if (std::find(cfg.schemes.begin(), cfg.schemes.end(), s) == cfg.schemes.end()) {
          cfg.schemes.push_back(s);
        }
      } catch (const Error&) {
        usage_error("--schemes", "unknown scheme '" + trim(name) + "'");
      }
    }
  }

  const std::string axis_text = resolve("--axis");
  if (!axis_text.empty()) {
    try {
      cfg.axis = parse_axis(trim(axis_text));
    } catch (const Error&) {
      usage_error("--axis", "unknown axis '" + axis_text + "'");
    }
  } else if (cfg.snr_db_values.size() > 1) {
    cfg.axis = SweepAxis::kSnrDb;
  } else if (cfg.phi_values.size() > 1) {
    cfg.axis = SweepAxis::kPhi;
  } else if (cfg.ks_values.size() > 1) {
    cfg.axis = SweepAxis::kKs;
  } else if (cfg.tau_values.size() > 1) {
    cfg.axis = SweepAxis::kTau;
  } else {
    cfg.axis = SweepAxis::kSnrDb;
  }

  cfg.trials = parse_integer<std::int64_t>("--trials", resolve("--trials"));
  cfg.symbols_per_channel = parse_integer<int>("--symbols-per-channel", resolve("--symbols-per-channel"));
  cfg.seed = parse_integer<std::uint64_t>("--seed", resolve("--seed"));
  cfg.out_path = resolve("--out");
  cfg.workers = workers_opt->count() > 0 ? parse_integer<int>("--workers", workers_raw)
                                         : default_workers();

  validate_config(cfg);
  return cfg;
}

std::vector<BerRecord> run_config(const CliConfig& config, std::ostream* progress) {
  std::vector<BerRecord> records;
  const int axis_slot = static_cast<int>(config.axis);  // snr, phi, ks, tau

  for (const Scheme scheme : config.schemes) {
    for (const int m : config.m_values) {
      // Slots follow SweepAxis order: snr-db, phi, ks, tau.
      std::array<std::vector<double>, 4> lists;
      lists[0] = config.snr_db_values;
      lists[1] = config.phi_values;
      if (scheme == Scheme::kMrc) {
        lists[2] = {static_cast<double>(m)};
      } else {
        lists[2].assign(config.ks_values.begin(), config.ks_values.end());
      }
      lists[3] = config.tau_values;

      // Outer loops in the order k_s, phi, tau, snr over the non-axis slots.
      const std::array<int, 4> outer_order = {2, 1, 3, 0};
      std::vector<int> outer;
      for (const int slot : outer_order) {
        if (slot != axis_slot) outer.push_back(slot);
      }
      std::array<std::size_t, 4> idx{};
      while (true) {
        SimPoint base;
        base.m = m;
        base.scheme = scheme;
        base.trials = config.trials;
        base.symbols_per_channel = config.symbols_per_channel;
        base.seed = config.seed;
        base.snr_db = lists[0][idx[0]];
        base.phi = lists[1][idx[1]];
        base.k_s = static_cast<int>(lists[2][idx[2]]);
        base.tau = lists[3][idx[3]];
        if (axis_slot == 2) base.k_s = static_cast<int>(lists[2].front());

        auto sweep = run_sweep(base, config.axis, lists[axis_slot], config.workers);
        for (const auto& rec : sweep) {
          if (progress) {
            const SimPoint& p = rec.point;
            *progress << to_string(p.scheme) << " m=" << p.m << " k_s=" << p.k_s
                      << " phi=" << p.phi << " tau=" << p.tau << " snr_db=" << p.snr_db
                      << "  ber=" << rec.ber << " (" << rec.bit_errors << "/" << rec.bits_sent
                      << ")\n";
          }
          records.push_back(rec);
        }

        // Odometer over the outer slots, last slot fastest.
        int pos = static_cast<int>(outer.size()) - 1;
        while (pos >= 0) {
          const int slot = outer[pos];
          if (++idx[slot] < lists[slot].size()) break;
          idx[slot] = 0;
          --pos;
        }
        if (pos < 0) break;
      }
    }
  }
  return records;
}

std::string format_csv(std::span<const BerRecord> records) {
  std::ostringstream os;
  os << kCsvHeader << "\n";
  for (const auto& r : records) {
    const SimPoint& p = r.point;
    os << to_string(p.scheme) << ',' << p.m << ',' << p.k_s << ',' << format_double(p.phi) << ','
       << format_double(p.tau) << ',' << format_double(p.snr_db) << ',' << p.trials << ','
       << p.symbols_per_channel << ',' << p.seed << ',' << r.bits_sent << ',' << r.bit_errors
       << ',' << format_double(r.ber) << ',' << format_double(r.std_error) << "\n";
  }
  return os.str();
}

void write_csv(std::span<const BerRecord> records, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::kIo, "cannot open '" + path + "' for writing");
  out << format_csv(records);
  out.flush();
  if (!out) throw Error(Errc::kIo, "failed writing '" + path + "'");
}

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CliConfig cfg;
  try {
    cfg = parse_args(args);
  } catch (const Error& e) {
    std::cerr << "antsel: " << e.what() << "\nRun 'antsel simulate --help' for usage.\n";
    return 2;
  }
  if (cfg.help_requested) {
    std::cout << cfg.help_text;
    return 0;
  }
  try {
    const auto records = run_config(cfg, &std::cout);
    write_csv(records, cfg.out_path);
    std::cout << "wrote " << records.size() << " records to " << cfg.out_path << "\n";
  } catch (const Error& e) {
    std::cerr << "antsel: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace antsel::cli
