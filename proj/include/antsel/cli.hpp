#ifndef ANTSEL_CLI_HPP
#define ANTSEL_CLI_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "antsel/harness.hpp"

namespace antsel::cli {

inline constexpr std::string_view kCsvHeader =
    "scheme,m,k_s,phi,tau,snr_db,trials,symbols_per_channel,seed,bits_sent,"
    "bit_errors,ber,stderr";

inline constexpr std::string_view kWorkersEnv = "ANTSEL_WORKERS";

struct CliConfig {
  std::optional<std::string> preset;
  std::vector<int> m_values;
  std::vector<int> ks_values;
  std::vector<double> phi_values;
  std::vector<double> tau_values;
  std::vector<double> snr_db_values;
  std::vector<Scheme> schemes;
  SweepAxis axis = SweepAxis::kSnrDb;
  std::int64_t trials = 0;
  int symbols_per_channel = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  int workers = 1;

  bool help_requested = false;
  std::string help_text;
};

/// A named bundle of flag defaults. Every preset is a plain flag list.
struct Preset {
  std::string_view name;
  std::string_view summary;
  std::vector<std::pair<std::string_view, std::string_view>> flags;
};

const std::vector<Preset>& presets();

/// `start:step:stop` (inclusive, tolerant of round-off) or `a,b,c`.
std::vector<double> parse_value_list(std::string_view spec);

/// argv excludes the program name: {"simulate", "--m", "64", ...}.
/// Preset defaults apply first, explicit flags override. Throws UsageError
/// naming the offending flag.
CliConfig parse_args(const std::vector<std::string>& argv);

/// Expands the configuration into sweeps and runs them in CSV row order.
/// `progress`, when set, gets one summary line per record.
std::vector<BerRecord> run_config(const CliConfig& config,
                                  std::ostream* progress = nullptr);

std::string format_csv(std::span<const BerRecord> records);
void write_csv(std::span<const BerRecord> records, const std::string& path);

/// Entry point behind the `antsel` executable. Returns the exit status.
int main(int argc, char** argv);

}  // namespace antsel::cli

#endif  // ANTSEL_CLI_HPP
