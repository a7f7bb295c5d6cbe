#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "cstm/evaluate.hpp"
#include "cstm/model.hpp"

namespace cstm::cli {

enum ExitCode : int {
    kOk = 0,
    kValidationFailed = 1,
    kUsage = 2,
    kIoError = 3,
    kInternalError = 4,
};

struct RunConfig {
    std::string subcommand;
    /// Empty means the built-in Sick-Sicker model.
    std::optional<std::filesystem::path> spec;
    std::optional<std::filesystem::path> life_table;
    ModelVariant variant = ModelVariant::simtime;
    std::filesystem::path out_dir = "cstm-out";
    std::uint64_t seed = 20220101;
    int n_samples = 1000;
    double wtp_min = 0.0;
    double wtp_max = 200000.0;
    double wtp_step = 5000.0;
    bool write_arrays = false;
    unsigned threads = 0;
};

/// Thrown for inconsistent options; mapped to kUsage.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Loads the spec named by the config (or the built-in one) and applies the
/// life-table override. Does not validate.
[[nodiscard]] ModelSpec load_model(const RunConfig &cfg);

// Each command writes human-readable output to `out`, diagnostics to `err`,
// and returns an ExitCode. None of them throw.
int cmd_validate(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_run(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_cea(const RunConfig &cfg, std::ostream &out, std::ostream &err);
int cmd_psa(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// Runs cfg.subcommand.
int dispatch(const RunConfig &cfg, std::ostream &out, std::ostream &err);

/// "$114,472"
[[nodiscard]] std::string format_currency(double v);

} // namespace cstm::cli
