#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace abvp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitNoConverge = 2;
inline constexpr int kExitInternal = 3;

struct OutputOpts {
    std::optional<std::string> csv_path;  // CSV goes to stdout when absent
    std::optional<std::string> svg_path;
};

int cmd_reduce(const std::string& file, const OutputOpts& opts, std::ostream& out);

int cmd_certify(const std::string& file, const std::string& theorem, std::ostream& out);

int cmd_eigen(const std::string& file, const OutputOpts& opts, std::ostream& out);

int cmd_solve(const std::string& file, const std::string& method,
              std::optional<double> lambda_flag, const OutputOpts& opts, std::ostream& out);

int cmd_sweep(const std::string& file, double lambda_from, double lambda_to, int steps,
              bool log_spacing, const std::string& method, const OutputOpts& opts,
              std::ostream& out);

int cmd_examples(const std::string& id, std::ostream& out);

int cmd_verify(const std::string& file, const std::string& solution_csv,
               std::optional<double> lambda_flag, std::ostream& out);

} // namespace abvp::cli
