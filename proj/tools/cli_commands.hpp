#pragma once

#include <optional>
#include <string>

namespace superspec::cli {

enum ExitCode : int {
    kOk = 0,
    kParseError = 1,
    kInvariantViolation = 2,
    kWindowUnstable = 3,
    kVerificationFailure = 4,
    kUsage = 64,
};

enum class Format { Text, Csv, Latex };

struct Options {
    std::string path;
    Format format = Format::Text;
    std::optional<int> r_max;
    std::optional<int> window_override;
    std::optional<std::string> emit_complex;   // validate only
};

struct Result {
    int code = kOk;
    std::string out;
    std::string err;
};

Result run_validate(const Options& opts);
Result run_pages(const Options& opts);
Result run_cohomology(const Options& opts);
Result run_order(const Options& opts);
Result run_verify(const Options& opts);

std::optional<Format> parse_format(const std::string& name);

}  // namespace superspec::cli
