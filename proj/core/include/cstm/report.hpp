#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace cstm {

/// A single problem found while checking a model, with a path to the
/// offending field (e.g. "parameters.p_HS1" or "a_P[S1,S1,3]").
struct Violation {
    std::string path;
    std::string message;

    bool operator==(const Violation &) const = default;
};

/// Result of a validation pass. Empty means the checked object is valid.
class ValidationReport {
  public:
    void add(std::string path, std::string message);
    void merge(const ValidationReport &other, const std::string &prefix = {});

    [[nodiscard]] bool ok() const noexcept { return violations_.empty(); }
    [[nodiscard]] const std::vector<Violation> &violations() const noexcept { return violations_; }
    [[nodiscard]] bool contains(std::string_view message_fragment) const;

    /// One violation per line, "path: message".
    [[nodiscard]] std::string to_string() const;

  private:
    std::vector<Violation> violations_;
};

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when a model or array fails its structural checks.
class ValidationError : public Error {
  public:
    explicit ValidationError(ValidationReport report);
    [[nodiscard]] const ValidationReport &report() const noexcept { return report_; }

  private:
    ValidationReport report_;
};

/// Raised for unreadable or malformed input files.
class IoError : public Error {
  public:
    using Error::Error;
};

} // namespace cstm
