#include "cstm/report.hpp"

#include <algorithm>
#include <sstream>

namespace cstm {

void ValidationReport::add(std::string path, std::string message) {
    violations_.push_back({std::move(path), std::move(message)});
}

void ValidationReport::merge(const ValidationReport &other, const std::string &prefix) {
    for (const auto &v : other.violations_) {
        violations_.push_back({prefix + v.path, v.message});
    }
}

bool ValidationReport::contains(std::string_view message_fragment) const {
    return std::any_of(violations_.begin(), violations_.end(), [&](const Violation &v) {
        return v.message.find(message_fragment) != std::string::npos;
    });
}

std::string ValidationReport::to_string() const {
    std::ostringstream out;
    for (const auto &v : violations_) {
        out << v.path << ": " << v.message << '\n';
    }
    return out.str();
}

namespace {
std::string summarize(const ValidationReport &report) {
    const auto &v = report.violations();
    if (v.empty()) {
        return "validation failed";
    }
    auto msg = v.front().path + ": " + v.front().message;
    if (v.size() > 1) {
        msg += " (and " + std::to_string(v.size() - 1) + " more)";
    }
    return msg;
}
} // namespace

ValidationError::ValidationError(ValidationReport report)
    : Error(summarize(report)), report_(std::move(report)) {}

} // namespace cstm
