#include "cstm/life_table.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

namespace cstm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T> bool parse_number(std::string_view s, T &out) {
    s = trim(s);
    const auto *end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, out);
    return ec == std::errc() && ptr == end;
}

} // namespace

LifeTable parse_life_table_csv(std::string_view text, std::string_view source) {
    std::vector<int> ages;
    std::vector<double> rates;
    bool header_seen = false;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) {
            nl = text.size();
        }
        const auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) {
            continue;
        }
        if (!header_seen) {
            if (line != "age,mortality_rate") {
                throw IoError(fmt::format("{}:{}: expected header 'age,mortality_rate', got '{}'",
                                          source, line_no, line));
            }
            header_seen = true;
            continue;
        }
        const auto comma = line.find(',');
        int age = 0;
        double rate = 0.0;
        if (comma == std::string_view::npos || !parse_number(line.substr(0, comma), age) ||
            !parse_number(line.substr(comma + 1), rate)) {
            throw IoError(fmt::format("{}:{}: malformed row '{}'", source, line_no, line));
        }
        ages.push_back(age);
        rates.push_back(rate);
    }
    if (!header_seen) {
        throw IoError(fmt::format("{}: empty life table", source));
    }
    if (ages.empty()) {
        throw IoError(fmt::format("{}: life table has no rows", source));
    }
    return LifeTable(std::move(ages), std::move(rates));
}

LifeTable read_life_table_csv(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(fmt::format("cannot open life table '{}'", path.string()));
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_life_table_csv(buf.str(), path.string());
}

} // namespace cstm
