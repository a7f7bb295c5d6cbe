#pragma once

#include <filesystem>
#include <string_view>

#include "cstm/model.hpp"

namespace cstm {

/// Parses CSV text with header `age,mortality_rate`. `source` is only used
/// in error messages. Throws IoError on malformed input and ValidationError
/// when the ages are not contiguous or a rate is negative.
[[nodiscard]] LifeTable parse_life_table_csv(std::string_view text, std::string_view source);

[[nodiscard]] LifeTable read_life_table_csv(const std::filesystem::path &path);

} // namespace cstm
