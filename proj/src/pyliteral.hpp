#pragma once

#include <string_view>

#include <json.hpp>

namespace trustrec::detail {

/// Parses a Python literal (dict, list, tuple, str, int, float, True, False,
/// None) into JSON. Tuples become arrays. Throws std::invalid_argument.
nlohmann::json parse_python_literal(std::string_view text);

}  // namespace trustrec::detail
