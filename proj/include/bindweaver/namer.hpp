#pragma once

#include "bindweaver/config.hpp"

#include <string>
#include <string_view>

namespace bindweaver {

inline constexpr std::string_view library_prefix = "CGALPY";

// "CGALPY" when the fixed name is requested, otherwise the prefix followed
// by one "_<module><Words>" part per enabled module in canonical order.
std::string encode_name(const BuildConfig& config);

// Inverse of encode_name on the fields the name carries; everything else
// keeps its default. Throws ParseError on an unknown module or word.
BuildConfig decode_name(std::string_view name);

// The config with every field the name does not carry reset to its default.
BuildConfig name_projection(const BuildConfig& config);

}  // namespace bindweaver
