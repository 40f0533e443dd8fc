#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace bindweaver {

// Specialized per enumeration; `names` lists the spelling of each
// enumerator in declaration order.
template <typename E>
struct EnumText;

template <typename E>
constexpr std::size_t enum_count() {
    return EnumText<E>::names.size();
}

template <typename E>
constexpr std::string_view enum_name(E e) {
    return EnumText<E>::names[static_cast<std::size_t>(e)];
}

template <typename E>
constexpr std::optional<E> parse_enum(std::string_view text) {
    const auto& names = EnumText<E>::names;
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == text) return static_cast<E>(i);
    return std::nullopt;
}

template <typename E>
constexpr std::array<E, EnumText<E>::names.size()> enum_values() {
    std::array<E, EnumText<E>::names.size()> out{};
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<E>(i);
    return out;
}

}  // namespace bindweaver
