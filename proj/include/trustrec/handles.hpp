#pragma once

#include <compare>
#include <cstdint>
#include <functional>

namespace trustrec {

/// Dense user index in [0, |U|). Assigned when a dataset is finalized.
struct UserHandle {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const UserHandle&) const = default;
};

/// Dense item index in [0, |I|).
struct ItemHandle {
  std::uint32_t value = 0;
  constexpr auto operator<=>(const ItemHandle&) const = default;
};

constexpr UserHandle user(std::uint32_t v) { return UserHandle{v}; }
constexpr ItemHandle item(std::uint32_t v) { return ItemHandle{v}; }

}  // namespace trustrec

template <>
struct std::hash<trustrec::UserHandle> {
  std::size_t operator()(trustrec::UserHandle h) const noexcept { return h.value; }
};

template <>
struct std::hash<trustrec::ItemHandle> {
  std::size_t operator()(trustrec::ItemHandle h) const noexcept { return h.value; }
};
