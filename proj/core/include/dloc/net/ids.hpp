#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace dloc::net {

/// Stable identifier of a simulated node. Never reused within one run.
struct NodeId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::uint32_t v) : value(v) {}

  constexpr bool valid() const { return value != std::numeric_limits<std::uint32_t>::max(); }
  constexpr auto operator<=>(const NodeId&) const = default;
};

inline constexpr NodeId kNoNode{};

struct LinkId {
  std::uint32_t value = std::numeric_limits<std::uint32_t>::max();

  constexpr LinkId() = default;
  constexpr explicit LinkId(std::uint32_t v) : value(v) {}

  constexpr auto operator<=>(const LinkId&) const = default;
};

/// Identifier of a protocol-level operation (one store, one lookup, one gossip
/// round...). Every message carries the id of the operation that caused it.
using OpId = std::uint64_t;

/// Fixed-width location identifier. Bit 0 of the prefix space is the most
/// significant bit of `bits`.
class Address {
 public:
  static constexpr unsigned kMaxWidth = 64;

  constexpr Address() = default;
  Address(std::uint64_t bits, unsigned width);

  std::uint64_t bits() const { return bits_; }
  unsigned width() const { return width_; }

  /// Bit at prefix position `i` (0 = most significant).
  bool bit(unsigned i) const;

  /// Keeps the first `len` bits and zeroes the rest.
  Address masked(unsigned len) const;

  /// Dotted bytes for widths that are a multiple of 8, a binary string otherwise.
  std::string to_string() const;

  auto operator<=>(const Address&) const = default;

 private:
  std::uint64_t bits_ = 0;
  unsigned width_ = 32;
};

/// Parses the textual form produced by Address::to_string.
std::optional<Address> parse_address(std::string_view text, unsigned width);

std::uint64_t width_mask(unsigned width);

}  // namespace dloc::net

template <>
struct std::hash<dloc::net::NodeId> {
  std::size_t operator()(const dloc::net::NodeId& id) const noexcept {
    return std::hash<std::uint32_t>{}(id.value);
  }
};
