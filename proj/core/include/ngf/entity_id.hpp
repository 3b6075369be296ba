#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace ngf {

enum class EntityKind : std::uint8_t { vertex = 0x01, edge = 0x02 };

/// 128-bit identifier: 8-bit kind prefix, 64-bit nanosecond timestamp and a
/// 56-bit random payload. Vertex and edge ids never compare equal because the
/// prefixes differ.
class EntityId {
 public:
  static constexpr std::uint64_t kRandomMask = (std::uint64_t{1} << 56) - 1;

  constexpr EntityId() = default;
  constexpr EntityId(EntityKind kind, std::uint64_t timestamp_ns, std::uint64_t random)
      : prefix_(static_cast<std::uint8_t>(kind)),
        timestamp_ns_(timestamp_ns),
        random_(random & kRandomMask) {}

  constexpr std::uint8_t prefix() const noexcept { return prefix_; }
  constexpr std::uint64_t timestamp_ns() const noexcept { return timestamp_ns_; }
  constexpr std::uint64_t random() const noexcept { return random_; }
  constexpr bool is_vertex() const noexcept { return prefix_ == static_cast<std::uint8_t>(EntityKind::vertex); }
  constexpr bool is_edge() const noexcept { return prefix_ == static_cast<std::uint8_t>(EntityKind::edge); }
  constexpr bool valid() const noexcept { return is_vertex() || is_edge(); }
  EntityKind kind() const;

  // Orders by (timestamp, random); the prefix only breaks ties between the
  // two id spaces.
  constexpr std::strong_ordering operator<=>(const EntityId& o) const noexcept {
    if (auto c = timestamp_ns_ <=> o.timestamp_ns_; c != 0) return c;
    if (auto c = random_ <=> o.random_; c != 0) return c;
    return prefix_ <=> o.prefix_;
  }
  constexpr bool operator==(const EntityId&) const noexcept = default;

  /// 32 lowercase hex digits: prefix (2), timestamp (16), random (14).
  std::string to_string() const;
  static EntityId parse(std::string_view text);

 private:
  std::uint8_t prefix_ = 0;
  std::uint64_t timestamp_ns_ = 0;
  std::uint64_t random_ = 0;
};

using ClockSource = std::function<std::uint64_t()>;
using RandomSource = std::function<std::uint64_t()>;

/// Nanoseconds since the epoch from the system clock.
std::uint64_t system_clock_ns();

/// Draws one id from the clock and randomness source. Store-level uniqueness
/// is handled by Store::new_id.
EntityId draw_id(EntityKind kind, const ClockSource& clock, const RandomSource& rng);

}  // namespace ngf

template <>
struct std::hash<ngf::EntityId> {
  std::size_t operator()(const ngf::EntityId& id) const noexcept {
    std::uint64_t h = id.timestamp_ns() * 0x9E3779B97F4A7C15ull;
    h ^= id.random() + 0x7F4A7C159E3779B9ull + (h << 6) + (h >> 2);
    h ^= id.prefix();
    return static_cast<std::size_t>(h);
  }
};
