#include "ngf/entity_id.hpp"

#include <chrono>
#include <cstdio>

#include "ngf/error.hpp"

namespace ngf {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::duplicate: return "duplicate";
    case Errc::unknown_type: return "unknown type";
    case Errc::schema_violation: return "schema violation";
    case Errc::no_admissible_metric: return "no admissible metric";
    case Errc::not_found: return "not found";
    case Errc::dangling_endpoint: return "dangling endpoint";
    case Errc::kind_mismatch: return "kind mismatch";
    case Errc::shape_mismatch: return "shape mismatch";
    case Errc::precondition: return "precondition failed";
    case Errc::io: return "i/o error";
    case Errc::format: return "format error";
    case Errc::checksum: return "checksum mismatch";
    case Errc::version: return "version mismatch";
  }
  return "error";
}

EntityKind EntityId::kind() const {
  if (!valid()) throw Error(Errc::invalid_argument, "entity id has no valid kind prefix");
  return static_cast<EntityKind>(prefix_);
}

std::string EntityId::to_string() const {
  char buf[33];
  std::snprintf(buf, sizeof buf, "%02x%016llx%014llx", prefix_,
                static_cast<unsigned long long>(timestamp_ns_),
                static_cast<unsigned long long>(random_));
  return std::string(buf, 32);
}

namespace {

std::uint64_t parse_hex(std::string_view text, std::string_view whole) {
  std::uint64_t v = 0;
  for (char c : text) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else throw Error(Errc::invalid_argument, "malformed entity id '" + std::string(whole) + "'");
    v = (v << 4) | static_cast<std::uint64_t>(d);
  }
  return v;
}

}  // namespace

EntityId EntityId::parse(std::string_view text) {
  if (text.size() != 32)
    throw Error(Errc::invalid_argument, "entity id must be 32 hex digits, got '" + std::string(text) + "'");
  auto prefix = parse_hex(text.substr(0, 2), text);
  auto ts = parse_hex(text.substr(2, 16), text);
  auto rnd = parse_hex(text.substr(18, 14), text);
  if (prefix != 0x01 && prefix != 0x02)
    throw Error(Errc::invalid_argument, "entity id has unknown prefix '" + std::string(text) + "'");
  return EntityId(static_cast<EntityKind>(prefix), ts, rnd);
}

std::uint64_t system_clock_ns() {
  auto now = std::chrono::system_clock::now().time_since_epoch();
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(now).count());
}

EntityId draw_id(EntityKind kind, const ClockSource& clock, const RandomSource& rng) {
  return EntityId(kind, clock(), rng());
}

}  // namespace ngf
