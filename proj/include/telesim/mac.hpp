#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace telesim {

// 48-bit MAC address. Canonical text form is lowercase colon-separated hex,
// e.g. "aa:bb:cc:dd:ee:ff"; equality is byte equality.
class MacAddr {
 public:
  constexpr MacAddr() : octets_{} {}
  explicit constexpr MacAddr(std::array<std::uint8_t, 6> octets) : octets_(octets) {}

  static MacAddr parse(std::string_view text);

  // Host MACs used throughout the scenarios: 00:00:00:00:00:NN.
  static constexpr MacAddr host(std::uint8_t n) {
    return MacAddr({0, 0, 0, 0, 0, n});
  }

  static constexpr MacAddr broadcast() {
    return MacAddr({0xff, 0xff, 0xff, 0xff, 0xff, 0xff});
  }

  std::string to_string() const;

  const std::array<std::uint8_t, 6>& octets() const { return octets_; }

  bool locally_administered() const { return (octets_[0] & 0x02) != 0; }
  bool multicast() const { return (octets_[0] & 0x01) != 0; }

  auto operator<=>(const MacAddr&) const = default;

 private:
  std::array<std::uint8_t, 6> octets_;
};

}  // namespace telesim
