#include "telesim/mac.hpp"

#include <cstdio>

#include "telesim/errors.hpp"

namespace telesim {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

MacAddr MacAddr::parse(std::string_view text) {
  if (text.size() != 17) throw ParseError("bad mac: " + std::string(text));
  std::array<std::uint8_t, 6> out{};
  for (int i = 0; i < 6; ++i) {
    int hi = hex_digit(text[i * 3]);
    int lo = hex_digit(text[i * 3 + 1]);
    if (hi < 0 || lo < 0) throw ParseError("bad mac: " + std::string(text));
    if (i < 5 && text[i * 3 + 2] != ':') throw ParseError("bad mac: " + std::string(text));
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return MacAddr(out);
}

std::string MacAddr::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x", octets_[0],
                octets_[1], octets_[2], octets_[3], octets_[4], octets_[5]);
  return buf;
}

}  // namespace telesim
