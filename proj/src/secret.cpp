#include "telesim/secret.hpp"

#include <set>

#include "telesim/errors.hpp"

namespace telesim {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

MacAddr mac_from_hash(std::uint64_t h) {
  std::array<std::uint8_t, 6> o{};
  for (int k = 0; k < 6; ++k) o[k] = static_cast<std::uint8_t>(h >> (k * 8));
  o[0] = static_cast<std::uint8_t>((o[0] & 0xfc) | 0x02);  // LA bit, unicast
  return MacAddr(o);
}

}  // namespace

SecretMatrix::SecretMatrix(std::size_t m, std::uint64_t salt)
    : m_(m), salt_(salt) {
  if (m == 0) throw OutOfRange("matrix size must be >= 1");
  // The derivation is collision-resistant in practice; verify anyway so the
  // all-distinct invariant is a constructor guarantee, not a hope.
  std::set<MacAddr> macs;
  std::set<std::uint64_t> dpids;
  for (std::size_t i = 1; i <= m_; ++i) {
    for (std::size_t j = 1; j <= m_; ++j) {
      if (!macs.insert(mac(i, j)).second)
        throw SimError("secret matrix MAC collision; change salt");
      if (!dpids.insert(dpid(i, j).value).second)
        throw SimError("secret matrix DPID collision; change salt");
    }
  }
}

void SecretMatrix::check(std::size_t i, std::size_t j) const {
  if (i < 1 || i > m_ || j < 1 || j > m_)
    throw OutOfRange("matrix index (" + std::to_string(i) + "," +
                     std::to_string(j) + ") outside [1," + std::to_string(m_) +
                     "]");
}

std::uint64_t SecretMatrix::cell_hash(std::size_t i, std::size_t j) const {
  return splitmix64(salt_ ^ splitmix64(i * 0x100000001b3ull + j));
}

MacAddr SecretMatrix::mac(std::size_t i, std::size_t j) const {
  check(i, j);
  return mac_from_hash(cell_hash(i, j));
}

DatapathId SecretMatrix::dpid(std::size_t i, std::size_t j) const {
  check(i, j);
  std::uint64_t v = splitmix64(cell_hash(i, j));
  if (v == 0) v = 1;
  return DatapathId{v};
}

std::optional<std::pair<std::size_t, std::size_t>> SecretMatrix::find_mac(
    const MacAddr& a) const {
  for (std::size_t i = 1; i <= m_; ++i)
    for (std::size_t j = 1; j <= m_; ++j)
      if (mac(i, j) == a) return std::make_pair(i, j);
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> SecretMatrix::find_dpid(
    DatapathId d) const {
  for (std::size_t i = 1; i <= m_; ++i)
    for (std::size_t j = 1; j <= m_; ++j)
      if (dpid(i, j) == d) return std::make_pair(i, j);
  return std::nullopt;
}

}  // namespace telesim
