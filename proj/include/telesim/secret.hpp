#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "telesim/mac.hpp"
#include "telesim/messages.hpp"

namespace telesim {

// Pre-shared m x m matrix of rendezvous identities. Entry (i, j) is an
// ordered pair: (i, j) and (j, i) are distinct. MACs are derived
// deterministically from (i, j, salt), always locally administered unicast,
// and pairwise distinct across the whole matrix. The same derivation,
// mapped into 64-bit space, yields the DPID matrix.
class SecretMatrix {
 public:
  SecretMatrix(std::size_t m, std::uint64_t salt);

  std::size_t size() const { return m_; }
  std::uint64_t salt() const { return salt_; }

  // 1-based indices; throws OutOfRange outside [1, m].
  MacAddr mac(std::size_t i, std::size_t j) const;
  DatapathId dpid(std::size_t i, std::size_t j) const;

  // Reverse lookup: (i, j) such that mac(i, j) == m, if any.
  std::optional<std::pair<std::size_t, std::size_t>> find_mac(const MacAddr& a) const;
  std::optional<std::pair<std::size_t, std::size_t>> find_dpid(DatapathId d) const;

 private:
  void check(std::size_t i, std::size_t j) const;
  std::uint64_t cell_hash(std::size_t i, std::size_t j) const;

  std::size_t m_;
  std::uint64_t salt_;
};

}  // namespace telesim
