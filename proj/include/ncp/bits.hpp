#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace ncp {

// Subsets of the ground set {1..n} as bitmasks; element e lives in bit e-1.
using Mask = std::uint16_t;

// Partitions exist for n >= 1; chains of NCP_n need n >= 3.
inline constexpr int kMinN = 1;
inline constexpr int kMinChainN = 3;
inline constexpr int kMaxN = 9;

constexpr Mask element_bit(int e) { return static_cast<Mask>(1u << (e - 1)); }
constexpr Mask full_mask(int n) { return static_cast<Mask>((1u << n) - 1u); }
constexpr int popcount(Mask m) { return std::popcount(static_cast<unsigned>(m)); }
constexpr int lowest_element(Mask m) { return std::countr_zero(static_cast<unsigned>(m)) + 1; }
constexpr bool has_element(Mask m, int e) { return (m & element_bit(e)) != 0; }
constexpr bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

// Cyclic relabeling into 1..n.
constexpr int wrap(int e, int n) { return ((e - 1) % n + n) % n + 1; }

template <class Fn>
constexpr void for_each_element(Mask m, Fn&& fn) {
  while (m != 0) {
    const int e = lowest_element(m);
    fn(e);
    m &= static_cast<Mask>(m - 1);
  }
}

// "1246" style digit string of the elements, ascending.
inline std::string digits(Mask m) {
  std::string out;
  for_each_element(m, [&](int e) { out.push_back(static_cast<char>('0' + e)); });
  return out;
}

// "{1,2,4}" style set notation; "{}" for the empty set.
inline std::string set_string(Mask m) {
  std::string out = "{";
  bool first = true;
  for_each_element(m, [&](int e) {
    if (!first) out.push_back(',');
    out += std::to_string(e);
    first = false;
  });
  out.push_back('}');
  return out;
}

}  // namespace ncp
