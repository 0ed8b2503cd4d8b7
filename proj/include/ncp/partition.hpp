#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ncp/bits.hpp"

namespace ncp {

class UniverseMismatch : public std::invalid_argument {
 public:
  UniverseMismatch(int a, int b);
};

// Text that does not follow the partition/chain grammar. position() is a
// zero-based character offset into the parsed string.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }
  // The message without the position suffix.
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t position_;
  std::string reason_;
};

void check_universe(int n);

// A nonempty subset of {1..n}.
class Block {
 public:
  Block(int n, Mask bits);
  static Block of(int n, std::initializer_list<int> elements);

  int n() const noexcept { return n_; }
  Mask bits() const noexcept { return bits_; }
  int size() const noexcept { return popcount(bits_); }
  bool contains(int e) const noexcept { return has_element(bits_, e); }
  std::string str() const { return digits(bits_); }

  friend bool operator==(const Block&, const Block&) = default;

 private:
  int n_;
  Mask bits_;
};

// a < b < c < d with a,c in first and b,d in second.
struct CrossingWitness {
  int a, b, c, d;
  Mask first;
  Mask second;
  friend bool operator==(const CrossingWitness&, const CrossingWitness&) = default;
};

// Hot-path crossing test on raw masks.
bool masks_cross(Mask s, Mask t) noexcept;

// Lexicographically least alternation, if the blocks are disjoint and cross.
std::optional<CrossingWitness> blocks_cross(const Block& s, const Block& t);

// A set partition of {1..n}. Every element belongs to exactly one part;
// singletons are stored. Parts are ordered by minimum element.
class Partition {
 public:
  // The all-singletons partition.
  explicit Partition(int n);
  // Parts must be nonempty, disjoint and cover {1..n}; any order.
  Partition(int n, std::span<const Mask> parts);
  Partition(int n, std::initializer_list<Mask> parts);
  // Fills in singletons for uncovered elements.
  static Partition from_blocks(int n, std::span<const Mask> blocks);
  static Partition from_blocks(int n, std::initializer_list<Mask> blocks);
  static Partition top(int n);

  int n() const noexcept { return n_; }
  std::span<const Mask> parts() const noexcept { return {parts_.data(), count_}; }
  int part_count() const noexcept { return count_; }
  // Parts of size >= 2.
  std::vector<Mask> blocks() const;
  Mask part_of(int e) const noexcept;
  int rank() const noexcept { return n_ - count_; }

  // Restricted growth string packed four bits per element, element 1 most
  // significant; integer order is lexicographic order on the string.
  std::uint64_t key() const noexcept;

  // Compact notation: blocks of size >= 2 as digit strings joined by ",".
  std::string str() const;

  friend bool operator==(const Partition& a, const Partition& b) noexcept {
    return a.n_ == b.n_ && a.key() == b.key();
  }
  friend std::strong_ordering operator<=>(const Partition& a, const Partition& b) noexcept {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.key() <=> b.key();
  }

 private:
  Partition() = default;
  void normalize();

  std::array<Mask, kMaxN> parts_{};
  std::uint8_t count_ = 0;
  std::uint8_t n_ = 0;
};

// Grammar: block ("," block)*, block := distinct digits 1..n. Blocks that
// cross are accepted; the empty string is the all-singletons partition.
Partition parse_partition(std::string_view text, int n);
// As parse_partition, and rejects crossing input.
Partition parse_noncrossing(std::string_view text, int n);

bool is_noncrossing(const Partition& p) noexcept;
bool partitions_cross(const Partition& p, const Partition& q);
bool leq(const Partition& p, const Partition& q);
inline int rank(const Partition& p) noexcept { return p.rank(); }

// Element i of the dual stands for the gap between i and i+1.
Partition kreweras_dual(const Partition& p);

// Reading direction for the labels of a dual block.
enum class DualOrientation { Increasing, Decreasing };

// The dual assembled from every subset {i_1,...,i_k} (k >= 2, labels read in
// the given direction) whose elements lie in pairwise distinct parts of p
// with i_j + 1 in the part of i_{j+1}, cyclically. Empty when the accepted
// subsets overlap and so do not form a partition.
std::optional<Partition> kreweras_dual_literal(const Partition& p, DualOrientation orientation);

Partition pi_join(const Partition& p, const Partition& q);
Partition pi_meet(const Partition& p, const Partition& q);
// Coarsest non-crossing partition above both.
Partition nc_join(const Partition& p, const Partition& q);

// e -> (reflect ? -e : e) + shift, cyclically on {1..n}.
struct Dihedral {
  int shift = 0;
  bool reflect = false;
  int apply(int e, int n) const noexcept { return wrap((reflect ? -e : e) + shift, n); }
  Mask apply(Mask m, int n) const noexcept;
  friend bool operator==(const Dihedral&, const Dihedral&) = default;
};

// All 2n rotations and reflections, identity first.
std::vector<Dihedral> dihedral_group(int n);
Dihedral rotation(int steps);

Partition apply_symmetry(const Partition& p, const Dihedral& g);
// Least key over the dihedral orbit.
Partition canonical_form(const Partition& p);

}  // namespace ncp
