#pragma once

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "ncp/partition.hpp"

namespace ncp {

class NcPoset;

// A nonempty strictly increasing sequence of non-crossing partitions with
// ranks in 1..n-2.
class Chain {
 public:
  // Members must already be listed in increasing order.
  explicit Chain(std::vector<Partition> members);
  // Sorts by rank first; used where the input order carries no meaning.
  static Chain from_members(std::vector<Partition> members);

  int n() const noexcept { return members_.front().n(); }
  std::size_t size() const noexcept { return members_.size(); }
  const std::vector<Partition>& members() const noexcept { return members_; }
  const Partition& bottom() const noexcept { return members_.front(); }
  const Partition& top() const noexcept { return members_.back(); }
  const Partition& operator[](std::size_t k) const noexcept { return members_[k]; }

  // "12<12346".
  std::string str() const;

  friend bool operator==(const Chain&, const Chain&) = default;
  friend std::strong_ordering operator<=>(const Chain& a, const Chain& b) noexcept {
    if (auto c = a.members_.size() <=> b.members_.size(); c != 0) return c;
    for (std::size_t k = 0; k < a.members_.size(); ++k) {
      if (auto c = a.members_[k] <=> b.members_[k]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

 private:
  std::vector<Partition> members_;
};

// chain := partition ("<" partition)*.
Chain parse_chain(std::string_view text, int n);

// F_i: smallest block of a member containing i, or the full set when i is a
// singleton in every member. F_i' = F_i ∩ {i-1, i+1}, cyclically.
struct SmallestBlockFamily {
  int n = 0;
  std::array<Mask, kMaxN> blocks{};
  std::array<Mask, kMaxN> primes{};

  Mask block(int i) const noexcept { return blocks[i - 1]; }
  Mask prime(int i) const noexcept { return primes[i - 1]; }
  // Bit 2(i-1) holds "i-1 ∈ F_i'" and bit 2(i-1)+1 holds "i+1 ∈ F_i'".
  std::uint32_t prime_signature() const noexcept;

  friend bool operator==(const SmallestBlockFamily&, const SmallestBlockFamily&) = default;
};

SmallestBlockFamily smallest_blocks(const Chain& f);
// Same rule on a raw member list sorted by rank (maximal chains use this).
SmallestBlockFamily smallest_blocks(std::span<const Partition> members);
Mask neighbours(int i, int n) noexcept;
std::uint32_t prime_signature_of(const std::array<Mask, kMaxN>& primes, int n) noexcept;

struct RankSet {
  int n = 0;
  Mask ranks = 0;  // bit r-1 set for rank r
  Mask coranks() const noexcept { return static_cast<Mask>(full_mask(n - 2) & ~ranks); }
  std::vector<int> rank_list() const;
  std::vector<int> corank_list() const;
  std::string str() const;
  friend bool operator==(const RankSet&, const RankSet&) = default;
};

RankSet rank_set(const Chain& f);
RankSet dual_rank_set(const RankSet& r);

bool cond_I(const RankSet& r);
bool cond_I(const Chain& f);
// Exactly one block and that block cyclically consecutive.
bool is_universal(const Partition& p);
bool is_consecutive(Mask block, int n);
bool cond_II(const Chain& f);

struct CondIIIClause {
  bool top_crossing = false;     // four members of the top member
  bool between_crossing = false;  // four members of P_i inside one part of P_{i+1}
  bool bottom_block = false;      // a part of the bottom member with >= 4 elements
  bool any() const noexcept { return top_crossing || between_crossing || bottom_block; }
};

CondIIIClause cond_III_clauses(const Chain& f);
bool cond_III_criterion(const Chain& f);

// Exhaustive search for crossing P+, P- in one of the gaps of the chain.
// Requires n <= 7.
bool cond_III_bruteforce(const Chain& f, const NcPoset& poset);
bool cond_III_bruteforce(const Chain& f);

Chain dual_chain(const Chain& f);
Chain apply_symmetry(const Chain& f, const Dihedral& g);
Chain canonical_form(const Chain& f);

}  // namespace ncp
