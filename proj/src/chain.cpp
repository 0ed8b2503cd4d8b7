#include "ncp/chain.hpp"

#include <algorithm>

#include "ncp/enumeration.hpp"

namespace ncp {

namespace {

void validate_members(const std::vector<Partition>& members) {
  if (members.empty()) throw std::invalid_argument("chain must have at least one member");
  const int n = members.front().n();
  if (n < kMinChainN) throw std::invalid_argument("chains need n >= 3");
  for (std::size_t k = 0; k < members.size(); ++k) {
    const Partition& p = members[k];
    if (p.n() != n) throw UniverseMismatch(n, p.n());
    if (!is_noncrossing(p)) throw std::invalid_argument("chain member \"" + p.str() + "\" is crossing");
    if (p.rank() < 1 || p.rank() > n - 2) {
      throw std::invalid_argument("chain member \"" + p.str() + "\" has rank " + std::to_string(p.rank()) +
                                  " outside 1.." + std::to_string(n - 2));
    }
    if (k == 0) continue;
    const Partition& prev = members[k - 1];
    if (p.rank() == prev.rank()) {
      throw std::invalid_argument("chain members \"" + prev.str() + "\" and \"" + p.str() + "\" are incomparable");
    }
    if (p.rank() < prev.rank()) {
      throw std::invalid_argument("chain members \"" + prev.str() + "\" and \"" + p.str() +
                                  "\" are not in increasing rank order");
    }
    if (!leq(prev, p)) {
      throw std::invalid_argument("chain members \"" + prev.str() + "\" and \"" + p.str() + "\" are incomparable");
    }
  }
}

}  // namespace

Chain::Chain(std::vector<Partition> members) : members_(std::move(members)) { validate_members(members_); }

Chain Chain::from_members(std::vector<Partition> members) {
  std::sort(members.begin(), members.end(),
            [](const Partition& a, const Partition& b) { return a.rank() < b.rank(); });
  return Chain(std::move(members));
}

std::string Chain::str() const {
  std::string out;
  for (const Partition& p : members_) {
    if (!out.empty()) out.push_back('<');
    out += p.str();
  }
  return out;
}

Chain parse_chain(std::string_view text, int n) {
  std::vector<Partition> members;
  std::size_t start = 0;
  while (true) {
    const std::size_t end = text.find('<', start);
    const std::string_view piece = text.substr(start, end == std::string_view::npos ? text.size() - start : end - start);
    if (piece.empty()) throw ParseError("empty chain member", start);
    try {
      members.push_back(parse_noncrossing(piece, n));
    } catch (const ParseError& e) {
      throw ParseError(e.reason(), start + e.position());
    }
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return Chain(std::move(members));
}

Mask neighbours(int i, int n) noexcept {
  return static_cast<Mask>(element_bit(wrap(i - 1, n)) | element_bit(wrap(i + 1, n)));
}

std::uint32_t prime_signature_of(const std::array<Mask, kMaxN>& primes, int n) noexcept {
  std::uint32_t sig = 0;
  for (int i = 1; i <= n; ++i) {
    const Mask p = primes[i - 1];
    if (has_element(p, wrap(i - 1, n))) sig |= 1u << (2 * (i - 1));
    if (has_element(p, wrap(i + 1, n))) sig |= 1u << (2 * (i - 1) + 1);
  }
  return sig;
}

std::uint32_t SmallestBlockFamily::prime_signature() const noexcept { return prime_signature_of(primes, n); }

SmallestBlockFamily smallest_blocks(std::span<const Partition> members) {
  SmallestBlockFamily fam;
  const int n = members.front().n();
  fam.n = n;
  for (int i = 1; i <= n; ++i) {
    Mask smallest = full_mask(n);
    // Members increase, so the first block holding i is the smallest.
    for (const Partition& p : members) {
      const Mask part = p.part_of(i);
      if (popcount(part) >= 2) {
        smallest = part;
        break;
      }
    }
    fam.blocks[i - 1] = smallest;
    fam.primes[i - 1] = static_cast<Mask>(smallest & neighbours(i, n));
  }
  return fam;
}

SmallestBlockFamily smallest_blocks(const Chain& f) { return smallest_blocks(std::span<const Partition>(f.members())); }

std::vector<int> RankSet::rank_list() const {
  std::vector<int> out;
  for_each_element(ranks, [&](int r) { out.push_back(r); });
  return out;
}

std::vector<int> RankSet::corank_list() const {
  std::vector<int> out;
  for_each_element(coranks(), [&](int r) { out.push_back(r); });
  return out;
}

std::string RankSet::str() const { return set_string(ranks); }

RankSet rank_set(const Chain& f) {
  RankSet r{f.n(), 0};
  for (const Partition& p : f.members()) r.ranks |= element_bit(p.rank());
  return r;
}

RankSet dual_rank_set(const RankSet& r) {
  RankSet out{r.n, 0};
  for_each_element(r.ranks, [&](int k) { out.ranks |= element_bit(r.n - 1 - k); });
  return out;
}

bool cond_I(const RankSet& r) {
  const Mask co = r.coranks();
  return (co & static_cast<Mask>(co >> 1)) != 0;
}

bool cond_I(const Chain& f) { return cond_I(rank_set(f)); }

bool is_consecutive(Mask block, int n) {
  if (block == full_mask(n)) return true;
  // Some rotation of the block is an initial segment 1..k.
  for (int shift = 0; shift < n; ++shift) {
    const Mask rotated = rotation(shift).apply(block, n);
    if (rotated == full_mask(popcount(block))) return true;
  }
  return false;
}

bool is_universal(const Partition& p) {
  const auto blocks = p.blocks();
  return blocks.size() == 1 && is_consecutive(blocks.front(), p.n());
}

bool cond_II(const Chain& f) {
  return std::any_of(f.members().begin(), f.members().end(), [](const Partition& p) { return !is_universal(p); });
}

namespace {

// Ordered 4-tuples of distinct members with (m1 ∪ m3) crossing (m2 ∪ m4).
bool four_members_cross(std::span<const Mask> members) {
  const std::size_t m = members.size();
  if (m < 4) return false;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (b == a) continue;
      for (std::size_t c = 0; c < m; ++c) {
        if (c == a || c == b) continue;
        for (std::size_t d = 0; d < m; ++d) {
          if (d == a || d == b || d == c) continue;
          if (masks_cross(members[a] | members[c], members[b] | members[d])) return true;
        }
      }
    }
  }
  return false;
}

}  // namespace

CondIIIClause cond_III_clauses(const Chain& f) {
  CondIIIClause out;
  out.top_crossing = four_members_cross(f.top().parts());
  for (std::size_t k = 0; k + 1 < f.size() && !out.between_crossing; ++k) {
    for (Mask outer : f[k + 1].parts()) {
      std::vector<Mask> inside;
      for (Mask m : f[k].parts()) {
        if (is_subset(m, outer)) inside.push_back(m);
      }
      if (four_members_cross(inside)) {
        out.between_crossing = true;
        break;
      }
    }
  }
  for (Mask m : f.bottom().parts()) {
    if (popcount(m) >= 4) out.bottom_block = true;
  }
  return out;
}

bool cond_III_criterion(const Chain& f) { return cond_III_clauses(f).any(); }

bool cond_III_bruteforce(const Chain& f, const NcPoset& poset) {
  if (poset.n() != f.n()) throw UniverseMismatch(poset.n(), f.n());
  std::vector<std::size_t> idx;
  for (const Partition& p : f.members()) idx.push_back(*poset.index_of(p));
  NcPoset::Row gap = poset.strictly_below(idx.front()) & poset.proper();
  if (poset.has_crossing_pair(gap)) return true;
  for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
    gap = poset.strictly_above(idx[k]) & poset.strictly_below(idx[k + 1]);
    if (poset.has_crossing_pair(gap)) return true;
  }
  gap = poset.strictly_above(idx.back()) & poset.proper();
  return poset.has_crossing_pair(gap);
}

bool cond_III_bruteforce(const Chain& f) {
  if (f.n() > 7) throw std::invalid_argument("cond_III_bruteforce supports n <= 7");
  const NcPoset poset(f.n());
  return cond_III_bruteforce(f, poset);
}

Chain dual_chain(const Chain& f) {
  std::vector<Partition> members;
  for (const Partition& p : f.members()) members.push_back(kreweras_dual(p));
  return Chain::from_members(std::move(members));
}

Chain apply_symmetry(const Chain& f, const Dihedral& g) {
  std::vector<Partition> members;
  for (const Partition& p : f.members()) members.push_back(apply_symmetry(p, g));
  return Chain(std::move(members));
}

Chain canonical_form(const Chain& f) {
  Chain best = f;
  for (const Dihedral& g : dihedral_group(f.n())) {
    Chain image = apply_symmetry(f, g);
    if (image < best) best = std::move(image);
  }
  return best;
}

}  // namespace ncp
