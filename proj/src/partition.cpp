#include "ncp/partition.hpp"

#include <algorithm>
#include <numeric>

namespace ncp {

UniverseMismatch::UniverseMismatch(int a, int b)
    : std::invalid_argument("universe mismatch: n=" + std::to_string(a) + " vs n=" + std::to_string(b)) {}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position), reason_(what) {}

void check_universe(int n) {
  if (n < kMinN || n > kMaxN) {
    throw std::invalid_argument("n must lie in " + std::to_string(kMinN) + ".." + std::to_string(kMaxN) +
                                ", got " + std::to_string(n));
  }
}

namespace {

void same_universe(int a, int b) {
  if (a != b) throw UniverseMismatch(a, b);
}

}  // namespace

Block::Block(int n, Mask bits) : n_(n), bits_(bits) {
  check_universe(n);
  if (bits == 0) throw std::invalid_argument("block must be nonempty");
  if (!is_subset(bits, full_mask(n))) throw std::invalid_argument("block element exceeds n");
}

Block Block::of(int n, std::initializer_list<int> elements) {
  Mask m = 0;
  for (int e : elements) {
    if (e < 1 || e > n) throw std::invalid_argument("block element out of range");
    m |= element_bit(e);
  }
  return Block(n, m);
}

bool masks_cross(Mask s, Mask t) noexcept {
  if ((s & t) != 0 || s == 0 || t == 0) return false;
  // Disjoint blocks cross iff the labels along 1..n form at least four runs.
  const Mask both = s | t;
  int runs = 0;
  int last = -1;
  for_each_element(both, [&](int e) {
    const int label = has_element(s, e) ? 0 : 1;
    if (label != last) {
      ++runs;
      last = label;
    }
  });
  return runs >= 4;
}

std::optional<CrossingWitness> blocks_cross(const Block& s, const Block& t) {
  same_universe(s.n(), t.n());
  if ((s.bits() & t.bits()) != 0) return std::nullopt;
  const int n = s.n();
  auto side = [&](int e) { return s.contains(e) ? 0 : (t.contains(e) ? 1 : -1); };
  for (int a = 1; a <= n; ++a) {
    if (side(a) < 0) continue;
    for (int b = a + 1; b <= n; ++b) {
      if (side(b) != 1 - side(a)) continue;
      for (int c = b + 1; c <= n; ++c) {
        if (side(c) != side(a)) continue;
        for (int d = c + 1; d <= n; ++d) {
          if (side(d) != side(b)) continue;
          const Mask first = side(a) == 0 ? s.bits() : t.bits();
          const Mask second = side(a) == 0 ? t.bits() : s.bits();
          return CrossingWitness{a, b, c, d, first, second};
        }
      }
    }
  }
  return std::nullopt;
}

Partition::Partition(int n) {
  check_universe(n);
  n_ = static_cast<std::uint8_t>(n);
  count_ = static_cast<std::uint8_t>(n);
  for (int e = 1; e <= n; ++e) parts_[e - 1] = element_bit(e);
}

Partition::Partition(int n, std::span<const Mask> parts) {
  check_universe(n);
  n_ = static_cast<std::uint8_t>(n);
  Mask seen = 0;
  for (Mask m : parts) {
    if (m == 0) throw std::invalid_argument("partition part must be nonempty");
    if (!is_subset(m, full_mask(n))) throw std::invalid_argument("partition part exceeds n");
    if ((seen & m) != 0) throw std::invalid_argument("partition parts overlap");
    seen |= m;
    parts_[count_++] = m;
  }
  if (seen != full_mask(n)) throw std::invalid_argument("partition parts do not cover 1..n");
  normalize();
}

Partition::Partition(int n, std::initializer_list<Mask> parts)
    : Partition(n, std::span<const Mask>(parts.begin(), parts.size())) {}

Partition Partition::from_blocks(int n, std::span<const Mask> blocks) {
  check_universe(n);
  std::vector<Mask> parts(blocks.begin(), blocks.end());
  Mask seen = 0;
  for (Mask m : blocks) {
    if ((seen & m) != 0) throw std::invalid_argument("partition parts overlap");
    seen |= m;
  }
  for (int e = 1; e <= n; ++e) {
    if (!has_element(seen, e)) parts.push_back(element_bit(e));
  }
  return Partition(n, parts);
}

Partition Partition::from_blocks(int n, std::initializer_list<Mask> blocks) {
  return from_blocks(n, std::span<const Mask>(blocks.begin(), blocks.size()));
}

Partition Partition::top(int n) {
  const Mask all = full_mask(n);
  return Partition(n, std::span<const Mask>(&all, 1));
}

void Partition::normalize() {
  std::sort(parts_.begin(), parts_.begin() + count_,
            [](Mask a, Mask b) { return lowest_element(a) < lowest_element(b); });
}

std::vector<Mask> Partition::blocks() const {
  std::vector<Mask> out;
  for (Mask m : parts()) {
    if (popcount(m) >= 2) out.push_back(m);
  }
  return out;
}

Mask Partition::part_of(int e) const noexcept {
  for (Mask m : parts()) {
    if (has_element(m, e)) return m;
  }
  return 0;
}

std::uint64_t Partition::key() const noexcept {
  std::uint64_t key = 0;
  for (int label = 0; label < count_; ++label) {
    for_each_element(parts_[label], [&](int e) {
      key |= static_cast<std::uint64_t>(label) << (4 * (n_ - e));
    });
  }
  return key;
}

std::string Partition::str() const {
  std::string out;
  for (Mask m : blocks()) {
    if (!out.empty()) out.push_back(',');
    out += digits(m);
  }
  return out;
}

Partition parse_partition(std::string_view text, int n) {
  check_universe(n);
  std::vector<Mask> blocks;
  Mask seen = 0;
  Mask current = 0;
  bool pending = false;
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (ch == ',') {
      if (!pending) throw ParseError("empty block", pos);
      blocks.push_back(current);
      current = 0;
      pending = false;
      continue;
    }
    if (ch < '1' || ch > '9') throw ParseError(std::string("unexpected character '") + ch + "'", pos);
    const int e = ch - '0';
    if (e > n) throw ParseError("element " + std::to_string(e) + " exceeds n=" + std::to_string(n), pos);
    if (has_element(seen, e)) throw ParseError("repeated element " + std::to_string(e), pos);
    seen |= element_bit(e);
    current |= element_bit(e);
    pending = true;
  }
  if (pending) {
    blocks.push_back(current);
  } else if (!text.empty()) {
    throw ParseError("empty block", text.size());
  }
  return Partition::from_blocks(n, blocks);
}

Partition parse_noncrossing(std::string_view text, int n) {
  Partition p = parse_partition(text, n);
  if (!is_noncrossing(p)) throw ParseError("partition \"" + std::string(text) + "\" is crossing", 0);
  return p;
}

bool is_noncrossing(const Partition& p) noexcept {
  const auto parts = p.parts();
  for (std::size_t a = 0; a < parts.size(); ++a) {
    if (popcount(parts[a]) < 2) continue;
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      if (masks_cross(parts[a], parts[b])) return false;
    }
  }
  return true;
}

bool partitions_cross(const Partition& p, const Partition& q) {
  same_universe(p.n(), q.n());
  for (Mask s : p.parts()) {
    if (popcount(s) < 2) continue;
    for (Mask t : q.parts()) {
      if (masks_cross(s, t)) return true;
    }
  }
  return false;
}

bool leq(const Partition& p, const Partition& q) {
  same_universe(p.n(), q.n());
  for (Mask s : p.parts()) {
    if (!is_subset(s, q.part_of(lowest_element(s)))) return false;
  }
  return true;
}

Partition kreweras_dual(const Partition& p) {
  if (!is_noncrossing(p)) throw std::invalid_argument("kreweras_dual needs a non-crossing partition: " + p.str());
  const int n = p.n();
  // Predecessor of e inside its part, cyclically in increasing order.
  auto previous_in_part = [&](int e) {
    const Mask part = p.part_of(e);
    for (int step = 1; step <= n; ++step) {
      const int cand = wrap(e - step, n);
      if (has_element(part, cand)) return cand;
    }
    return e;
  };
  std::array<int, kMaxN + 1> next{};
  for (int i = 1; i <= n; ++i) next[i] = previous_in_part(wrap(i + 1, n));
  std::vector<Mask> parts;
  Mask seen = 0;
  for (int i = 1; i <= n; ++i) {
    if (has_element(seen, i)) continue;
    Mask cycle = 0;
    for (int e = i; !has_element(cycle, e); e = next[e]) cycle |= element_bit(e);
    seen |= cycle;
    parts.push_back(cycle);
  }
  return Partition(n, parts);
}

std::optional<Partition> kreweras_dual_literal(const Partition& p, DualOrientation orientation) {
  const int n = p.n();
  std::vector<Mask> accepted;
  for (unsigned bits = 1; bits <= full_mask(n); ++bits) {
    const Mask subset = static_cast<Mask>(bits);
    if (popcount(subset) < 2) continue;
    std::vector<int> labels;
    for_each_element(subset, [&](int e) { labels.push_back(e); });
    if (orientation == DualOrientation::Decreasing) std::reverse(labels.begin(), labels.end());
    const std::size_t k = labels.size();
    Mask members_used = 0;
    bool distinct = true;
    for (int e : labels) {
      const Mask member = p.part_of(e);
      const Mask marker = element_bit(lowest_element(member));
      if ((members_used & marker) != 0) distinct = false;
      members_used |= marker;
    }
    if (!distinct) continue;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      const int shifted = wrap(labels[j] + 1, n);
      ok = p.part_of(shifted) == p.part_of(labels[(j + 1) % k]);
    }
    if (ok) accepted.push_back(subset);
  }
  Mask seen = 0;
  for (Mask m : accepted) {
    if ((seen & m) != 0) return std::nullopt;
    seen |= m;
  }
  return Partition::from_blocks(n, accepted);
}

Partition pi_join(const Partition& p, const Partition& q) {
  same_universe(p.n(), q.n());
  std::vector<Mask> groups(p.parts().begin(), p.parts().end());
  for (Mask t : q.parts()) {
    Mask merged = t;
    std::vector<Mask> rest;
    for (Mask g : groups) {
      if ((g & merged) != 0) {
        merged |= g;
      } else {
        rest.push_back(g);
      }
    }
    rest.push_back(merged);
    groups = std::move(rest);
  }
  return Partition(p.n(), groups);
}

Partition pi_meet(const Partition& p, const Partition& q) {
  same_universe(p.n(), q.n());
  std::vector<Mask> parts;
  for (Mask s : p.parts()) {
    for (Mask t : q.parts()) {
      if ((s & t) != 0) parts.push_back(s & t);
    }
  }
  return Partition(p.n(), parts);
}

Partition nc_join(const Partition& p, const Partition& q) {
  Partition joined = pi_join(p, q);
  std::vector<Mask> parts(joined.parts().begin(), joined.parts().end());
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t a = 0; a < parts.size() && !merged; ++a) {
      for (std::size_t b = a + 1; b < parts.size() && !merged; ++b) {
        if (masks_cross(parts[a], parts[b])) {
          parts[a] |= parts[b];
          parts.erase(parts.begin() + static_cast<std::ptrdiff_t>(b));
          merged = true;
        }
      }
    }
  }
  return Partition(p.n(), parts);
}

Mask Dihedral::apply(Mask m, int n) const noexcept {
  Mask out = 0;
  for_each_element(m, [&](int e) { out |= element_bit(apply(e, n)); });
  return out;
}

std::vector<Dihedral> dihedral_group(int n) {
  std::vector<Dihedral> group;
  for (bool reflect : {false, true}) {
    for (int shift = 0; shift < n; ++shift) group.push_back({shift, reflect});
  }
  return group;
}

Dihedral rotation(int steps) { return Dihedral{steps, false}; }

Partition apply_symmetry(const Partition& p, const Dihedral& g) {
  std::array<Mask, kMaxN> parts{};
  const auto src = p.parts();
  for (std::size_t k = 0; k < src.size(); ++k) parts[k] = g.apply(src[k], p.n());
  return Partition(p.n(), std::span<const Mask>(parts.data(), src.size()));
}

Partition canonical_form(const Partition& p) {
  Partition best = p;
  for (const Dihedral& g : dihedral_group(p.n())) {
    Partition image = apply_symmetry(p, g);
    if (image < best) best = image;
  }
  return best;
}

}  // namespace ncp
