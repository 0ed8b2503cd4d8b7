#include "ncp/enumeration.hpp"

#include <algorithm>
#include <map>

namespace ncp {

namespace {

// Restricted growth strings in lexicographic order.
void grow(int n, int e, int labels, std::array<Mask, kMaxN>& parts, std::vector<Partition>& out) {
  if (e > n) {
    Partition p(n, std::span<const Mask>(parts.data(), static_cast<std::size_t>(labels)));
    if (is_noncrossing(p)) out.push_back(p);
    return;
  }
  for (int label = 0; label <= labels && label < n; ++label) {
    const Mask saved = parts[label];
    parts[label] |= element_bit(e);
    grow(n, e + 1, std::max(labels, label + 1), parts, out);
    parts[label] = saved;
  }
}

}  // namespace

std::vector<Partition> enumerate_ncp(int n) {
  check_universe(n);
  std::vector<Partition> out;
  std::array<Mask, kMaxN> parts{};
  grow(n, 1, 0, parts, out);
  return out;
}

std::vector<Partition> enumerate_ncp_proper(int n) {
  std::vector<Partition> out;
  for (const Partition& p : enumerate_ncp(n)) {
    if (p.rank() >= 1 && p.rank() <= n - 2) out.push_back(p);
  }
  return out;
}

NcPoset::NcPoset(int n) : n_(n), elements_(enumerate_ncp(n)) {
  const std::size_t size = elements_.size();
  above_.assign(size, Row(size));
  below_.assign(size, Row(size));
  cross_.assign(size, Row(size));
  proper_.resize(size);
  for (std::size_t a = 0; a < size; ++a) {
    index_.emplace(elements_[a].key(), a);
    const int r = elements_[a].rank();
    if (r >= 1 && r <= n - 2) proper_.set(a);
  }
  for (std::size_t a = 0; a < size; ++a) {
    for (std::size_t b = 0; b < size; ++b) {
      if (a == b) continue;
      if (elements_[a].rank() < elements_[b].rank() && leq(elements_[a], elements_[b])) {
        above_[a].set(b);
        below_[b].set(a);
      }
      if (partitions_cross(elements_[a], elements_[b])) cross_[a].set(b);
    }
  }
}

std::optional<std::size_t> NcPoset::index_of(const Partition& p) const {
  if (p.n() != n_) return std::nullopt;
  auto it = index_.find(p.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool NcPoset::has_crossing_pair(const Row& set) const {
  for (auto k = set.find_first(); k != Row::npos; k = set.find_next(k)) {
    if (cross_[k].intersects(set)) return true;
  }
  return false;
}

namespace {

void extend_chain(const NcPoset& poset, const std::vector<std::size_t>& proper, std::vector<std::size_t>& stack,
                  std::optional<RankSet> filter, const std::function<void(const Chain&)>& visit) {
  const std::size_t last = stack.back();
  const int last_rank = poset[last].rank();
  Mask seen = 0;
  for (std::size_t k : stack) seen |= element_bit(poset[k].rank());
  if (!filter || filter->ranks == seen) {
    std::vector<Partition> members;
    for (std::size_t k : stack) members.push_back(poset[k]);
    visit(Chain(std::move(members)));
  }
  for (std::size_t k : proper) {
    if (!poset.strictly_above(last).test(k)) continue;
    const int r = poset[k].rank();
    if (filter) {
      // Only ranks inside the filter, and no skipped rank may be required.
      if (!has_element(filter->ranks, r)) continue;
      bool skips = false;
      for (int between = last_rank + 1; between < r; ++between) skips |= has_element(filter->ranks, between);
      if (skips) continue;
    }
    stack.push_back(k);
    extend_chain(poset, proper, stack, filter, visit);
    stack.pop_back();
  }
}

}  // namespace

void for_each_chain(const NcPoset& poset, std::optional<RankSet> filter,
                    const std::function<void(const Chain&)>& visit) {
  std::vector<std::size_t> proper;
  for (std::size_t k = 0; k < poset.size(); ++k) {
    if (poset.proper().test(k)) proper.push_back(k);
  }
  const int lowest_rank = filter ? lowest_element(filter->ranks) : 0;
  if (filter && filter->ranks == 0) return;
  std::vector<std::size_t> stack;
  for (std::size_t k : proper) {
    if (filter && poset[k].rank() != lowest_rank) continue;
    stack.push_back(k);
    extend_chain(poset, proper, stack, filter, visit);
    stack.pop_back();
  }
}

std::vector<Chain> enumerate_chains(const NcPoset& poset, std::optional<RankSet> filter) {
  std::vector<Chain> out;
  for_each_chain(poset, filter, [&](const Chain& c) { out.push_back(c); });
  return out;
}

std::vector<Chain> enumerate_chains(int n, std::optional<RankSet> filter) {
  if (n > 7) throw std::invalid_argument("full chain enumeration supports n <= 7");
  const NcPoset poset(n);
  return enumerate_chains(poset, filter);
}

namespace {

void extend_maximal(int n, std::vector<Partition>& stack, const std::function<void(std::span<const Partition>)>& visit) {
  const Partition& current = stack.empty() ? Partition(n) : stack.back();
  if (!stack.empty() && stack.back().rank() == n - 2) {
    visit(stack);
    return;
  }
  const Partition base = current;
  const auto parts = base.parts();
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a + 1; b < parts.size(); ++b) {
      const Mask merged = parts[a] | parts[b];
      bool crosses = false;
      for (std::size_t c = 0; c < parts.size() && !crosses; ++c) {
        if (c != a && c != b) crosses = masks_cross(merged, parts[c]);
      }
      if (crosses) continue;
      std::array<Mask, kMaxN> next{};
      std::size_t count = 0;
      for (std::size_t c = 0; c < parts.size(); ++c) {
        if (c != a && c != b) next[count++] = parts[c];
      }
      next[count++] = merged;
      stack.push_back(Partition(n, std::span<const Mask>(next.data(), count)));
      extend_maximal(n, stack, visit);
      stack.pop_back();
    }
  }
}

}  // namespace

void for_each_maximal_chain(int n, const std::function<void(std::span<const Partition>)>& visit) {
  check_universe(n);
  if (n < kMinChainN) throw std::invalid_argument("maximal chains need n >= 3");
  std::vector<Partition> stack;
  stack.reserve(static_cast<std::size_t>(n));
  extend_maximal(n, stack, visit);
}

std::uint64_t count_maximal_chains(int n) {
  std::uint64_t count = 0;
  for_each_maximal_chain(n, [&](std::span<const Partition>) { ++count; });
  return count;
}

std::size_t orbit_size(const Chain& f) {
  std::vector<Chain> images;
  for (const Dihedral& g : dihedral_group(f.n())) images.push_back(apply_symmetry(f, g));
  std::sort(images.begin(), images.end());
  return static_cast<std::size_t>(std::unique(images.begin(), images.end()) - images.begin());
}

std::uint32_t canonical_prime_signature(const Chain& f) {
  std::uint32_t best = UINT32_MAX;
  for (const Dihedral& g : dihedral_group(f.n())) {
    best = std::min(best, smallest_blocks(apply_symmetry(f, g)).prime_signature());
  }
  return best;
}

std::vector<OrbitClass> orbit_classes(std::span<const Chain> chains) {
  std::map<Chain, std::size_t> seen;
  for (const Chain& c : chains) ++seen[canonical_form(c)];
  std::vector<OrbitClass> out;
  std::map<Chain, std::size_t> position;
  for (const auto& [rep, count] : seen) {
    OrbitClass cls{rep, orbit_size(rep), canonical_form(dual_chain(rep)), smallest_blocks(rep).prime_signature(),
                   canonical_prime_signature(rep), std::nullopt, std::nullopt, count};
    position.emplace(rep, out.size());
    out.push_back(std::move(cls));
  }
  std::map<std::uint32_t, std::size_t> first_with_signature;
  for (std::size_t k = 0; k < out.size(); ++k) {
    auto [it, inserted] = first_with_signature.emplace(out[k].canonical_prime_signature, k);
    if (!inserted) out[k].signature_duplicate_of = it->second;
    if (auto d = position.find(out[k].dual_representative); d != position.end()) out[k].dual_class = d->second;
  }
  return out;
}

std::uint64_t catalan(int n) {
  std::vector<std::uint64_t> c(static_cast<std::size_t>(n) + 1, 0);
  c[0] = 1;
  for (int m = 1; m <= n; ++m) {
    for (int k = 0; k < m; ++k) c[m] += c[k] * c[m - 1 - k];
  }
  return c[n];
}

}  // namespace ncp
