#include "ncp/apartments.hpp"

#include <algorithm>

#include "ncp/condition_four.hpp"
#include "ncp/enumeration.hpp"

namespace ncp {

namespace {

Mask component_of(const std::array<Mask, kMaxN>& adjacency, int start, Mask within) {
  Mask reached = element_bit(start);
  Mask frontier = reached;
  while (frontier != 0) {
    Mask next = 0;
    for_each_element(frontier, [&](int v) { next |= adjacency[v - 1]; });
    next = static_cast<Mask>(next & within & ~reached);
    reached |= next;
    frontier = next;
  }
  return reached;
}

bool chords_cross(const NcSpanningTree::Edge& a, const NcSpanningTree::Edge& b) {
  return masks_cross(static_cast<Mask>(element_bit(a.first) | element_bit(a.second)),
                     static_cast<Mask>(element_bit(b.first) | element_bit(b.second)));
}

}  // namespace

NcSpanningTree::NcSpanningTree(int n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
  check_universe(n);
  for (Edge& e : edges_) {
    if (e.first > e.second) std::swap(e.first, e.second);
    if (e.first < 1 || e.second > n || e.first == e.second) throw std::invalid_argument("bad tree edge");
    adjacency_[e.first - 1] |= element_bit(e.second);
    adjacency_[e.second - 1] |= element_bit(e.first);
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) throw std::invalid_argument("repeated tree edge");
  if (static_cast<int>(edges_.size()) != n - 1) throw std::invalid_argument("a spanning tree has n-1 edges");
  if (component_of(adjacency_, 1, full_mask(n)) != full_mask(n)) throw std::invalid_argument("tree is not connected");
  for (std::size_t a = 0; a < edges_.size(); ++a) {
    for (std::size_t b = a + 1; b < edges_.size(); ++b) {
      if (chords_cross(edges_[a], edges_[b])) throw std::invalid_argument("tree edges cross");
    }
  }
}

std::string NcSpanningTree::str() const {
  std::string out;
  for (const Edge& e : edges_) {
    if (!out.empty()) out.push_back(',');
    out += std::to_string(e.first) + "-" + std::to_string(e.second);
  }
  return out;
}

NcSpanningTree parse_tree(std::string_view text, int n) {
  std::vector<NcSpanningTree::Edge> edges;
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (pos + 3 > text.size() || text[pos + 1] != '-' || text[pos] < '1' || text[pos] > '9' || text[pos + 2] < '1' ||
        text[pos + 2] > '9') {
      throw ParseError("expected edge \"a-b\"", pos);
    }
    edges.emplace_back(text[pos] - '0', text[pos + 2] - '0');
    pos += 3;
    if (pos < text.size()) {
      if (text[pos] != ',') throw ParseError("expected ','", pos);
      ++pos;
    }
  }
  return NcSpanningTree(n, std::move(edges));
}

namespace {

void grow_forest(int n, const std::vector<NcSpanningTree::Edge>& chords, std::size_t from,
                 std::vector<NcSpanningTree::Edge>& chosen, std::array<int, kMaxN + 1>& root,
                 std::vector<NcSpanningTree>& out) {
  if (static_cast<int>(chosen.size()) == n - 1) {
    out.emplace_back(n, chosen);
    return;
  }
  const std::size_t still_needed = static_cast<std::size_t>(n - 1) - chosen.size();
  for (std::size_t k = from; k + still_needed <= chords.size(); ++k) {
    const auto& e = chords[k];
    auto find = [&](int v) {
      while (root[v] != v) v = root[v];
      return v;
    };
    const int ra = find(e.first), rb = find(e.second);
    if (ra == rb) continue;
    if (std::any_of(chosen.begin(), chosen.end(), [&](const auto& c) { return chords_cross(c, e); })) continue;
    const auto saved = root;
    root[std::max(ra, rb)] = std::min(ra, rb);
    chosen.push_back(e);
    grow_forest(n, chords, k + 1, chosen, root, out);
    chosen.pop_back();
    root = saved;
  }
}

}  // namespace

std::vector<NcSpanningTree> enumerate_nc_spanning_trees(int n) {
  check_universe(n);
  std::vector<NcSpanningTree::Edge> chords;
  for (int a = 1; a <= n; ++a) {
    for (int b = a + 1; b <= n; ++b) chords.emplace_back(a, b);
  }
  std::vector<NcSpanningTree> out;
  std::vector<NcSpanningTree::Edge> chosen;
  std::array<int, kMaxN + 1> root{};
  for (int v = 0; v <= kMaxN; ++v) root[v] = v;
  grow_forest(n, chords, 0, chosen, root, out);
  return out;
}

bool apartment_contains(const NcSpanningTree& tree, const Partition& p) {
  if (tree.n() != p.n()) throw UniverseMismatch(tree.n(), p.n());
  std::array<Mask, kMaxN> adjacency{};
  for (int v = 1; v <= tree.n(); ++v) adjacency[v - 1] = tree.adjacent(v);
  for (Mask part : p.parts()) {
    if (popcount(part) < 2) continue;
    if (component_of(adjacency, lowest_element(part), part) != part) return false;
  }
  return true;
}

ApartmentIndex::ApartmentIndex(int n) : n_(n), trees_(enumerate_nc_spanning_trees(n)), partitions_(enumerate_ncp(n)) {
  rows_.assign(partitions_.size(), Row(trees_.size()));
  for (std::size_t p = 0; p < partitions_.size(); ++p) {
    for (std::size_t t = 0; t < trees_.size(); ++t) {
      if (apartment_contains(trees_[t], partitions_[p])) rows_[p].set(t);
    }
  }
}

const ApartmentIndex::Row& ApartmentIndex::trees_containing(const Partition& p) const {
  const auto it = std::lower_bound(partitions_.begin(), partitions_.end(), p);
  if (it == partitions_.end() || *it != p) throw std::invalid_argument("not a non-crossing partition of this n");
  return rows_[static_cast<std::size_t>(it - partitions_.begin())];
}

DominanceReport ApartmentIndex::dominant_vertex(const Chain& f) const {
  if (f.n() != n_) throw UniverseMismatch(n_, f.n());
  DominanceReport report;
  report.checked_trees = trees_.size();
  Row all_of_f(trees_.size());
  all_of_f.set();
  for (const Partition& p : f.members()) all_of_f &= trees_containing(p);
  for (const Partition& u : f.members()) {
    if (trees_containing(u).is_subset_of(all_of_f)) report.all_dominant.push_back(u);
  }
  if (report.all_dominant.size() == 1) report.dominant = report.all_dominant.front();
  return report;
}

DominanceReport dominant_vertex(const Chain& f) {
  DominanceReport report;
  const auto trees = enumerate_nc_spanning_trees(f.n());
  report.checked_trees = trees.size();
  for (const Partition& u : f.members()) {
    const bool dominant = std::all_of(trees.begin(), trees.end(), [&](const NcSpanningTree& t) {
      if (!apartment_contains(t, u)) return true;
      return std::all_of(f.members().begin(), f.members().end(),
                         [&](const Partition& p) { return apartment_contains(t, p); });
    });
    if (dominant) report.all_dominant.push_back(u);
  }
  if (report.all_dominant.size() == 1) report.dominant = report.all_dominant.front();
  return report;
}

bool cond_IV_prime(const DominanceReport& dominance) {
  if (!dominance.dominant) return true;
  return cond_IV(Chain({*dominance.dominant})).holds();
}

bool cond_IV_prime(const Chain& f) { return cond_IV_prime(dominant_vertex(f)); }

}  // namespace ncp
