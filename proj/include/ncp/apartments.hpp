#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ncp/chain.hpp"

namespace ncp {

// n-1 pairwise non-crossing chords forming a spanning tree of {1..n}.
class NcSpanningTree {
 public:
  using Edge = std::pair<int, int>;  // first < second

  NcSpanningTree(int n, std::vector<Edge> edges);

  int n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  Mask adjacent(int v) const noexcept { return adjacency_[v - 1]; }

  // "1-2,2-3".
  std::string str() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::array<Mask, kMaxN> adjacency_{};
};

NcSpanningTree parse_tree(std::string_view text, int n);

// Each tree once, edges in lexicographic order.
std::vector<NcSpanningTree> enumerate_nc_spanning_trees(int n);

// Every part of p induces a connected subgraph of the tree.
bool apartment_contains(const NcSpanningTree& tree, const Partition& p);

struct DominanceReport {
  std::optional<Partition> dominant;
  // Every dominant member found; more than one would contradict uniqueness.
  std::vector<Partition> all_dominant;
  std::size_t checked_trees = 0;
};

// Apartment membership of every proper non-crossing partition as bitsets
// over the tree list, for scanning many chains.
class ApartmentIndex {
 public:
  using Row = boost::dynamic_bitset<std::uint64_t>;

  explicit ApartmentIndex(int n);

  int n() const noexcept { return n_; }
  const std::vector<NcSpanningTree>& trees() const noexcept { return trees_; }
  const Row& trees_containing(const Partition& p) const;
  DominanceReport dominant_vertex(const Chain& f) const;

 private:
  int n_;
  std::vector<NcSpanningTree> trees_;
  std::vector<Partition> partitions_;
  std::vector<Row> rows_;
};

DominanceReport dominant_vertex(const Chain& f);
bool cond_IV_prime(const Chain& f);
// Decided from an already computed dominance report.
bool cond_IV_prime(const DominanceReport& dominance);

}  // namespace ncp
