#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "ncp/chain.hpp"
#include "ncp/partition.hpp"

namespace ncp {

// Every non-crossing partition of {1..n} once, in increasing key order.
std::vector<Partition> enumerate_ncp(int n);
// Restricted to ranks 1..n-2.
std::vector<Partition> enumerate_ncp_proper(int n);

// NC(n) with its order and crossing relations precomputed as bitsets.
class NcPoset {
 public:
  using Row = boost::dynamic_bitset<std::uint64_t>;

  explicit NcPoset(int n);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const std::vector<Partition>& elements() const noexcept { return elements_; }
  const Partition& operator[](std::size_t k) const noexcept { return elements_[k]; }
  std::optional<std::size_t> index_of(const Partition& p) const;

  const Row& strictly_above(std::size_t k) const noexcept { return above_[k]; }
  const Row& strictly_below(std::size_t k) const noexcept { return below_[k]; }
  const Row& crossing(std::size_t k) const noexcept { return cross_[k]; }
  // Elements with rank in 1..n-2.
  const Row& proper() const noexcept { return proper_; }

  // Whether two crossing elements lie in the given set.
  bool has_crossing_pair(const Row& set) const;

 private:
  int n_;
  std::vector<Partition> elements_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  std::vector<Row> above_;
  std::vector<Row> below_;
  std::vector<Row> cross_;
  Row proper_;
};

// Exact rank-set match when a filter is given. Visits chains in
// lexicographic order of member indices into enumerate_ncp_proper(n).
void for_each_chain(const NcPoset& poset, std::optional<RankSet> filter,
                    const std::function<void(const Chain&)>& visit);
std::vector<Chain> enumerate_chains(int n, std::optional<RankSet> filter = std::nullopt);
std::vector<Chain> enumerate_chains(const NcPoset& poset, std::optional<RankSet> filter = std::nullopt);

// Depth-first over merges of two parts, bottom-up. The visitor receives the
// members of ranks 1..n-2 in order.
void for_each_maximal_chain(int n, const std::function<void(std::span<const Partition>)>& visit);
std::uint64_t count_maximal_chains(int n);

struct OrbitClass {
  Chain representative;
  std::size_t orbit_size = 0;
  Chain dual_representative;
  // Indexed tuple (F_1', ..., F_n') of the representative, recomputed.
  std::uint32_t prime_signature = 0;
  // Least prime signature over the dihedral orbit.
  std::uint32_t canonical_prime_signature = 0;
  // Index of an earlier class with the same canonical signature.
  std::optional<std::size_t> signature_duplicate_of;
  // Position of the dual class in the returned list, when present.
  std::optional<std::size_t> dual_class;
  std::size_t members_seen = 0;
};

std::size_t orbit_size(const Chain& f);
std::uint32_t canonical_prime_signature(const Chain& f);

// Classes in increasing order of representative.
std::vector<OrbitClass> orbit_classes(std::span<const Chain> chains);

// Catalan numbers through the convolution recurrence.
std::uint64_t catalan(int n);

}  // namespace ncp
