#pragma once

#include <array>
#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ncp/chain.hpp"

namespace ncp {

// ---------------------------------------------------------------------------
// Patterns (k, ±, i)(m)
// ---------------------------------------------------------------------------

enum class Sign { Plus, Minus };

// How bare ⊇ / ⊆ in a pattern clause are read.
enum class InclusionConvention { NonStrict, Strict };

// Relation between consecutive terms F_{i±j} and F_{i±(j+1)} of a clause.
enum class Relation { Equal, Superset, Subset };

struct PatternHit {
  int k = 0;
  Sign sign = Sign::Plus;
  int i = 0;
  int variant = 0;

  std::string str() const;  // "(4,-,3)(6)"
  friend bool operator==(const PatternHit&, const PatternHit&) = default;
  friend auto operator<=>(const PatternHit&, const PatternHit&) = default;
};

// "(k,s,i)(m)" with s one of + - − .
PatternHit parse_pattern_hit(std::string_view text);

// Clause m of family k is pattern_clauses(k)[m-1].
std::span<const std::vector<Relation>> pattern_clauses(int k);

bool pattern_holds(const SmallestBlockFamily& fam, const PatternHit& hit,
                   InclusionConvention convention = InclusionConvention::NonStrict);

// All hits over k in 1..4, both signs, every base index and variant, sorted.
std::vector<PatternHit> detect_patterns(const SmallestBlockFamily& fam,
                                        InclusionConvention convention = InclusionConvention::NonStrict);
std::vector<PatternHit> detect_patterns(const Chain& f,
                                        InclusionConvention convention = InclusionConvention::NonStrict);

// Elements a hit removes from C_i: i+1..i+k for +, i-k..i-1 for -.
Mask excluded_range(const PatternHit& hit, int n) noexcept;

// ---------------------------------------------------------------------------
// Exclusions and their consequences
// ---------------------------------------------------------------------------

struct ExclusionTable {
  int n = 0;
  std::array<Mask, kMaxN> excluded{};

  Mask excluded_at(int i) const noexcept { return excluded[i - 1]; }
  // Elements other than i that an admissible C_i may still contain.
  Mask allowed_companions(int i) const noexcept {
    return static_cast<Mask>(full_mask(n) & ~excluded[i - 1] & ~element_bit(i));
  }
};

// Union of pattern ranges plus F_i' itself.
ExclusionTable lemma3_exclusions(const Chain& f);
ExclusionTable lemma3_exclusions(const SmallestBlockFamily& fam, std::span<const PatternHit> hits);

// First index whose exclusions leave no companion.
std::optional<int> corollary4(const Chain& f);

// ---------------------------------------------------------------------------
// Refutation certificates
// ---------------------------------------------------------------------------

enum class StepKind { Exclusion, Forced, Propagate, Conflict };
enum class ExclusionReason { Pattern, Neighbour, Subset };
enum class ConflictKind { Emptiness, ForcedMismatch, ForcedCrossing };

// One deduction about the smallest-block family C of a hypothetical
// maximal chain with F_j' ∩ C_j' = ∅ for every j.
//   Exclusion  set ∩ C_index = ∅ (by a pattern, by F_index', or because
//              C_source is known and meets an element already excluded).
//   Forced     C_index = set, the only two-element option left.
//   Propagate  C_index = set because index ∈ C_source = set.
//   Conflict   Emptiness: no companion left for index.
//              ForcedMismatch: C_source = set forces C_index = set, which
//              disagrees with the known C_index or its exclusions.
//              ForcedCrossing: known C_index and C_other cross or overlap
//              without nesting.
struct CertificateStep {
  StepKind kind = StepKind::Exclusion;
  int index = 0;
  Mask set = 0;
  ExclusionReason reason = ExclusionReason::Pattern;
  std::optional<PatternHit> pattern;
  int source = 0;
  ConflictKind conflict = ConflictKind::Emptiness;
  int other = 0;

  std::string str() const;
};

struct RefutationCertificate {
  Chain chain;
  std::vector<CertificateStep> steps;

  // Indices forced to two-element blocks, in order of appearance.
  std::vector<int> forced_indices() const;
  bool uses_forcing() const;
  const CertificateStep& conclusion() const { return steps.back(); }
};

// Propagation engine over the exclusion table. Never returns a certificate
// for a chain that has a condition-IV witness. The certificate cites an
// inclusion-minimal set of hits.
std::optional<RefutationCertificate> pattern_refute(const Chain& f,
                                                    InclusionConvention convention = InclusionConvention::NonStrict);
// Same engine restricted to the given hits; hits that do not hold are dropped.
std::optional<RefutationCertificate> pattern_refute(const Chain& f, std::span<const PatternHit> hits,
                                                    InclusionConvention convention = InclusionConvention::NonStrict);

// Independent replay; knows only the definitions of F_i and the clause
// shapes. On failure, *error describes the first rejected step.
bool replay_certificate(const RefutationCertificate& cert, std::string* error = nullptr);

const char* to_string(StepKind kind);
const char* to_string(ExclusionReason reason);
const char* to_string(ConflictKind kind);

// ---------------------------------------------------------------------------
// Condition IV
// ---------------------------------------------------------------------------

struct WitnessOrRefutation {
  // Members of ranks 1..n-2.
  std::optional<std::vector<Partition>> witness;
  std::optional<RefutationCertificate> certificate;

  bool holds() const noexcept { return witness.has_value(); }
  std::string witness_str() const;
};

// Depth-first search over maximal chains, pruned as soon as a fresh block
// meets F_j' for one of its newly merged elements.
WitnessOrRefutation cond_IV(const Chain& f);
// Condition IV against an arbitrary F' tuple.
WitnessOrRefutation cond_IV(const SmallestBlockFamily& fam);

// C_i and C_i' of every maximal chain of NCP_n, deduplicated by family and
// remembering the first maximal chain (in DFS order) behind each.
class MaximalChainTable {
 public:
  explicit MaximalChainTable(int n);

  int n() const noexcept { return n_; }
  std::uint64_t chain_count() const noexcept { return chain_count_; }
  std::size_t family_count() const noexcept { return families_.size(); }
  const SmallestBlockFamily& family(std::size_t k) const noexcept { return families_[k]; }
  const std::vector<Partition>& first_chain(std::size_t k) const noexcept { return first_chain_[k]; }

  // Families k with F_j' ∩ C_j' = ∅ for all j, in DFS order of first appearance.
  std::vector<std::size_t> compatible(const SmallestBlockFamily& f_family) const;
  WitnessOrRefutation cond_IV(const Chain& f) const;

 private:
  int n_;
  std::uint64_t chain_count_ = 0;
  std::vector<SmallestBlockFamily> families_;
  std::vector<std::uint32_t> signatures_;
  std::vector<std::vector<Partition>> first_chain_;
};

}  // namespace ncp
