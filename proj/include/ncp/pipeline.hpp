#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ncp/condition_four.hpp"
#include "ncp/enumeration.hpp"

namespace ncp {

// ---------------------------------------------------------------------------
// Fixture corpus
// ---------------------------------------------------------------------------

class FixtureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixtureItem {
  std::string id;  // "i" .. "x"
  std::vector<int> ranks;
  std::vector<std::string> chains;
};

struct CaseFixture {
  int id = 0;
  std::vector<std::string> chains;
  std::vector<PatternHit> claimed_hits;
  bool expects_forced_argument = false;
};

struct FixtureSet {
  int n = 0;
  std::vector<std::vector<int>> rank_sets;
  std::vector<FixtureItem> items;
  std::vector<CaseFixture> cases;

  // Every chain of every case, in case order.
  std::vector<std::pair<int, std::string>> case_chains() const;
};

FixtureSet parse_fixtures(std::string_view json_text);
FixtureSet load_fixtures(const std::string& path);

// ---------------------------------------------------------------------------
// Exhaustive pipeline
// ---------------------------------------------------------------------------

struct ConditionRow {
  bool I = false;
  bool II = false;
  bool III = false;            // exhaustive search, the decider
  bool III_criterion = false;  // four-member shortcut, recorded only
  bool all() const noexcept { return I && II && III; }
};

ConditionRow conditions_of(const Chain& f, const NcPoset& poset);

struct ClassReport {
  explicit ClassReport(OrbitClass o) : orbit(std::move(o)) {}

  OrbitClass orbit;
  ConditionRow f;
  ConditionRow dual;
  bool iv = false;
  bool iv_dual = false;
  // Table lookup and DFS agree on both F and F*.
  bool iv_methods_agree = true;
  std::optional<std::string> witness;
  std::optional<std::string> dual_witness;
  std::optional<RefutationCertificate> certificate;
  bool certificate_replays = false;
  std::optional<int> case_id;
  // Case whose chain shares this class's canonical F' signature.
  std::optional<int> signature_case_id;
  bool survivor() const noexcept { return f.all() && dual.all() && iv && iv_dual; }
};

struct PipelineReport {
  int n = 0;
  std::uint64_t chain_count = 0;
  std::uint64_t candidate_chains = 0;
  std::uint64_t maximal_chains = 0;
  // Chains whose III criterion and exhaustive III differ, over every chain.
  std::uint64_t III_disagreements = 0;
  std::uint64_t III_criterion_only = 0;
  std::vector<std::string> III_disagreement_examples;
  std::vector<ClassReport> classes;

  std::size_t survivor_count() const;
  std::size_t duality_pairs() const;
  bool verified() const { return survivor_count() == 0; }
  std::string verdict() const;
};

// Candidate classes are those where F and F* both pass I, II and III.
PipelineReport run_theorem5(int n = 7);

// ---------------------------------------------------------------------------
// Fixture alignment
// ---------------------------------------------------------------------------

struct FixtureAlignment {
  int case_id = 0;
  std::string chain;
  bool found = false;  // some candidate class contains F or F*
  ConditionRow f;
  ConditionRow dual;
  bool iv_refuted = false;
  std::vector<PatternHit> missing_nonstrict;
  std::vector<PatternHit> missing_strict;
  // Certificate built from the claimed hits alone.
  bool certificate_found = false;
  bool certificate_replays = false;
  bool uses_forcing = false;
  bool expects_forcing = false;

  bool hits_reproduced() const noexcept { return missing_nonstrict.empty(); }
  bool style_matches() const noexcept { return certificate_found && uses_forcing == expects_forcing; }
  bool ok() const noexcept {
    return found && f.all() && f.III == f.III_criterion && iv_refuted && hits_reproduced() && certificate_replays &&
           style_matches();
  }
};

struct AlignmentReport {
  std::vector<FixtureAlignment> rows;
  // Duality pairs (lower class index first) matched by a fixture chain.
  std::size_t matched_pairs = 0;
  // Pairs covered only through a fixture with the same canonical F' signature.
  std::size_t signature_pairs = 0;
  // Pairs reached by neither route.
  std::vector<std::size_t> unmatched_classes;

  bool aligned() const;
};

AlignmentReport compare_fixtures(PipelineReport& report, const FixtureSet& fixtures);

// ---------------------------------------------------------------------------
// exclusion-table soundness over all chains
// ---------------------------------------------------------------------------

struct Lemma3Validation {
  int n = 0;
  InclusionConvention convention = InclusionConvention::NonStrict;
  std::uint64_t chains = 0;
  std::uint64_t hits = 0;
  std::uint64_t compatible_pairs = 0;  // (chain, compatible C family)
  std::uint64_t checks = 0;            // (hit, compatible family) pairs
  std::uint64_t violations = 0;
  std::uint64_t certificates = 0;
  std::uint64_t unsound_certificates = 0;  // certificate although a witness exists
  std::uint64_t replay_failures = 0;
  std::vector<std::string> examples;
};

Lemma3Validation validate_lemma3(int n, InclusionConvention convention = InclusionConvention::NonStrict);

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct CheckOptions {
  bool dual = false;
  bool dominant = false;
  InclusionConvention convention = InclusionConvention::NonStrict;
};

std::string check_chain_text(const Chain& f, const CheckOptions& options);

std::string certificate_json(const RefutationCertificate& cert);
std::string report_json(const PipelineReport& report, const AlignmentReport* alignment);
std::string report_csv(const PipelineReport& report);
std::string report_text(const PipelineReport& report);
std::string alignment_text(const AlignmentReport& alignment);

}  // namespace ncp
