#include <doctest.h>

#include <algorithm>

#include "ncp/condition_four.hpp"
#include "ncp/enumeration.hpp"
#include "oracles.hpp"

using namespace ncp;

namespace {

Chain C(const char* text, int n = 7) { return parse_chain(text, n); }

Mask set_of(std::initializer_list<int> xs) {
  Mask m = 0;
  for (int x : xs) m |= element_bit(x);
  return m;
}

bool has_hit(const std::vector<PatternHit>& hits, const char* text) {
  return std::find(hits.begin(), hits.end(), parse_pattern_hit(text)) != hits.end();
}

const std::vector<Chain>& all7() {
  static const std::vector<Chain> chains = enumerate_chains(7);
  return chains;
}

const MaximalChainTable& table7() {
  static const MaximalChainTable table(7);
  return table;
}

// C_i' of every maximal chain of NCP_7, from the oracle enumeration.
const std::vector<std::vector<std::vector<int>>>& oracle_primes7() {
  static const auto primes = [] {
    std::vector<std::vector<std::vector<int>>> out;
    for (const auto& c : oracle::maximal_chains(7)) {
      std::vector<std::vector<int>> row(8);
      for (int i = 1; i <= 7; ++i) row[i] = oracle::prime(c, i);
      out.push_back(row);
    }
    return out;
  }();
  return primes;
}

bool oracle_iv(const Chain& f) {
  std::vector<oracle::Labels> lab;
  for (const Partition& p : f.members()) lab.push_back(oracle::from_notation(p.str(), 7));
  std::vector<std::vector<int>> fp(8);
  for (int i = 1; i <= 7; ++i) fp[i] = oracle::prime(lab, i);
  for (const auto& row : oracle_primes7()) {
    bool ok = true;
    for (int i = 1; i <= 7 && ok; ++i) ok = oracle::disjoint(fp[i], row[i]);
    if (ok) return true;
  }
  return false;
}

// Checks a witness with the oracle: a maximal chain whose C_i' avoid F_i'.
bool oracle_witness_valid(const Chain& f, const std::vector<Partition>& witness) {
  if (witness.size() != 5) return false;
  std::vector<oracle::Labels> w, lab;
  for (const Partition& p : witness) w.push_back(oracle::from_notation(p.str(), 7));
  for (const Partition& p : f.members()) lab.push_back(oracle::from_notation(p.str(), 7));
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (oracle::crossing(w[k]) || 7 - oracle::block_count(w[k]) != static_cast<int>(k) + 1) return false;
    if (k > 0 && !oracle::refines(w[k - 1], w[k])) return false;
  }
  for (int i = 1; i <= 7; ++i) {
    if (!oracle::disjoint(oracle::prime(lab, i), oracle::prime(w, i))) return false;
  }
  return true;
}

std::vector<Partition> members_of(const char* text) { return parse_chain(text, 7).members(); }

}  // namespace

TEST_CASE("pattern hit notation") {
  const PatternHit h = parse_pattern_hit("(4,\xE2\x88\x92,3)(6)");
  CHECK(h == PatternHit{4, Sign::Minus, 3, 6});
  CHECK(h.str() == "(4,-,3)(6)");
  CHECK(parse_pattern_hit("(1,+,3)(1)") == PatternHit{1, Sign::Plus, 3, 1});
  CHECK_THROWS_AS(parse_pattern_hit("(5,+,3)(1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern_hit("(1,+,3)(2)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern_hit("(1,*,3)(1)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pattern_hit("(1,+,3)(1)x"), std::invalid_argument);
  CHECK(pattern_clauses(1).size() == 1);
  CHECK(pattern_clauses(2).size() == 2);
  CHECK(pattern_clauses(3).size() == 4);
  CHECK(pattern_clauses(4).size() == 8);
}

TEST_CASE("detect_patterns examples") {
  const auto a = detect_patterns(C("12,46"));
  CHECK(has_hit(a, "(1,+,3)(1)"));
  CHECK(has_hit(a, "(4,-,3)(6)"));
  CHECK(has_hit(a, "(4,+,7)(6)"));
  CHECK(has_hit(a, "(1,-,7)(1)"));
  const auto b = detect_patterns(C("12<12346"));
  CHECK(has_hit(b, "(2,+,3)(1)"));
  CHECK(has_hit(b, "(4,-,3)(6)"));
  const auto c = detect_patterns(C("24<123456"));
  CHECK(has_hit(c, "(2,+,7)(2)"));
  CHECK(has_hit(c, "(4,-,7)(5)"));
  const auto d = detect_patterns(C("13"));
  CHECK(has_hit(d, "(3,+,6)(1)"));
  CHECK(has_hit(d, "(3,-,6)(1)"));
  CHECK_FALSE(has_hit(detect_patterns(C("13"), InclusionConvention::Strict), "(3,-,6)(1)"));
  const auto e = detect_patterns(C("23<23,45<123456"));
  CHECK(has_hit(e, "(4,+,7)(7)"));
  CHECK(has_hit(e, "(4,-,7)(7)"));
}

TEST_CASE("single-step patterns are plain inclusions, and strict hits are non-strict hits") {
  for (std::size_t k = 0; k < all7().size(); k += 3) {
    const Chain& f = all7()[k];
    const SmallestBlockFamily fam = smallest_blocks(f);
    const auto hits = detect_patterns(fam);
    for (int i = 1; i <= 7; ++i) {
      const bool plus = is_subset(fam.block(wrap(i + 1, 7)), fam.block(i));
      const bool minus = is_subset(fam.block(wrap(i - 1, 7)), fam.block(i));
      REQUIRE(std::count(hits.begin(), hits.end(), PatternHit{1, Sign::Plus, i, 1}) == plus);
      REQUIRE(std::count(hits.begin(), hits.end(), PatternHit{1, Sign::Minus, i, 1}) == minus);
      const bool eq = fam.block(i) == fam.block(wrap(i + 1, 7));
      REQUIRE(std::count(hits.begin(), hits.end(), PatternHit{2, Sign::Plus, i, 1}) == eq);
    }
    for (const PatternHit& h : detect_patterns(fam, InclusionConvention::Strict)) {
      REQUIRE(std::find(hits.begin(), hits.end(), h) != hits.end());
    }
    REQUIRE(std::is_sorted(hits.begin(), hits.end()));
  }
}

TEST_CASE("excluded ranges") {
  CHECK(excluded_range(parse_pattern_hit("(3,+,6)(1)"), 7) == set_of({7, 1, 2}));
  CHECK(excluded_range(parse_pattern_hit("(3,-,6)(1)"), 7) == set_of({3, 4, 5}));
  CHECK(excluded_range(parse_pattern_hit("(1,-,1)(1)"), 7) == set_of({7}));
}

TEST_CASE("lemma3_exclusions examples") {
  const ExclusionTable a = lemma3_exclusions(C("12,46"));
  CHECK(is_subset(set_of({4, 6, 7, 1, 2}), a.excluded_at(3)));
  CHECK(a.allowed_companions(3) == set_of({5}));
  const ExclusionTable b = lemma3_exclusions(C("13"));
  CHECK(is_subset(set_of({7, 1, 2, 3, 4, 5}), b.excluded_at(6)));
  CHECK(b.allowed_companions(6) == 0);
  const ExclusionTable c = lemma3_exclusions(C("24<246"));
  for (int i = 1; i <= 7; ++i) CHECK(c.allowed_companions(i) != 0);
}

TEST_CASE("corollary4 examples") {
  CHECK(corollary4(C("13")).has_value());
  CHECK(lemma3_exclusions(C("13")).allowed_companions(6) == 0);
  CHECK(corollary4(C("12<12346")).has_value());
  CHECK(lemma3_exclusions(C("12<12346")).allowed_companions(3) == 0);
  CHECK_FALSE(corollary4(C("24<246")).has_value());
}

TEST_CASE("cond_IV examples") {
  const WitnessOrRefutation a = cond_IV(C("24<246"));
  REQUIRE(a.holds());
  CHECK(oracle_witness_valid(C("24<246"), *a.witness));
  CHECK(oracle_witness_valid(C("24<246"), members_of("13<13,57<13,567<13,4567<134567")));
  CHECK_FALSE(cond_IV(C("14")).holds());
  CHECK_FALSE(cond_IV(C("24")).holds());
  CHECK_FALSE(cond_IV(C("13")).holds());
  CHECK(a.witness_str().find('<') != std::string::npos);
}

TEST_CASE("cond_IV matches the explicit maximal-chain oracle") {
  std::uint64_t holds = 0, fails = 0;
  for (std::size_t k = 0; k < all7().size(); k += 41) {
    const Chain& f = all7()[k];
    const WitnessOrRefutation r = cond_IV(f);
    REQUIRE(r.holds() == oracle_iv(f));
    if (r.holds()) {
      ++holds;
      REQUIRE(oracle_witness_valid(f, *r.witness));
    } else {
      ++fails;
    }
  }
  CHECK(holds > 0);
  CHECK(fails > 0);
}

TEST_CASE("table and depth-first search agree on every chain of NCP_7") {
  for (const Chain& f : all7()) {
    const bool table = table7().cond_IV(f).holds();
    REQUIRE(cond_IV(f).holds() == table);
  }
  CHECK(table7().chain_count() == 16807);
}

TEST_CASE("maximal chain families: C_i is never {i} and subsets propagate") {
  for (std::size_t k = 0; k < table7().family_count(); ++k) {
    const SmallestBlockFamily& c = table7().family(k);
    for (int i = 1; i <= 7; ++i) {
      REQUIRE(c.block(i) != element_bit(i));
      for (int j = 1; j <= 7; ++j) {
        if (has_element(c.block(i), j)) REQUIRE(is_subset(c.block(j), c.block(i)));
      }
    }
  }
}

TEST_CASE("cond_IV is dihedrally invariant") {
  const auto group = dihedral_group(7);
  for (std::size_t k = 0; k < all7().size(); k += 97) {
    const Chain& f = all7()[k];
    const bool iv = table7().cond_IV(f).holds();
    for (const Dihedral& g : group) REQUIRE(table7().cond_IV(apply_symmetry(f, g)).holds() == iv);
  }
}

TEST_CASE("pattern_refute examples") {
  const auto a = pattern_refute(C("12,46"));
  REQUIRE(a.has_value());
  CHECK(replay_certificate(*a));
  CHECK(a->uses_forcing());
  CHECK(a->conclusion().kind == StepKind::Conflict);

  const auto b = pattern_refute(C("23<12346"));
  REQUIRE(b.has_value());
  std::string error;
  CHECK(replay_certificate(*b, &error));
  CHECK(error.empty());
  CHECK(b->uses_forcing());

  CHECK_FALSE(pattern_refute(C("24<246")).has_value());

  const auto c = pattern_refute(C("13"));
  REQUIRE(c.has_value());
  CHECK_FALSE(c->uses_forcing());
  CHECK(c->conclusion().conflict == ConflictKind::Emptiness);
}

TEST_CASE("forcing route for 12,46 from four quoted hits replays") {
  // C_3 = {3,5}, then C_5 = {3,5}; C_7 = {5,7}, then C_5 = {5,7}: conflict.
  const Chain f = C("12,46");
  const auto hits = detect_patterns(f);
  const std::vector<PatternHit> quoted{parse_pattern_hit("(1,+,3)(1)"), parse_pattern_hit("(4,-,3)(6)"),
                                       parse_pattern_hit("(4,+,7)(6)"), parse_pattern_hit("(1,-,7)(1)")};
  const auto cert = pattern_refute(f, quoted);
  REQUIRE(cert.has_value());
  CHECK(replay_certificate(*cert));
  const auto forced = cert->forced_indices();
  CHECK(std::find(forced.begin(), forced.end(), 3) != forced.end());
  CHECK(std::find(forced.begin(), forced.end(), 7) != forced.end());
}

TEST_CASE("tampered certificates are rejected") {
  auto cert = pattern_refute(C("12,46"));
  REQUIRE(cert.has_value());
  auto broken = *cert;
  broken.steps.pop_back();
  CHECK_FALSE(replay_certificate(broken));

  auto wrong_chain = *cert;
  wrong_chain.chain = C("24<246");
  CHECK_FALSE(replay_certificate(wrong_chain));

  auto bad_set = *cert;
  for (CertificateStep& s : bad_set.steps) {
    if (s.kind == StepKind::Forced) {
      s.set = static_cast<Mask>(element_bit(s.index) | element_bit(wrap(s.index + 3, 7)));
      break;
    }
  }
  std::string error;
  CHECK_FALSE(replay_certificate(bad_set, &error));
  CHECK_FALSE(error.empty());
}

TEST_CASE("pattern_refute is sound and its certificates replay") {
  std::uint64_t certificates = 0;
  for (std::size_t k = 0; k < all7().size(); k += 5) {
    const Chain& f = all7()[k];
    const auto cert = pattern_refute(f);
    if (!cert) continue;
    ++certificates;
    REQUIRE_FALSE(table7().cond_IV(f).holds());
    REQUIRE(replay_certificate(*cert));
  }
  CHECK(certificates > 0);
}

TEST_CASE("exclusion table respected by every compatible maximal chain (sample)") {
  for (std::size_t k = 0; k < all7().size(); k += 19) {
    const Chain& f = all7()[k];
    const SmallestBlockFamily fam = smallest_blocks(f);
    const auto hits = detect_patterns(fam);
    for (std::size_t idx : table7().compatible(fam)) {
      const SmallestBlockFamily& c = table7().family(idx);
      for (int i = 1; i <= 7; ++i) REQUIRE((fam.prime(i) & c.prime(i)) == 0);
      for (const PatternHit& h : hits) REQUIRE((excluded_range(h, 7) & c.block(h.i)) == 0);
    }
  }
}
