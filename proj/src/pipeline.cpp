#include "ncp/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ncp/apartments.hpp"

namespace ncp {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Fixtures

std::vector<std::pair<int, std::string>> FixtureSet::case_chains() const {
  std::vector<std::pair<int, std::string>> out;
  for (const CaseFixture& c : cases) {
    for (const std::string& s : c.chains) out.emplace_back(c.id, s);
  }
  return out;
}

FixtureSet parse_fixtures(std::string_view json_text) {
  FixtureSet out;
  try {
    const json doc = json::parse(json_text);
    out.n = doc.at("n").get<int>();
    out.rank_sets = doc.at("rankSets").get<std::vector<std::vector<int>>>();
    for (const json& item : doc.at("items")) {
      out.items.push_back({item.at("id").get<std::string>(), item.at("ranks").get<std::vector<int>>(),
                           item.at("chains").get<std::vector<std::string>>()});
    }
    for (const json& c : doc.at("cases")) {
      CaseFixture fx;
      fx.id = c.at("id").get<int>();
      fx.chains = c.at("chains").get<std::vector<std::string>>();
      for (const json& h : c.at("claimedHits")) fx.claimed_hits.push_back(parse_pattern_hit(h.get<std::string>()));
      fx.expects_forced_argument = c.at("expectsForcedArgument").get<bool>();
      out.cases.push_back(std::move(fx));
    }
  } catch (const json::exception& e) {
    throw FixtureError(std::string("fixture file: ") + e.what());
  } catch (const ParseError& e) {
    throw FixtureError(std::string("fixture file: bad pattern hit: ") + e.what());
  }
  for (const auto& [id, text] : out.case_chains()) {
    try {
      (void)parse_chain(text, out.n);
    } catch (const std::exception& e) {
      throw FixtureError("fixture case " + std::to_string(id) + ": \"" + text + "\": " + e.what());
    }
  }
  return out;
}

FixtureSet load_fixtures(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_fixtures(buffer.str());
}

// ---------------------------------------------------------------------------
// Pipeline

ConditionRow conditions_of(const Chain& f, const NcPoset& poset) {
  return {cond_I(f), cond_II(f), cond_III_bruteforce(f, poset), cond_III_criterion(f)};
}

std::size_t PipelineReport::survivor_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const ClassReport& c) { return c.survivor(); }));
}

std::size_t PipelineReport::duality_pairs() const {
  std::size_t pairs = 0;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    const auto d = classes[k].orbit.dual_class;
    if (!d || *d >= k) ++pairs;
  }
  return pairs;
}

std::string PipelineReport::verdict() const {
  if (verified()) return "THEOREM 5 VERIFIED";
  return "THEOREM 5 FAILED: " + std::to_string(survivor_count()) + " surviving class(es)";
}

PipelineReport run_theorem5(int n) {
  if (n < kMinChainN || n > 7) throw std::invalid_argument("run_theorem5 supports 3 <= n <= 7");
  PipelineReport report;
  report.n = n;
  const NcPoset poset(n);
  const MaximalChainTable table(n);
  report.maximal_chains = table.chain_count();

  std::vector<Chain> candidates;
  for_each_chain(poset, std::nullopt, [&](const Chain& c) {
    ++report.chain_count;
    const bool exhaustive = cond_III_bruteforce(c, poset);
    const bool criterion = cond_III_criterion(c);
    if (exhaustive != criterion) {
      ++report.III_disagreements;
      if (criterion) ++report.III_criterion_only;
      if (report.III_disagreement_examples.size() < 20) report.III_disagreement_examples.push_back(c.str());
    }
    if (!exhaustive || !cond_I(c) || !cond_II(c)) return;
    const Chain d = dual_chain(c);
    if (!cond_II(d) || !cond_III_bruteforce(d, poset)) return;
    candidates.push_back(c);
  });
  report.candidate_chains = candidates.size();

  for (OrbitClass& orbit : orbit_classes(candidates)) {
    ClassReport r(std::move(orbit));
    const Chain& f = r.orbit.representative;
    const Chain& d = r.orbit.dual_representative;
    r.f = conditions_of(f, poset);
    r.dual = conditions_of(d, poset);
    const WitnessOrRefutation by_table = table.cond_IV(f);
    const WitnessOrRefutation by_table_dual = table.cond_IV(d);
    r.iv = by_table.holds();
    r.iv_dual = by_table_dual.holds();
    r.iv_methods_agree = cond_IV(f).holds() == r.iv && cond_IV(d).holds() == r.iv_dual;
    if (r.iv) r.witness = by_table.witness_str();
    if (r.iv_dual) r.dual_witness = by_table_dual.witness_str();
    r.certificate = pattern_refute(f);
    r.certificate_replays = r.certificate && replay_certificate(*r.certificate);
    report.classes.push_back(std::move(r));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Alignment

bool AlignmentReport::aligned() const {
  return unmatched_classes.empty() &&
         std::all_of(rows.begin(), rows.end(), [](const FixtureAlignment& r) { return r.ok(); });
}

AlignmentReport compare_fixtures(PipelineReport& report, const FixtureSet& fixtures) {
  if (fixtures.n != report.n) throw FixtureError("fixture n does not match the report");
  AlignmentReport out;
  const NcPoset poset(report.n);
  std::map<Chain, std::size_t> by_rep;
  for (std::size_t k = 0; k < report.classes.size(); ++k) by_rep.emplace(report.classes[k].orbit.representative, k);
  std::set<std::size_t> matched;
  std::map<std::uint32_t, int> signature_case;

  for (const CaseFixture& fx : fixtures.cases) {
    for (const std::string& text : fx.chains) {
      FixtureAlignment row;
      row.case_id = fx.id;
      row.chain = text;
      row.expects_forcing = fx.expects_forced_argument;
      const Chain f = parse_chain(text, fixtures.n);
      const Chain d = dual_chain(f);
      for (const Chain& image : {canonical_form(f), canonical_form(d)}) {
        if (auto it = by_rep.find(image); it != by_rep.end()) {
          row.found = true;
          matched.insert(it->second);
          if (!report.classes[it->second].case_id) report.classes[it->second].case_id = fx.id;
        }
      }
      signature_case.emplace(canonical_prime_signature(f), fx.id);
      signature_case.emplace(canonical_prime_signature(d), fx.id);
      row.f = conditions_of(f, poset);
      row.dual = conditions_of(d, poset);
      row.iv_refuted = !cond_IV(f).holds();
      const auto loose = detect_patterns(f, InclusionConvention::NonStrict);
      const auto strict = detect_patterns(f, InclusionConvention::Strict);
      for (const PatternHit& hit : fx.claimed_hits) {
        if (!std::binary_search(loose.begin(), loose.end(), hit)) row.missing_nonstrict.push_back(hit);
        if (!std::binary_search(strict.begin(), strict.end(), hit)) row.missing_strict.push_back(hit);
      }
      if (const auto cert = pattern_refute(f, fx.claimed_hits)) {
        row.certificate_found = true;
        row.certificate_replays = replay_certificate(*cert);
        row.uses_forcing = cert->uses_forcing();
      }
      out.rows.push_back(std::move(row));
    }
  }

  for (std::size_t k = 0; k < report.classes.size(); ++k) {
    ClassReport& cls = report.classes[k];
    const std::size_t d = cls.orbit.dual_class.value_or(k);
    for (std::size_t c : {k, d}) {
      if (auto it = signature_case.find(report.classes[c].orbit.canonical_prime_signature); it != signature_case.end()) {
        if (!cls.signature_case_id) cls.signature_case_id = it->second;
      }
    }
    if (d < k) continue;
    if (matched.count(k) || matched.count(d)) {
      ++out.matched_pairs;
    } else if (cls.signature_case_id || report.classes[d].signature_case_id) {
      ++out.signature_pairs;
    } else {
      out.unmatched_classes.push_back(k);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// exclusion soundness

Lemma3Validation validate_lemma3(int n, InclusionConvention convention) {
  if (n < kMinChainN || n > 7) throw std::invalid_argument("validate_lemma3 supports 3 <= n <= 7");
  Lemma3Validation out;
  out.n = n;
  out.convention = convention;
  const NcPoset poset(n);
  const MaximalChainTable table(n);
  for_each_chain(poset, std::nullopt, [&](const Chain& f) {
    ++out.chains;
    const SmallestBlockFamily fam = smallest_blocks(f);
    const auto hits = detect_patterns(fam, convention);
    const auto compatible = table.compatible(fam);
    out.hits += hits.size();
    out.compatible_pairs += compatible.size();
    for (std::size_t k : compatible) {
      const SmallestBlockFamily& c = table.family(k);
      for (const PatternHit& hit : hits) {
        ++out.checks;
        if ((c.block(hit.i) & excluded_range(hit, n)) != 0) {
          ++out.violations;
          if (out.examples.size() < 20) {
            out.examples.push_back(f.str() + " " + hit.str() + " C_" + std::to_string(hit.i) + "=" +
                                   set_string(c.block(hit.i)));
          }
        }
      }
    }
    if (const auto cert = pattern_refute(f, hits, convention)) {
      ++out.certificates;
      if (!compatible.empty()) ++out.unsound_certificates;
      if (!replay_certificate(*cert)) ++out.replay_failures;
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Text and JSON

namespace {

const char* yes(bool b) { return b ? "yes" : "no"; }

json prime_tuple(const Chain& f) {
  const SmallestBlockFamily fam = smallest_blocks(f);
  json out = json::array();
  for (int i = 1; i <= fam.n; ++i) out.push_back(digits(fam.prime(i)));
  return out;
}

json conditions_json(const ConditionRow& r) {
  return {{"I", r.I}, {"II", r.II}, {"III", r.III}, {"IIICriterion", r.III_criterion}};
}

json elements(Mask m) {
  json out = json::array();
  for_each_element(m, [&](int e) { out.push_back(e); });
  return out;
}

json certificate_object(const RefutationCertificate& cert) {
  json steps = json::array();
  for (const CertificateStep& s : cert.steps) {
    json step = {{"kind", to_string(s.kind)}, {"index", s.index}, {"set", elements(s.set)}};
    switch (s.kind) {
      case StepKind::Exclusion:
        step["reason"] = to_string(s.reason);
        if (s.pattern) step["pattern"] = s.pattern->str();
        if (s.reason == ExclusionReason::Subset) step["source"] = s.source;
        break;
      case StepKind::Forced:
        break;
      case StepKind::Propagate:
        step["source"] = s.source;
        break;
      case StepKind::Conflict:
        step["conflict"] = to_string(s.conflict);
        if (s.conflict != ConflictKind::Emptiness) step["other"] = s.other;
        break;
    }
    steps.push_back(std::move(step));
  }
  return {{"chain", cert.chain.str()}, {"steps", std::move(steps)}, {"conclusion", "condition IV fails"}};
}

std::string signature_string(const Chain& f) {
  const SmallestBlockFamily fam = smallest_blocks(f);
  std::string out;
  for (int i = 1; i <= fam.n; ++i) {
    if (i > 1) out.push_back(' ');
    out += fam.prime(i) == 0 ? "-" : digits(fam.prime(i));
  }
  return out;
}

}  // namespace

std::string certificate_json(const RefutationCertificate& cert) { return certificate_object(cert).dump(2); }

std::string check_chain_text(const Chain& f, const CheckOptions& options) {
  std::ostringstream out;
  const NcPoset poset(f.n());
  const SmallestBlockFamily fam = smallest_blocks(f);
  out << "chain " << f.str() << " (n=" << f.n() << ", ranks " << rank_set(f).str() << ")\n";
  out << "  i  F_i      F_i'\n";
  for (int i = 1; i <= f.n(); ++i) {
    char line[64];
    std::snprintf(line, sizeof line, "  %d  %-8s %s\n", i, digits(fam.block(i)).c_str(), set_string(fam.prime(i)).c_str());
    out << line;
  }
  const ConditionRow row = conditions_of(f, poset);
  const CondIIIClause clauses = cond_III_clauses(f);
  out << "condition I    " << yes(row.I) << "\n";
  out << "condition II   " << yes(row.II) << "\n";
  out << "condition III  " << yes(row.III) << " (criterion " << yes(row.III_criterion) << ": top "
      << yes(clauses.top_crossing) << ", between " << yes(clauses.between_crossing) << ", bottom "
      << yes(clauses.bottom_block) << ")\n";
  const WitnessOrRefutation iv = cond_IV(f);
  out << "condition IV   " << yes(iv.holds()) << "\n";
  out << "patterns      ";
  for (const PatternHit& hit : detect_patterns(fam, options.convention)) out << ' ' << hit.str();
  out << "\n";
  if (iv.holds()) {
    out << "witness        " << iv.witness_str() << "\n";
  }
  if (const auto cert = pattern_refute(f, options.convention)) {
    out << "certificate (" << (replay_certificate(*cert) ? "replays" : "REPLAY FAILED") << ")\n";
    for (const CertificateStep& s : cert->steps) out << "  " << s.str() << "\n";
  } else if (!iv.holds()) {
    out << "certificate    none (patterns inconclusive)\n";
  }
  if (options.dual) {
    const Chain d = dual_chain(f);
    const ConditionRow dr = conditions_of(d, poset);
    out << "dual " << d.str() << ": I " << yes(dr.I) << ", II " << yes(dr.II) << ", III " << yes(dr.III) << ", IV "
        << yes(cond_IV(d).holds()) << "\n";
  }
  if (options.dominant) {
    const ApartmentIndex index(f.n());
    const DominanceReport dom = index.dominant_vertex(f);
    out << "dominant vertex " << (dom.dominant ? dom.dominant->str() : std::string("none"));
    if (dom.all_dominant.size() > 1) out << " (NOT UNIQUE: " << dom.all_dominant.size() << ")";
    out << ", condition IV' " << yes(cond_IV_prime(dom)) << "\n";
  }
  return out.str();
}

std::string report_json(const PipelineReport& report, const AlignmentReport* alignment) {
  json classes = json::array();
  for (std::size_t k = 0; k < report.classes.size(); ++k) {
    const ClassReport& c = report.classes[k];
    json entry = {
        {"index", k},
        {"representative", c.orbit.representative.str()},
        {"orbitSize", c.orbit.orbit_size},
        {"membersSeen", c.orbit.members_seen},
        {"dualRepresentative", c.orbit.dual_representative.str()},
        {"dualClass", c.orbit.dual_class ? json(*c.orbit.dual_class) : json(nullptr)},
        {"primeSignature", prime_tuple(c.orbit.representative)},
        {"signatureDuplicateOf",
         c.orbit.signature_duplicate_of ? json(*c.orbit.signature_duplicate_of) : json(nullptr)},
        {"conditions", {{"F", conditions_json(c.f)}, {"dual", conditions_json(c.dual)}}},
        {"conditionIV",
         {{"F", c.iv},
          {"dual", c.iv_dual},
          {"methodsAgree", c.iv_methods_agree},
          {"witness", c.witness ? json(*c.witness) : json(nullptr)},
          {"dualWitness", c.dual_witness ? json(*c.dual_witness) : json(nullptr)}}},
        {"certificate", c.certificate ? certificate_object(*c.certificate) : json(nullptr)},
        {"certificateReplays", c.certificate_replays},
        {"caseId", c.case_id ? json(*c.case_id) : json("unmatched")},
        {"signatureCase", c.signature_case_id ? json(*c.signature_case_id) : json(nullptr)},
        {"survivor", c.survivor()},
    };
    classes.push_back(std::move(entry));
  }
  json doc = {
      {"n", report.n},
      {"verdict", report.verdict()},
      {"chains", report.chain_count},
      {"maximalChains", report.maximal_chains},
      {"candidateChains", report.candidate_chains},
      {"classes", std::move(classes)},
      {"dualityPairs", report.duality_pairs()},
      {"survivors", report.survivor_count()},
      {"conditionIII",
       {{"disagreements", report.III_disagreements},
        {"criterionOnly", report.III_criterion_only},
        {"examples", report.III_disagreement_examples}}},
  };
  if (alignment) {
    json rows = json::array();
    for (const FixtureAlignment& r : alignment->rows) {
      json missing = json::array(), missing_strict = json::array();
      for (const PatternHit& h : r.missing_nonstrict) missing.push_back(h.str());
      for (const PatternHit& h : r.missing_strict) missing_strict.push_back(h.str());
      rows.push_back({{"caseId", r.case_id},
                      {"chain", r.chain},
                      {"found", r.found},
                      {"conditions", {{"F", conditions_json(r.f)}, {"dual", conditions_json(r.dual)}}},
                      {"ivRefuted", r.iv_refuted},
                      {"missingHits", std::move(missing)},
                      {"missingHitsStrict", std::move(missing_strict)},
                      {"certificateFound", r.certificate_found},
                      {"certificateReplays", r.certificate_replays},
                      {"usesForcing", r.uses_forcing},
                      {"expectsForcing", r.expects_forcing},
                      {"ok", r.ok()}});
    }
    doc["fixtures"] = {{"aligned", alignment->aligned()},
                       {"matchedPairs", alignment->matched_pairs},
                       {"signaturePairs", alignment->signature_pairs},
                       {"unmatchedClasses", alignment->unmatched_classes},
                       {"rows", std::move(rows)}};
  }
  return doc.dump(2) + "\n";
}

std::string report_csv(const PipelineReport& report) {
  std::ostringstream out;
  out << "index,representative,orbit_size,dual_representative,dual_class,prime_signature,signature_duplicate_of,"
         "I,II,III,III_criterion,dual_I,dual_II,dual_III,dual_III_criterion,IV,dual_IV,certificate,"
         "certificate_replays,case_id,signature_case,survivor\n";
  auto b = [](bool v) { return v ? "1" : "0"; };
  for (std::size_t k = 0; k < report.classes.size(); ++k) {
    const ClassReport& c = report.classes[k];
    out << k << ",\"" << c.orbit.representative.str() << "\"," << c.orbit.orbit_size << ",\""
        << c.orbit.dual_representative.str() << "\"," << (c.orbit.dual_class ? std::to_string(*c.orbit.dual_class) : "")
        << ",\"" << signature_string(c.orbit.representative) << "\","
        << (c.orbit.signature_duplicate_of ? std::to_string(*c.orbit.signature_duplicate_of) : "") << ',' << b(c.f.I)
        << ',' << b(c.f.II) << ',' << b(c.f.III) << ',' << b(c.f.III_criterion) << ',' << b(c.dual.I) << ','
        << b(c.dual.II) << ',' << b(c.dual.III) << ',' << b(c.dual.III_criterion) << ',' << b(c.iv) << ','
        << b(c.iv_dual) << ',' << b(c.certificate.has_value()) << ',' << b(c.certificate_replays) << ','
        << (c.case_id ? std::to_string(*c.case_id) : "unmatched") << ','
        << (c.signature_case_id ? std::to_string(*c.signature_case_id) : "") << ',' << b(c.survivor()) << "\n";
  }
  return out.str();
}

std::string report_text(const PipelineReport& report) {
  std::ostringstream out;
  std::size_t certified = 0, agree = 0;
  for (const ClassReport& c : report.classes) {
    if (c.certificate_replays) ++certified;
    if (c.iv_methods_agree) ++agree;
  }
  out << "n = " << report.n << "\n";
  out << "chains of NCP_n            " << report.chain_count << "\n";
  out << "maximal chains             " << report.maximal_chains << "\n";
  out << "III criterion disagreements " << report.III_disagreements << " (criterion only: "
      << report.III_criterion_only << ")\n";
  out << "candidate chains (F, F*)   " << report.candidate_chains << "\n";
  out << "orbit classes              " << report.classes.size() << " in " << report.duality_pairs()
      << " duality pairs\n";
  out << "IV table/DFS agreement     " << agree << "/" << report.classes.size() << "\n";
  out << "pattern certificates       " << certified << "/" << report.classes.size() << "\n";
  for (const ClassReport& c : report.classes) {
    if (c.survivor()) out << "SURVIVOR " << c.orbit.representative.str() << " witness " << *c.witness << "\n";
  }
  out << report.verdict() << "\n";
  return out.str();
}

std::string alignment_text(const AlignmentReport& alignment) {
  std::ostringstream out;
  out << "case chain                 found I II III(crit) dual-I/II/III IV-refuted hits(strict) certificate style\n";
  for (const FixtureAlignment& r : alignment.rows) {
    char line[256];
    std::string missing, strict;
    for (const PatternHit& h : r.missing_nonstrict) missing += " " + h.str();
    for (const PatternHit& h : r.missing_strict) strict += " " + h.str();
    if (!strict.empty()) strict = " [strict misses" + strict + "]";
    std::snprintf(line, sizeof line, "(%d) %-20s %-3s %d %d %d(%d) %d/%d/%d %-3s %s%s%s %s %s%s\n", r.case_id,
                  r.chain.c_str(), yes(r.found), r.f.I, r.f.II, r.f.III, r.f.III_criterion, r.dual.I, r.dual.II,
                  r.dual.III, yes(r.iv_refuted), r.hits_reproduced() ? "ok" : "MISSING", missing.c_str(),
                  strict.c_str(),
                  r.certificate_found ? (r.certificate_replays ? "replays" : "REPLAY-FAIL") : "none",
                  r.uses_forcing ? "forcing" : "direct", r.style_matches() ? "" : " STYLE-MISMATCH");
    out << line << (r.ok() ? "" : "  ^ misaligned\n");
  }
  out << "duality pairs matched by a fixture chain  " << alignment.matched_pairs << "\n";
  out << "duality pairs covered by F' signature     " << alignment.signature_pairs << "\n";
  out << "unmatched duality pairs                   " << alignment.unmatched_classes.size() << "\n";
  out << (alignment.aligned() ? "FIXTURES ALIGNED" : "FIXTURES MISALIGNED") << "\n";
  return out.str();
}

}  // namespace ncp
