#include "ncp/condition_four.hpp"

#include <algorithm>
#include <map>

#include "ncp/enumeration.hpp"

namespace ncp {

namespace {

using R = Relation;

const std::vector<std::vector<Relation>> kOne = {{R::Superset}};
const std::vector<std::vector<Relation>> kTwo = {{R::Equal}, {R::Superset, R::Superset}};
const std::vector<std::vector<Relation>> kThree = {
    {R::Equal, R::Superset},
    {R::Equal, R::Subset},
    {R::Superset, R::Equal},
    {R::Superset, R::Superset, R::Superset},
};
const std::vector<std::vector<Relation>> kFour = {
    {R::Equal, R::Equal},
    {R::Equal, R::Superset, R::Superset},
    {R::Equal, R::Subset, R::Superset},
    {R::Equal, R::Subset, R::Subset},
    {R::Superset, R::Equal, R::Superset},
    {R::Superset, R::Equal, R::Subset},
    {R::Superset, R::Superset, R::Equal},
    {R::Superset, R::Superset, R::Superset, R::Superset},
};

bool relation_holds(Mask a, Mask b, Relation rel, InclusionConvention convention) {
  const bool strict = convention == InclusionConvention::Strict;
  switch (rel) {
    case Relation::Equal:
      return a == b;
    case Relation::Superset:
      return is_subset(b, a) && (!strict || a != b);
    case Relation::Subset:
      return is_subset(a, b) && (!strict || a != b);
  }
  return false;
}

}  // namespace

std::string PatternHit::str() const {
  return "(" + std::to_string(k) + "," + (sign == Sign::Plus ? "+" : "-") + "," + std::to_string(i) + ")(" +
         std::to_string(variant) + ")";
}

PatternHit parse_pattern_hit(std::string_view text) {
  std::string s;
  for (std::size_t p = 0; p < text.size(); ++p) {
    // U+2212 MINUS SIGN is three bytes in UTF-8.
    if (text.compare(p, 3, "\xE2\x88\x92") == 0) {
      s.push_back('-');
      p += 2;
    } else if (text[p] != ' ') {
      s.push_back(text[p]);
    }
  }
  PatternHit hit;
  char sign = 0;
  char close1 = 0, open2 = 0, close2 = 0;
  int consumed = 0;
  if (std::sscanf(s.c_str(), "(%d,%c,%d%c%c%d%c%n", &hit.k, &sign, &hit.i, &close1, &open2, &hit.variant, &close2,
                  &consumed) != 7 ||
      close1 != ')' || open2 != '(' || close2 != ')' || static_cast<std::size_t>(consumed) != s.size() ||
      (sign != '+' && sign != '-')) {
    throw std::invalid_argument("malformed pattern hit \"" + std::string(text) + "\"");
  }
  hit.sign = sign == '+' ? Sign::Plus : Sign::Minus;
  if (hit.k < 1 || hit.k > 4 || hit.variant < 1 ||
      hit.variant > static_cast<int>(pattern_clauses(hit.k).size())) {
    throw std::invalid_argument("pattern hit out of range \"" + std::string(text) + "\"");
  }
  return hit;
}

std::span<const std::vector<Relation>> pattern_clauses(int k) {
  switch (k) {
    case 1:
      return kOne;
    case 2:
      return kTwo;
    case 3:
      return kThree;
    case 4:
      return kFour;
    default:
      throw std::invalid_argument("pattern family k must lie in 1..4");
  }
}

bool pattern_holds(const SmallestBlockFamily& fam, const PatternHit& hit, InclusionConvention convention) {
  const auto& clause = pattern_clauses(hit.k)[static_cast<std::size_t>(hit.variant - 1)];
  const int step = hit.sign == Sign::Plus ? 1 : -1;
  for (std::size_t j = 0; j < clause.size(); ++j) {
    const Mask a = fam.block(wrap(hit.i + step * static_cast<int>(j), fam.n));
    const Mask b = fam.block(wrap(hit.i + step * static_cast<int>(j + 1), fam.n));
    if (!relation_holds(a, b, clause[j], convention)) return false;
  }
  return true;
}

std::vector<PatternHit> detect_patterns(const SmallestBlockFamily& fam, InclusionConvention convention) {
  std::vector<PatternHit> hits;
  for (int k = 1; k <= 4; ++k) {
    const int variants = static_cast<int>(pattern_clauses(k).size());
    for (Sign sign : {Sign::Plus, Sign::Minus}) {
      for (int i = 1; i <= fam.n; ++i) {
        for (int m = 1; m <= variants; ++m) {
          const PatternHit hit{k, sign, i, m};
          if (pattern_holds(fam, hit, convention)) hits.push_back(hit);
        }
      }
    }
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

std::vector<PatternHit> detect_patterns(const Chain& f, InclusionConvention convention) {
  return detect_patterns(smallest_blocks(f), convention);
}

Mask excluded_range(const PatternHit& hit, int n) noexcept {
  Mask out = 0;
  const int step = hit.sign == Sign::Plus ? 1 : -1;
  for (int j = 1; j <= hit.k; ++j) out |= element_bit(wrap(hit.i + step * j, n));
  return out;
}

ExclusionTable lemma3_exclusions(const SmallestBlockFamily& fam, std::span<const PatternHit> hits) {
  ExclusionTable table;
  table.n = fam.n;
  for (int i = 1; i <= fam.n; ++i) table.excluded[i - 1] = fam.prime(i);
  for (const PatternHit& hit : hits) table.excluded[hit.i - 1] |= excluded_range(hit, fam.n);
  for (int i = 1; i <= fam.n; ++i) table.excluded[i - 1] &= static_cast<Mask>(~element_bit(i));
  return table;
}

ExclusionTable lemma3_exclusions(const Chain& f) {
  const SmallestBlockFamily fam = smallest_blocks(f);
  const auto hits = detect_patterns(fam);
  return lemma3_exclusions(fam, hits);
}

std::optional<int> corollary4(const Chain& f) {
  const ExclusionTable table = lemma3_exclusions(f);
  for (int i = 1; i <= table.n; ++i) {
    if (table.allowed_companions(i) == 0) return i;
  }
  return std::nullopt;
}

const char* to_string(StepKind kind) {
  switch (kind) {
    case StepKind::Exclusion:
      return "exclusion";
    case StepKind::Forced:
      return "forced";
    case StepKind::Propagate:
      return "propagate";
    case StepKind::Conflict:
      return "conflict";
  }
  return "?";
}

const char* to_string(ExclusionReason reason) {
  switch (reason) {
    case ExclusionReason::Pattern:
      return "pattern";
    case ExclusionReason::Neighbour:
      return "neighbour";
    case ExclusionReason::Subset:
      return "subset";
  }
  return "?";
}

const char* to_string(ConflictKind kind) {
  switch (kind) {
    case ConflictKind::Emptiness:
      return "emptiness";
    case ConflictKind::ForcedMismatch:
      return "forced-mismatch";
    case ConflictKind::ForcedCrossing:
      return "forced-crossing";
  }
  return "?";
}

std::string CertificateStep::str() const {
  const std::string c = "C_" + std::to_string(index);
  switch (kind) {
    case StepKind::Exclusion:
      if (reason == ExclusionReason::Pattern) return set_string(set) + " ∉ " + c + " by " + pattern->str();
      if (reason == ExclusionReason::Neighbour) return set_string(set) + " ∉ " + c + " by F_" + std::to_string(index) + "'";
      return set_string(set) + " ∉ " + c + " since C_" + std::to_string(source) + " is known";
    case StepKind::Forced:
      return c + " = " + set_string(set) + " (only companion left)";
    case StepKind::Propagate:
      return c + " = " + set_string(set) + " (since " + std::to_string(index) + " ∈ C_" + std::to_string(source) + ")";
    case StepKind::Conflict:
      if (conflict == ConflictKind::Emptiness) return "contradiction: " + c + " has no companion";
      if (conflict == ConflictKind::ForcedMismatch)
        return "contradiction: C_" + std::to_string(other) + " = " + set_string(set) + " forces " + c + " = " +
               set_string(set);
      return "contradiction: " + c + " and C_" + std::to_string(other) + " are incompatible";
  }
  return {};
}

std::vector<int> RefutationCertificate::forced_indices() const {
  std::vector<int> out;
  for (const CertificateStep& s : steps) {
    if (s.kind == StepKind::Forced) out.push_back(s.index);
  }
  return out;
}

bool RefutationCertificate::uses_forcing() const { return !forced_indices().empty(); }

namespace {

CertificateStep make_step(StepKind kind, int index, Mask set) {
  CertificateStep step;
  step.kind = kind;
  step.index = index;
  step.set = set;
  return step;
}

// Blocks of a chain are nested or disjoint and non-crossing.
bool incompatible_blocks(Mask a, Mask b) {
  if (is_subset(a, b) || is_subset(b, a)) return false;
  return (a & b) != 0 || masks_cross(a, b);
}

class Propagator {
 public:
  Propagator(const Chain& f, std::span<const PatternHit> hits) : cert_{f, {}}, n_(f.n()) {
    const SmallestBlockFamily fam = smallest_blocks(f);
    for (const PatternHit& hit : hits) {
      exclude(hit.i, excluded_range(hit, n_), ExclusionReason::Pattern, hit, 0);
    }
    for (int i = 1; i <= n_; ++i) exclude(i, fam.prime(i), ExclusionReason::Neighbour, std::nullopt, 0);
  }

  std::optional<RefutationCertificate> run() {
    bool changed = true;
    while (changed && !done_) {
      changed = false;
      for (int i = 1; i <= n_ && !done_; ++i) {
        if (known_[i - 1] == 0 && allowed_companions(i) == 0) conflict(ConflictKind::Emptiness, i, 0, 0);
      }
      for (int i = 1; i <= n_ && !done_; ++i) {
        if (known_[i - 1] != 0) continue;
        const Mask allowed = allowed_companions(i);
        if (popcount(allowed) == 1) {
          known_[i - 1] = static_cast<Mask>(allowed | element_bit(i));
          push(make_step(StepKind::Forced, i, known_[i - 1]));
          changed = true;
        }
      }
      for (int i = 1; i <= n_ && !done_; ++i) {
        const Mask s = known_[i - 1];
        if (s == 0) continue;
        for_each_element(static_cast<Mask>(s & ~element_bit(i)), [&](int x) {
          if (done_) return;
          if ((excluded_[x - 1] & s) != 0 || (known_[x - 1] != 0 && known_[x - 1] != s)) {
            conflict(ConflictKind::ForcedMismatch, x, i, s);
          } else if (known_[x - 1] == 0) {
            known_[x - 1] = s;
            CertificateStep step = make_step(StepKind::Propagate, x, s);
            step.source = i;
            push(step);
            changed = true;
          }
        });
      }
      for (int j = 1; j <= n_ && !done_; ++j) {
        const Mask s = known_[j - 1];
        if (s == 0) continue;
        for (int i = 1; i <= n_; ++i) {
          if (i == j || known_[i - 1] != 0 || has_element(excluded_[i - 1], j)) continue;
          if ((s & excluded_[i - 1]) != 0) {
            changed |= exclude(i, element_bit(j), ExclusionReason::Subset, std::nullopt, j);
          }
        }
      }
      for (int i = 1; i <= n_ && !done_; ++i) {
        for (int j = i + 1; j <= n_ && !done_; ++j) {
          if (known_[i - 1] != 0 && known_[j - 1] != 0 && incompatible_blocks(known_[i - 1], known_[j - 1])) {
            conflict(ConflictKind::ForcedCrossing, i, j, 0);
          }
        }
      }
    }
    if (!done_) return std::nullopt;
    return cert_;
  }

 private:
  Mask allowed_companions(int i) const {
    return static_cast<Mask>(full_mask(n_) & ~excluded_[i - 1] & ~element_bit(i));
  }

  bool exclude(int i, Mask set, ExclusionReason reason, std::optional<PatternHit> hit, int source) {
    const Mask fresh = static_cast<Mask>(set & ~excluded_[i - 1] & ~element_bit(i));
    if (fresh == 0) return false;
    excluded_[i - 1] |= fresh;
    CertificateStep step = make_step(StepKind::Exclusion, i, reason == ExclusionReason::Pattern ? set : fresh);
    step.reason = reason;
    step.pattern = hit;
    step.source = source;
    push(step);
    return true;
  }

  void conflict(ConflictKind kind, int index, int other, Mask set) {
    CertificateStep step = make_step(StepKind::Conflict, index, set);
    step.conflict = kind;
    step.other = other;
    push(step);
    done_ = true;
  }

  void push(const CertificateStep& step) { cert_.steps.push_back(step); }

  RefutationCertificate cert_;
  int n_;
  std::array<Mask, kMaxN> excluded_{};
  std::array<Mask, kMaxN> known_{};
  bool done_ = false;
};

}  // namespace

std::optional<RefutationCertificate> pattern_refute(const Chain& f, InclusionConvention convention) {
  std::vector<PatternHit> hits = detect_patterns(f, convention);
  if (!Propagator(f, hits).run()) return std::nullopt;
  // Prefer emptiness at a single index when the hits there suffice.
  const SmallestBlockFamily fam = smallest_blocks(f);
  for (int i = 1; i <= f.n(); ++i) {
    Mask excluded = static_cast<Mask>(fam.prime(i) | element_bit(i));
    std::vector<PatternHit> local;
    for (const PatternHit& hit : hits) {
      if (hit.i != i) continue;
      excluded |= excluded_range(hit, f.n());
      local.push_back(hit);
    }
    if (excluded == full_mask(f.n())) {
      hits = std::move(local);
      break;
    }
  }
  // Drop hits the refutation does not need, scanning from the last.
  for (std::size_t k = hits.size(); k-- > 0;) {
    std::vector<PatternHit> fewer = hits;
    fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(k));
    if (Propagator(f, fewer).run()) hits = std::move(fewer);
  }
  return Propagator(f, hits).run();
}

std::optional<RefutationCertificate> pattern_refute(const Chain& f, std::span<const PatternHit> hits,
                                                    InclusionConvention convention) {
  const SmallestBlockFamily fam = smallest_blocks(f);
  std::vector<PatternHit> usable;
  for (const PatternHit& hit : hits) {
    if (pattern_holds(fam, hit, convention)) usable.push_back(hit);
  }
  return Propagator(f, usable).run();
}

std::string WitnessOrRefutation::witness_str() const {
  if (!witness) return {};
  std::string out;
  for (const Partition& p : *witness) {
    if (!out.empty()) out.push_back('<');
    out += p.str();
  }
  return out;
}

namespace {

class WitnessSearch {
 public:
  explicit WitnessSearch(const SmallestBlockFamily& fam) : fam_(fam), n_(fam.n) {}

  std::optional<std::vector<Partition>> run() {
    Partition bottom(n_);
    std::array<Mask, kMaxN> parts{};
    std::copy(bottom.parts().begin(), bottom.parts().end(), parts.begin());
    if (extend(parts, static_cast<std::size_t>(n_), 0)) return stack_;
    return std::nullopt;
  }

 private:
  bool extend(const std::array<Mask, kMaxN>& parts, std::size_t count, Mask merged_elements) {
    if (static_cast<int>(stack_.size()) == n_ - 2) {
      // Elements never merged have C_j = {1..n}, so C_j' is both neighbours.
      bool ok = true;
      for_each_element(static_cast<Mask>(full_mask(n_) & ~merged_elements), [&](int j) {
        if (fam_.prime(j) != 0) ok = false;
      });
      return ok;
    }
    for (std::size_t a = 0; a < count; ++a) {
      for (std::size_t b = a + 1; b < count; ++b) {
        const Mask block = parts[a] | parts[b];
        bool crosses = false;
        for (std::size_t c = 0; c < count && !crosses; ++c) {
          if (c != a && c != b) crosses = masks_cross(block, parts[c]);
        }
        if (crosses) continue;
        // The new block is C_j for every element merging for the first time.
        bool pruned = false;
        for_each_element(static_cast<Mask>(block & ~merged_elements), [&](int j) {
          if ((block & fam_.prime(j)) != 0) pruned = true;
        });
        if (pruned) continue;
        std::array<Mask, kMaxN> next{};
        std::size_t m = 0;
        for (std::size_t c = 0; c < count; ++c) {
          if (c != a && c != b) next[m++] = parts[c];
        }
        next[m++] = block;
        stack_.push_back(Partition(n_, std::span<const Mask>(next.data(), m)));
        if (extend(next, m, static_cast<Mask>(merged_elements | block))) return true;
        stack_.pop_back();
      }
    }
    return false;
  }

  const SmallestBlockFamily& fam_;
  int n_;
  std::vector<Partition> stack_;
};

}  // namespace

WitnessOrRefutation cond_IV(const SmallestBlockFamily& fam) {
  WitnessOrRefutation out;
  out.witness = WitnessSearch(fam).run();
  return out;
}

WitnessOrRefutation cond_IV(const Chain& f) { return cond_IV(smallest_blocks(f)); }

MaximalChainTable::MaximalChainTable(int n) : n_(n) {
  std::map<std::array<Mask, kMaxN>, std::size_t> seen;
  for_each_maximal_chain(n, [&](std::span<const Partition> members) {
    ++chain_count_;
    const SmallestBlockFamily fam = smallest_blocks(members);
    if (seen.emplace(fam.blocks, families_.size()).second) {
      families_.push_back(fam);
      signatures_.push_back(fam.prime_signature());
      first_chain_.emplace_back(members.begin(), members.end());
    }
  });
}

std::vector<std::size_t> MaximalChainTable::compatible(const SmallestBlockFamily& f_family) const {
  const std::uint32_t sig = f_family.prime_signature();
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < signatures_.size(); ++k) {
    if ((signatures_[k] & sig) == 0) out.push_back(k);
  }
  return out;
}

WitnessOrRefutation MaximalChainTable::cond_IV(const Chain& f) const {
  if (f.n() != n_) throw UniverseMismatch(n_, f.n());
  const std::uint32_t sig = smallest_blocks(f).prime_signature();
  WitnessOrRefutation out;
  for (std::size_t k = 0; k < signatures_.size(); ++k) {
    if ((signatures_[k] & sig) == 0) {
      out.witness = first_chain_[k];
      break;
    }
  }
  return out;
}

}  // namespace ncp
