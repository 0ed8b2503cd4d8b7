// Replays refutation certificates from first principles: the smallest-block
// family is rebuilt from the chain members and every pattern is re-read from
// its own clause table, so nothing here shares code with the engine that
// produced the certificate.

#include <array>
#include <bit>
#include <string>

#include "ncp/condition_four.hpp"

namespace ncp {

namespace {

// '=' equal, '>' superset, '<' subset, between consecutive terms.
constexpr std::array<std::array<const char*, 8>, 4> kClauseShapes = {{
    {">", nullptr, nullptr, nullptr, nullptr, nullptr, nullptr, nullptr},
    {"=", ">>", nullptr, nullptr, nullptr, nullptr, nullptr, nullptr},
    {"=>", "=<", ">=", ">>>", nullptr, nullptr, nullptr, nullptr},
    {"==", "=>>", "=<>", "=<<", ">=>", ">=<", ">>=", ">>>>"},
}};

struct Family {
  int n = 0;
  std::array<unsigned, 10> block{};  // index by element 1..n
};

int cyc(int e, int n) { return ((e - 1) % n + n) % n + 1; }
unsigned one(int e) { return 1u << e; }  // element e at bit e, separate from Mask

unsigned to_local(Mask m, int n) {
  unsigned out = 0;
  for (int e = 1; e <= n; ++e) {
    if (m & (1u << (e - 1))) out |= one(e);
  }
  return out;
}

Family rebuild(const Chain& chain) {
  Family fam;
  fam.n = chain.n();
  unsigned everything = 0;
  for (int e = 1; e <= fam.n; ++e) everything |= one(e);
  for (int i = 1; i <= fam.n; ++i) {
    fam.block[i] = everything;
    for (const Partition& p : chain.members()) {
      for (Mask part : p.parts()) {
        const unsigned local = to_local(part, fam.n);
        if ((local & one(i)) && std::popcount(local) >= 2) {
          // Smallest over all members, not just the first hit.
          if (std::popcount(local) < std::popcount(fam.block[i])) fam.block[i] = local;
        }
      }
    }
  }
  return fam;
}

unsigned prime(const Family& fam, int i) {
  return fam.block[i] & (one(cyc(i - 1, fam.n)) | one(cyc(i + 1, fam.n)));
}

bool clause(const Family& fam, const PatternHit& hit) {
  if (hit.k < 1 || hit.k > 4 || hit.variant < 1 || hit.variant > 8) return false;
  const char* shape = kClauseShapes[hit.k - 1][hit.variant - 1];
  if (shape == nullptr) return false;
  const int dir = hit.sign == Sign::Plus ? 1 : -1;
  for (int j = 0; shape[j] != '\0'; ++j) {
    const unsigned a = fam.block[cyc(hit.i + dir * j, fam.n)];
    const unsigned b = fam.block[cyc(hit.i + dir * (j + 1), fam.n)];
    const bool ok = shape[j] == '=' ? a == b : shape[j] == '>' ? (b & ~a) == 0 : (a & ~b) == 0;
    if (!ok) return false;
  }
  return true;
}

bool chords_cross(unsigned a, unsigned b, int n) {
  if (a & b) return false;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      for (int r = q + 1; r <= n; ++r)
        for (int s = r + 1; s <= n; ++s) {
          if ((a & one(p)) && (b & one(q)) && (a & one(r)) && (b & one(s))) return true;
          if ((b & one(p)) && (a & one(q)) && (b & one(r)) && (a & one(s))) return true;
        }
  return false;
}

bool fail(std::string* error, std::size_t step, const std::string& why) {
  if (error) *error = "step " + std::to_string(step + 1) + ": " + why;
  return false;
}

}  // namespace

bool replay_certificate(const RefutationCertificate& cert, std::string* error) {
  const Family fam = rebuild(cert.chain);
  const int n = fam.n;
  unsigned everything = 0;
  for (int e = 1; e <= n; ++e) everything |= one(e);
  std::array<unsigned, 10> excluded{};
  std::array<unsigned, 10> known{};
  auto companions = [&](int i) { return everything & ~excluded[i] & ~one(i); };

  if (cert.steps.empty()) return fail(error, 0, "empty certificate");
  for (std::size_t k = 0; k < cert.steps.size(); ++k) {
    const CertificateStep& st = cert.steps[k];
    const int i = st.index;
    if (i < 1 || i > n) return fail(error, k, "index out of range");
    const unsigned set = to_local(st.set, n);
    const bool last = k + 1 == cert.steps.size();
    if ((st.kind == StepKind::Conflict) != last) return fail(error, k, "a conflict must be the final step");

    switch (st.kind) {
      case StepKind::Exclusion: {
        if (set == 0) return fail(error, k, "empty exclusion");
        if (st.reason == ExclusionReason::Pattern) {
          if (!st.pattern || st.pattern->i != i) return fail(error, k, "pattern missing or at another index");
          if (!clause(fam, *st.pattern)) return fail(error, k, st.pattern->str() + " does not hold");
          unsigned range = 0;
          const int dir = st.pattern->sign == Sign::Plus ? 1 : -1;
          for (int j = 1; j <= st.pattern->k; ++j) range |= one(cyc(i + dir * j, n));
          if (range != set) return fail(error, k, "exclusion range does not match the pattern");
        } else if (st.reason == ExclusionReason::Neighbour) {
          if ((set & ~prime(fam, i)) != 0) return fail(error, k, "set is not inside F_i'");
        } else {
          const int j = st.source;
          if (j < 1 || j > n || set != one(j)) return fail(error, k, "subset exclusion must name its source");
          if (known[j] == 0) return fail(error, k, "source block not yet known");
          if ((known[j] & excluded[i]) == 0) return fail(error, k, "source block avoids the exclusions");
        }
        excluded[i] |= set & ~one(i);
        break;
      }
      case StepKind::Forced: {
        if (known[i] != 0) return fail(error, k, "block already known");
        if (set != (companions(i) | one(i)) || std::popcount(set) != 2)
          return fail(error, k, "more than one companion remains");
        known[i] = set;
        break;
      }
      case StepKind::Propagate: {
        const int j = st.source;
        if (j < 1 || j > n || j == i) return fail(error, k, "bad source");
        if (known[j] != set || !(set & one(i)) || std::popcount(set) != 2)
          return fail(error, k, "propagation does not follow from the source block");
        if (known[i] != 0) return fail(error, k, "block already known");
        if (set & excluded[i]) return fail(error, k, "propagated block meets exclusions");
        known[i] = set;
        break;
      }
      case StepKind::Conflict: {
        if (st.conflict == ConflictKind::Emptiness) {
          if (known[i] != 0 || companions(i) != 0) return fail(error, k, "companions remain");
        } else if (st.conflict == ConflictKind::ForcedMismatch) {
          const int j = st.other;
          if (j < 1 || j > n || known[j] != set || !(set & one(i)) || std::popcount(set) != 2)
            return fail(error, k, "mismatch source is not a known two-element block containing the index");
          const bool disagrees = known[i] != 0 && known[i] != set;
          const bool excluded_partner = (set & excluded[i]) != 0;
          if (!disagrees && !excluded_partner) return fail(error, k, "no mismatch");
        } else {
          const int j = st.other;
          if (j < 1 || j > n || known[i] == 0 || known[j] == 0) return fail(error, k, "blocks not known");
          const unsigned a = known[i], b = known[j];
          const bool nested = (a & ~b) == 0 || (b & ~a) == 0;
          if (nested || (!(a & b) && !chords_cross(a, b, n))) return fail(error, k, "blocks are compatible");
        }
        break;
      }
    }
  }
  return true;
}

}  // namespace ncp
