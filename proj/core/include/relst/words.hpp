#pragma once

#include <array>
#include <optional>

#include "relst/context.hpp"
#include "relst/roots.hpp"

namespace relst {

// Generator symbols. Linear z_ij(a, p) carries its payload a (ideal part of
// S = A x| R) and parameter p (element of e_j S e_i; the plain relative group
// has p in the R part) by value, so words are self-contained. x_ij(a) is
// z_ij(a, 0); LinX is the st(R) generator x_ij(p) with p in R, which words
// over the relative group use only as a conjugator.
enum class SymKind : unsigned char { LinZ, LinX, ChevZ, ChevX };

struct GenSymbol {
  SymKind kind = SymKind::LinZ;
  u32 i = 0, j = 0;
  i32 root = -1;
  Vec payload;
  Vec param;
  friend bool operator==(const GenSymbol&, const GenSymbol&) = default;
};

struct SymTerm {
  GenSymbol sym;
  int exp = 1;
  friend bool operator==(const SymTerm&, const SymTerm&) = default;
};

// Freely reduced word: no adjacent inverse pairs, no zero-payload symbols.
class Word {
 public:
  Word() = default;
  const std::vector<SymTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void push(const GenSymbol& s, int exp);
  Word& operator*=(const Word& w);
  friend Word operator*(Word a, const Word& b) { return a *= b; }
  Word inverse() const;
  static Word conjugate(const Word& g, const Word& h);   // g h g^{-1}
  static Word commutator(const Word& g, const Word& h);  // [g, h]

  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<SymTerm> terms_;
};

bool zero_payload(const GenSymbol& s);

// Validated symbol constructors (linear model).
GenSymbol zsym(const LinearContext& c, std::size_t i, std::size_t j, Vec a, Vec p);
GenSymbol xsym(const LinearContext& c, std::size_t i, std::size_t j, Vec a);
GenSymbol rsym(const LinearContext& c, std::size_t i, std::size_t j, Vec p);

Word word_of(const GenSymbol& s);

// The z_{i,j[k]}, z_{[i]j,k}, z_{i+j,k}, z_{i,j+k} abbreviations.
Word z2_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
             const Vec& a, const Vec& b, const Vec& p);
Word z2t_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
              const Vec& a, const Vec& b, const Vec& p);
Word z4_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
             const Vec& a, const Vec& b, const Vec& p, const Vec& q);
Word z4t_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
              const Vec& a, const Vec& b, const Vec& p, const Vec& q);

enum class AbbrevTag { Z2, Z2t, Z4, Z4t };
Word expand_abbreviation(const LinearContext& c, AbbrevTag tag,
                         const std::array<std::size_t, 3>& idx,
                         const std::vector<Vec>& payloads, const std::vector<Vec>& params);

// ---------------------------------------------------------------------------
// Relation catalog

enum class RelationId {
  St1, St2, St3, Rel1, Rel2, Rel2t, Rel3,
  Add1, Add2, Add2t, Add3, Add3t,
  Conj1, Conj1t, Mult, Dis, Sym, Symt,
  Conj2, Conj2t, Conj2p, Conj2pt, HW, Rel4,
  FT1, FT2, FT3, FT4, FT5,
};

const char* relation_name(RelationId id);
std::optional<RelationId> relation_from_name(const std::string& name);

// Every id verified by the linear battery.
std::vector<RelationId> linear_catalog();
// The defining relations of the presented group (plus Rel4 for the crossed case).
std::vector<RelationId> defining_ids();

struct InstanceArgs {
  std::vector<std::size_t> idx;
  std::map<std::string, Vec> elts;
  std::optional<Word> aux;  // the free conjugand of Rel3
};

struct RelationInstance {
  RelationId id = RelationId::St1;
  InstanceArgs args;
  Word lhs, rhs;
};

RelationInstance relation_instance(const LinearContext& c, RelationId id,
                                   const InstanceArgs& args);

RelationInstance sample_instance(const LinearContext& c, RelationId id, Rng& rng,
                                 bool s_params = false);

// Deterministic batch: count instances per id, each seeded independently of
// worker scheduling.
std::vector<RelationInstance> random_instances(const LinearContext& c,
                                               const std::vector<RelationId>& ids,
                                               std::size_t count, u64 seed,
                                               bool s_params = false);

Word random_z_word(const LinearContext& c, Rng& rng, std::size_t len, bool s_params = false);

// ---------------------------------------------------------------------------
// Transposition (anti-isomorphism onto the opposite context)

Word transpose_word(const Word& w);

// ---------------------------------------------------------------------------
// The conjugation algorithm: rewrite ^g{h} as a word in z-symbols, where g is
// an ordered product of root elements over a special closed set and h is a
// word in x-symbols.

struct UnipotentFactor {
  IndexRoot root;
  Vec param;  // element of e_i S e_j for root (i, j)
};

enum class ExtremePolicy { LexLeast, LexGreatest };

Word conjugation_form(const LinearContext& c, const std::vector<UnipotentFactor>& g,
                      const Word& h, ExtremePolicy policy = ExtremePolicy::LexLeast);

}  // namespace relst
