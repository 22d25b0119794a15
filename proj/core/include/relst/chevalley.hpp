#pragma once

#include <functional>

#include "relst/eval.hpp"

namespace relst {

// Structure constants N_{ab} in {-1, +1} for a simply laced system, built
// from a bimultiplicative asymmetry function on the root lattice (simple-root
// values fixed by an orientation of the Dynkin diagram) twisted by the sign
// of the root. The twist is what makes all six sign identities hold.
struct StructureConstants {
  DatumPtr datum;
  std::vector<std::pair<int, int>> orientation;          // directed edges (from, to)
  std::vector<std::vector<unsigned char>> eps_exp;       // rank x rank, exponents mod 2

  int eps(int a, int b) const;  // asymmetry sign on roots
  int N(int a, int b) const;    // defined when a + b is a root
};

// Default orientation: every Dynkin edge directed toward the higher node.
StructureConstants build_constants(const DatumPtr& datum,
                                   std::vector<std::pair<int, int>> orientation = {});

struct NRelReport {
  bool pass = false;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
};

NRelReport verify_n_rel(const StructureConstants& sc);
NRelReport verify_n_rel_fn(const RootDatum& d, const std::function<int(int, int)>& n);

// A-type subsystem of rank <= 3 mapped into the index model, with per-root
// sign twists solving chi_a chi_b = +- N_ab chi_{a+b} over GF(2).
struct SubsystemEmbedding {
  std::vector<int> delta;  // sorted root indices
  std::size_t arank = 0;
  std::map<int, std::pair<std::size_t, std::size_t>> pair_of;
  std::map<int, int> chi;
};

SubsystemEmbedding embed_subsystem(const StructureConstants& sc, const std::vector<int>& delta);

// Commutative verification context: a scalar crossed module d: a -> K, the
// root datum with constants, and a Mat(4, K) host for evaluation.
class ChevContext {
 public:
  static std::shared_ptr<const ChevContext> make(const DatumPtr& datum, CrossedModule scalar,
                                                 std::vector<std::pair<int, int>> orientation = {});

  const RootDatum& phi() const { return *constants_.datum; }
  const StructureConstants& constants() const { return constants_; }
  const CrossedModule& scalar() const { return scalar_; }
  const SemidirectRing& ssc() const { return ssc_; }
  const CtxPtr& host() const { return host_; }
  u64 fingerprint() const { return fp_; }
  const std::string& name() const { return name_; }

  Vec sample_a(Rng& rng) const;  // ideal part of a x| K
  Vec sample_k(Rng& rng) const;  // K part
  Vec d_of(const Vec& v) const;

  const SubsystemEmbedding& embedding_for(const std::vector<int>& delta) const;

 private:
  ChevContext() = default;
  StructureConstants constants_;
  CrossedModule scalar_;
  SemidirectRing ssc_;
  CtxPtr host_;
  std::string name_;
  u64 fp_ = 0;
  mutable std::mutex mu_;
  mutable std::map<std::vector<int>, SubsystemEmbedding> embeddings_;
};

using ChevPtr = std::shared_ptr<const ChevContext>;

GenSymbol chev_z(const ChevContext& c, int root, Vec a, Vec p);
GenSymbol chev_x(const ChevContext& c, int root, Vec a);   // a in the ideal part
GenSymbol chev_k(const ChevContext& c, int root, Vec p);   // st(Phi, K) generator

Word z2c_word(const ChevContext& c, int alpha, int beta, const Vec& a, const Vec& b,
              const Vec& p);
Word z4c_word(const ChevContext& c, int alpha, int beta, const Vec& a, const Vec& b,
              const Vec& p, const Vec& q);

std::vector<RelationId> chevalley_catalog();

// Both sides as words in z_alpha symbols; idx holds the root indices.
RelationInstance chevalley_instance(const ChevContext& c, RelationId id,
                                    const InstanceArgs& args);
RelationInstance sample_chevalley_instance(const ChevContext& c, RelationId id, Rng& rng);

// Transport through an embedding into the linear host.
Word transport(const ChevContext& c, const SubsystemEmbedding& emb, const Word& w);

struct ChevVerdict {
  bool pass = false;
  RelationId id = RelationId::Add1;
  std::string note;
  std::string support_type;   // A1 / A1xA1 / A2
  bool support_rank_le2 = false;
  std::vector<int> delta;     // subsystem used for the embedding
};

ChevVerdict verify_chevalley_instance(const ChevContext& c, const RelationInstance& inst);

}  // namespace relst
