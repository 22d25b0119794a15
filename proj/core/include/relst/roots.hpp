#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "relst/base.hpp"
#include "relst/rng.hpp"
#include "relst/zlin.hpp"

namespace relst {

// ---------------------------------------------------------------------------
// Type A_{n-1} roots as index pairs: (i, j) stands for e_i - e_j, i != j.

struct IndexRoot {
  std::size_t i = 0, j = 0;
  friend auto operator<=>(const IndexRoot&, const IndexRoot&) = default;
};

using RootSet = std::set<IndexRoot>;

inline IndexRoot root_neg(IndexRoot r) { return {r.j, r.i}; }

std::optional<IndexRoot> root_add(IndexRoot a, IndexRoot b);

// Inner product of e_i - e_j vectors (values in {-2,...,2}).
int root_inner(IndexRoot a, IndexRoot b);

std::vector<IndexRoot> all_index_roots(std::size_t n);

bool is_closed(const RootSet& sigma);
bool is_special_closed(const RootSet& sigma);

// Roots of a special closed set that are not sums of two of its members.
std::vector<IndexRoot> extreme_roots(const RootSet& sigma);

RootSet special_closure(RootSet sigma);

// Random special closed subset: the closure of a few roots drawn from the
// positive system of a random index order.
RootSet random_special_closed(std::size_t n, Rng& rng, std::size_t seeds);

enum class Rank2Type { Collinear, A1xA1, A2 };
Rank2Type rank2_type(IndexRoot a, IndexRoot b);

bool is_subsystem(std::size_t n, const RootSet& psi);

// Quotient of the A_{n-1} system by a subsystem: indices are merged along
// e_i ~ e_j when e_i - e_j lies in psi.
struct SubsystemQuotient {
  std::size_t parent_n = 0;
  RootSet psi;
  std::vector<std::vector<std::size_t>> classes;  // ordered by least member
  std::vector<std::size_t> class_of;

  std::size_t quotient_n() const { return classes.size(); }
  std::optional<IndexRoot> project(IndexRoot r) const;
};

SubsystemQuotient quotient(std::size_t n, const RootSet& psi);

// ---------------------------------------------------------------------------
// Simply laced root data in simple-root coordinates.

struct RootDatum {
  char type = 'A';
  int rank = 0;
  IMat gram;                            // simple-root inner products
  std::vector<std::vector<i64>> roots;  // all roots, coordinates over simples
  std::map<std::vector<i64>, int> index;
  std::vector<std::vector<i64>> inner_tab;
  std::vector<std::vector<int>> sum_tab;  // root index or -1

  std::size_t count() const { return roots.size(); }
  int index_of(const std::vector<i64>& v) const;
  i64 inner(int a, int b) const { return inner_tab[a][b]; }
  std::optional<int> sum(int a, int b) const;
  int neg(int a) const;
  bool positive(int a) const;
  std::vector<std::pair<int, int>> dynkin_edges() const;  // i < j
};

using DatumPtr = std::shared_ptr<const RootDatum>;

DatumPtr build_root_datum(char type, int rank);
DatumPtr root_datum_by_name(const std::string& name);  // "A3", "D4", "E6", ...

Rank2Type rank2_type(const RootDatum& d, int a, int b);

// Closed symmetric closure of a set of roots.
std::vector<int> subsystem_closure(const RootDatum& d, std::vector<int> seed);

// Rank of the span and connectedness-based type of a closed symmetric set.
// Returns "A1", "A1xA1", "A2", "A3", or "?" for anything else.
std::string classify_subsystem(const RootDatum& d, const std::vector<int>& roots);

int subsystem_rank(const RootDatum& d, const std::vector<int>& roots);

// All A_1 and A_3 subsystems (the family used by the colimit coverage check).
std::vector<std::vector<int>> subsystem_family_g(const RootDatum& d);

// Smallest A-type subsystem of rank <= 3 containing the given roots, if any.
std::optional<std::vector<int>> ambient_a_subsystem(const RootDatum& d,
                                                    const std::vector<int>& support);

}  // namespace relst
