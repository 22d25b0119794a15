#include "relst/words.hpp"

#include <algorithm>
#include <numeric>

#include "relst/eval.hpp"

namespace relst {

bool zero_payload(const GenSymbol& s) {
  for (u64 c : s.payload)
    if (c != 0) return false;
  return true;
}

void Word::push(const GenSymbol& s, int exp) {
  if (exp != 1 && exp != -1) throw Error("Word::push: exponent must be +1 or -1");
  if (zero_payload(s)) return;
  if (!terms_.empty() && terms_.back().sym == s && terms_.back().exp == -exp) {
    terms_.pop_back();
    return;
  }
  terms_.push_back({s, exp});
}

Word& Word::operator*=(const Word& w) {
  for (const auto& t : w.terms_) push(t.sym, t.exp);
  return *this;
}

Word Word::inverse() const {
  Word out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) out.push(it->sym, -it->exp);
  return out;
}

Word Word::conjugate(const Word& g, const Word& h) {
  Word out = g;
  out *= h;
  out *= g.inverse();
  return out;
}

Word Word::commutator(const Word& g, const Word& h) {
  Word out = g;
  out *= h;
  out *= g.inverse();
  out *= h.inverse();
  return out;
}

GenSymbol zsym(const LinearContext& c, std::size_t i, std::size_t j, Vec a, Vec p) {
  if (i >= c.n() || j >= c.n() || i == j)
    throw Error("zsym: indices must be distinct members of the family");
  const FiniteRing& s = c.S();
  if (!s.canonical(a) || !s.canonical(p)) throw Error("zsym: element not canonical");
  if (!c.sd().pure_a(a)) throw Error("zsym: payload must lie in the ideal part");
  if (s.mul(c.idem(i), s.mul(a, c.idem(j))) != a)
    throw Error("zsym: payload outside e_i A e_j");
  if (s.mul(c.idem(j), s.mul(p, c.idem(i))) != p)
    throw Error("zsym: parameter outside e_j S e_i");
  GenSymbol out;
  out.kind = SymKind::LinZ;
  out.i = static_cast<u32>(i);
  out.j = static_cast<u32>(j);
  out.payload = std::move(a);
  out.param = std::move(p);
  return out;
}

GenSymbol xsym(const LinearContext& c, std::size_t i, std::size_t j, Vec a) {
  return zsym(c, i, j, std::move(a), c.S().zero());
}

GenSymbol rsym(const LinearContext& c, std::size_t i, std::size_t j, Vec p) {
  if (i >= c.n() || j >= c.n() || i == j)
    throw Error("rsym: indices must be distinct members of the family");
  const FiniteRing& s = c.S();
  if (!s.canonical(p)) throw Error("rsym: element not canonical");
  if (s.mul(c.idem(i), s.mul(p, c.idem(j))) != p)
    throw Error("rsym: parameter outside e_i S e_j");
  GenSymbol out;
  out.kind = SymKind::LinX;
  out.i = static_cast<u32>(i);
  out.j = static_cast<u32>(j);
  out.payload = std::move(p);
  return out;
}

Word word_of(const GenSymbol& s) {
  Word w;
  w.push(s, 1);
  return w;
}

namespace {

void need_distinct(std::initializer_list<std::size_t> idx, const char* what) {
  std::vector<std::size_t> v(idx);
  std::sort(v.begin(), v.end());
  if (std::adjacent_find(v.begin(), v.end()) != v.end())
    throw Error(std::string(what) + ": indices must be distinct");
}

}  // namespace

Word z2_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
             const Vec& a, const Vec& b, const Vec& p) {
  need_distinct({i, j, k}, "z2");
  const FiniteRing& s = c.S();
  Word w = word_of(zsym(c, i, j, a, p));
  w.push(xsym(c, i, k, b), 1);
  w.push(xsym(c, j, k, s.mul(p, b)), 1);
  return w;
}

Word z2t_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
              const Vec& a, const Vec& b, const Vec& p) {
  need_distinct({i, j, k}, "z2t");
  const FiniteRing& s = c.S();
  Word w = word_of(zsym(c, j, k, b, p));
  w.push(xsym(c, i, k, a), 1);
  w.push(xsym(c, i, j, s.neg(s.mul(a, p))), 1);
  return w;
}

Word z4_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
             const Vec& a, const Vec& b, const Vec& p, const Vec& q) {
  need_distinct({i, j, k}, "z4");
  const FiniteRing& s = c.S();
  Word w = z2_word(c, i, k, j, a, s.neg(s.mul(a, q)), p);
  w *= z2_word(c, j, k, i, b, s.neg(s.mul(b, p)), q);
  return w;
}

Word z4t_word(const LinearContext& c, std::size_t i, std::size_t j, std::size_t k,
              const Vec& a, const Vec& b, const Vec& p, const Vec& q) {
  need_distinct({i, j, k}, "z4t");
  const FiniteRing& s = c.S();
  Word w = z2t_word(c, k, i, j, s.mul(q, a), a, p);
  w *= z2t_word(c, j, i, k, s.mul(p, b), b, q);
  return w;
}

Word expand_abbreviation(const LinearContext& c, AbbrevTag tag,
                         const std::array<std::size_t, 3>& idx,
                         const std::vector<Vec>& payloads, const std::vector<Vec>& params) {
  auto want = [&](std::size_t np, std::size_t nq) {
    if (payloads.size() != np || params.size() != nq)
      throw Error("expand_abbreviation: wrong argument count");
  };
  switch (tag) {
    case AbbrevTag::Z2:
      want(2, 1);
      return z2_word(c, idx[0], idx[1], idx[2], payloads[0], payloads[1], params[0]);
    case AbbrevTag::Z2t:
      want(2, 1);
      return z2t_word(c, idx[0], idx[1], idx[2], payloads[0], payloads[1], params[0]);
    case AbbrevTag::Z4:
      want(2, 2);
      return z4_word(c, idx[0], idx[1], idx[2], payloads[0], payloads[1], params[0], params[1]);
    case AbbrevTag::Z4t:
      want(2, 2);
      return z4t_word(c, idx[0], idx[1], idx[2], payloads[0], payloads[1], params[0], params[1]);
  }
  throw Error("expand_abbreviation: unknown tag");
}

// ---------------------------------------------------------------------------
// Relation catalog

const char* relation_name(RelationId id) {
  switch (id) {
    case RelationId::St1: return "St1";
    case RelationId::St2: return "St2";
    case RelationId::St3: return "St3";
    case RelationId::Rel1: return "Rel1";
    case RelationId::Rel2: return "Rel2";
    case RelationId::Rel2t: return "Rel2t";
    case RelationId::Rel3: return "Rel3";
    case RelationId::Add1: return "Add1";
    case RelationId::Add2: return "Add2";
    case RelationId::Add2t: return "Add2t";
    case RelationId::Add3: return "Add3";
    case RelationId::Add3t: return "Add3t";
    case RelationId::Conj1: return "Conj1";
    case RelationId::Conj1t: return "Conj1t";
    case RelationId::Mult: return "Mult";
    case RelationId::Dis: return "Dis";
    case RelationId::Sym: return "Sym";
    case RelationId::Symt: return "Symt";
    case RelationId::Conj2: return "Conj2";
    case RelationId::Conj2t: return "Conj2t";
    case RelationId::Conj2p: return "Conj2'";
    case RelationId::Conj2pt: return "Conj2't";
    case RelationId::HW: return "HW";
    case RelationId::Rel4: return "Rel4";
    case RelationId::FT1: return "FT1";
    case RelationId::FT2: return "FT2";
    case RelationId::FT3: return "FT3";
    case RelationId::FT4: return "FT4";
    case RelationId::FT5: return "FT5";
  }
  throw Error("relation_name: unknown id");
}

std::optional<RelationId> relation_from_name(const std::string& name) {
  static const RelationId all[] = {
      RelationId::St1,    RelationId::St2,     RelationId::St3,   RelationId::Rel1,
      RelationId::Rel2,   RelationId::Rel2t,   RelationId::Rel3,  RelationId::Add1,
      RelationId::Add2,   RelationId::Add2t,   RelationId::Add3,  RelationId::Add3t,
      RelationId::Conj1,  RelationId::Conj1t,  RelationId::Mult,  RelationId::Dis,
      RelationId::Sym,    RelationId::Symt,    RelationId::Conj2, RelationId::Conj2t,
      RelationId::Conj2p, RelationId::Conj2pt, RelationId::HW,    RelationId::Rel4,
      RelationId::FT1,    RelationId::FT2,     RelationId::FT3,   RelationId::FT4,
      RelationId::FT5};
  for (RelationId id : all)
    if (name == relation_name(id)) return id;
  return std::nullopt;
}

std::vector<RelationId> linear_catalog() {
  return {RelationId::St1,    RelationId::St2,     RelationId::St3,   RelationId::Rel1,
          RelationId::Rel2,   RelationId::Rel2t,   RelationId::Rel3,  RelationId::Add1,
          RelationId::Add2,   RelationId::Add2t,   RelationId::Add3,  RelationId::Add3t,
          RelationId::Conj1,  RelationId::Conj1t,  RelationId::Mult,  RelationId::Dis,
          RelationId::Sym,    RelationId::Symt,    RelationId::Conj2, RelationId::Conj2t,
          RelationId::Conj2p, RelationId::Conj2pt, RelationId::HW,    RelationId::Rel4};
}

std::vector<RelationId> defining_ids() {
  return {RelationId::Add1,   RelationId::Dis, RelationId::Conj2,
          RelationId::Conj2t, RelationId::HW,  RelationId::Rel4};
}

namespace {

const Vec& arg(const InstanceArgs& a, const char* name) {
  auto it = a.elts.find(name);
  if (it == a.elts.end())
    throw Error(std::string("relation_instance: missing argument ") + name);
  return it->second;
}

std::size_t at(const InstanceArgs& a, std::size_t pos, std::size_t need, const char* what) {
  if (a.idx.size() != need) throw Error(std::string(what) + ": wrong index count");
  return a.idx[pos];
}

}  // namespace

RelationInstance relation_instance(const LinearContext& c, RelationId id,
                                   const InstanceArgs& args) {
  const FiniteRing& s = c.S();
  auto mul = [&](const Vec& x, const Vec& y) { return s.mul(x, y); };
  auto mul3 = [&](const Vec& x, const Vec& y, const Vec& z) { return s.mul(s.mul(x, y), z); };
  auto mul4 = [&](const Vec& x, const Vec& y, const Vec& z, const Vec& w) {
    return s.mul(s.mul(s.mul(x, y), z), w);
  };
  auto add = [&](const Vec& x, const Vec& y) { return s.add(x, y); };
  auto sub = [&](const Vec& x, const Vec& y) { return s.sub(x, y); };
  auto neg = [&](const Vec& x) { return s.neg(x); };

  RelationInstance inst;
  inst.id = id;
  inst.args = args;
  Word& lhs = inst.lhs;
  Word& rhs = inst.rhs;

  switch (id) {
    case RelationId::St1: {
      std::size_t i = at(args, 0, 2, "St1"), j = at(args, 1, 2, "St1");
      const Vec &a = arg(args, "a"), &a2 = arg(args, "a'");
      lhs.push(xsym(c, i, j, a), 1);
      lhs.push(xsym(c, i, j, a2), 1);
      rhs.push(xsym(c, i, j, add(a, a2)), 1);
      break;
    }
    case RelationId::St2: {
      std::size_t i = at(args, 0, 3, "St2"), j = at(args, 1, 3, "St2"), k = at(args, 2, 3, "St2");
      need_distinct({i, j, k}, "St2");
      const Vec &a = arg(args, "a"), &b = arg(args, "b");
      lhs = Word::commutator(word_of(xsym(c, i, j, a)), word_of(xsym(c, j, k, b)));
      rhs.push(xsym(c, i, k, mul(a, b)), 1);
      break;
    }
    case RelationId::St3: {
      std::size_t i = at(args, 0, 4, "St3"), j = at(args, 1, 4, "St3"), k = at(args, 2, 4, "St3"),
                  l = at(args, 3, 4, "St3");
      if (j == k || i == l) throw Error("St3: requires j != k and i != l");
      lhs = Word::commutator(word_of(xsym(c, i, j, arg(args, "a"))),
                             word_of(xsym(c, k, l, arg(args, "b"))));
      break;
    }
    case RelationId::Rel1: {
      std::size_t i = at(args, 0, 4, "Rel1"), j = at(args, 1, 4, "Rel1"),
                  k = at(args, 2, 4, "Rel1"), l = at(args, 3, 4, "Rel1");
      if (j == k || i == l) throw Error("Rel1: requires j != k and i != l");
      Word g = word_of(rsym(c, i, j, arg(args, "p")));
      Word h = word_of(xsym(c, k, l, arg(args, "a")));
      lhs = Word::conjugate(g, h);
      rhs = h;
      break;
    }
    case RelationId::Rel2: {
      std::size_t i = at(args, 0, 3, "Rel2"), j = at(args, 1, 3, "Rel2"), k = at(args, 2, 3, "Rel2");
      need_distinct({i, j, k}, "Rel2");
      const Vec &p = arg(args, "p"), &a = arg(args, "a");
      lhs = Word::conjugate(word_of(rsym(c, i, j, p)), word_of(xsym(c, j, k, a)));
      rhs.push(xsym(c, i, k, mul(p, a)), 1);
      rhs.push(xsym(c, j, k, a), 1);
      break;
    }
    case RelationId::Rel2t: {
      std::size_t i = at(args, 0, 3, "Rel2t"), j = at(args, 1, 3, "Rel2t"),
                  k = at(args, 2, 3, "Rel2t");
      need_distinct({i, j, k}, "Rel2t");
      const Vec &p = arg(args, "p"), &a = arg(args, "a");
      lhs = Word::conjugate(word_of(rsym(c, j, k, p)), word_of(xsym(c, i, j, a)));
      rhs.push(xsym(c, i, j, a), 1);
      rhs.push(xsym(c, i, k, neg(mul(a, p))), 1);
      break;
    }
    case RelationId::Rel3: {
      std::size_t i = at(args, 0, 2, "Rel3"), j = at(args, 1, 2, "Rel3");
      const Vec& a = arg(args, "a");
      if (!args.aux) throw Error("Rel3: missing conjugand word");
      const Word& g = *args.aux;
      lhs = Word::conjugate(word_of(rsym(c, i, j, c.d_of(a))), g);
      rhs = word_of(xsym(c, i, j, a));
      rhs *= g;
      rhs.push(xsym(c, i, j, neg(a)), 1);
      break;
    }
    case RelationId::Add1: {
      std::size_t i = at(args, 0, 2, "Add1"), j = at(args, 1, 2, "Add1");
      const Vec &a = arg(args, "a"), &a2 = arg(args, "a'"), &p = arg(args, "p");
      lhs.push(zsym(c, i, j, add(a, a2), p), 1);
      rhs.push(zsym(c, i, j, a, p), 1);
      rhs.push(zsym(c, i, j, a2, p), 1);
      break;
    }
    case RelationId::Add2: {
      std::size_t i = at(args, 0, 3, "Add2"), j = at(args, 1, 3, "Add2"), k = at(args, 2, 3, "Add2");
      const Vec &a = arg(args, "a"), &a2 = arg(args, "a'"), &b = arg(args, "b"),
                &b2 = arg(args, "b'"), &p = arg(args, "p");
      lhs = z2_word(c, i, j, k, add(a, a2), add(b, b2), p);
      rhs = z2_word(c, i, j, k, a, b, p);
      rhs *= z2_word(c, i, j, k, a2, b2, p);
      break;
    }
    case RelationId::Add2t: {
      std::size_t i = at(args, 0, 3, "Add2t"), j = at(args, 1, 3, "Add2t"),
                  k = at(args, 2, 3, "Add2t");
      const Vec &a = arg(args, "a"), &a2 = arg(args, "a'"), &b = arg(args, "b"),
                &b2 = arg(args, "b'"), &p = arg(args, "p");
      lhs = z2t_word(c, i, j, k, add(a, a2), add(b, b2), p);
      rhs = z2t_word(c, i, j, k, a, b, p);
      rhs *= z2t_word(c, i, j, k, a2, b2, p);
      break;
    }
    case RelationId::Add3: {
      std::size_t i = at(args, 0, 3, "Add3"), j = at(args, 1, 3, "Add3"), k = at(args, 2, 3, "Add3");
      const Vec &a = arg(args, "a"), &a2 = arg(args, "a'"), &b = arg(args, "b"),
                &b2 = arg(args, "b'"), &p = arg(args, "p"), &q = arg(args, "q");
      lhs = z4_word(c, i, j, k, add(a, a2), add(b, b2), p, q);
      rhs = z4_word(c, i, j, k, a, b, p, q);
      rhs *= z4_word(c, i, j, k, a2, b2, p, q);
      break;
    }
    case RelationId::Add3t: {
      std::size_t i = at(args, 0, 3, "Add3t"), j = at(args, 1, 3, "Add3t"),
                  k = at(args, 2, 3, "Add3t");
      const Vec &a = arg(args, "a"), &a2 = arg(args, "a'"), &b = arg(args, "b"),
                &b2 = arg(args, "b'"), &p = arg(args, "p"), &q = arg(args, "q");
      lhs = z4t_word(c, i, j, k, add(a, a2), add(b, b2), p, q);
      rhs = z4t_word(c, i, j, k, a, b, p, q);
      rhs *= z4t_word(c, i, j, k, a2, b2, p, q);
      break;
    }
    case RelationId::Conj1: {
      std::size_t i = at(args, 0, 3, "Conj1"), j = at(args, 1, 3, "Conj1"), k = at(args, 2, 3, "Conj1");
      need_distinct({i, j, k}, "Conj1");
      const Vec &cc = arg(args, "c"), &p = arg(args, "p"), &a = arg(args, "a"), &b = arg(args, "b");
      Word inner = word_of(xsym(c, i, k, a));
      inner.push(xsym(c, j, k, b), 1);
      lhs = Word::conjugate(word_of(zsym(c, i, j, cc, p)), inner);
      rhs.push(xsym(c, i, k, sub(add(a, mul(cc, b)), mul3(cc, p, a))), 1);
      rhs.push(xsym(c, j, k, sub(add(b, mul3(p, cc, b)), mul4(p, cc, p, a))), 1);
      break;
    }
    case RelationId::Conj1t: {
      std::size_t i = at(args, 0, 3, "Conj1t"), j = at(args, 1, 3, "Conj1t"),
                  k = at(args, 2, 3, "Conj1t");
      need_distinct({i, j, k}, "Conj1t");
      const Vec &cc = arg(args, "c"), &p = arg(args, "p"), &a = arg(args, "a"), &b = arg(args, "b");
      Word inner = word_of(xsym(c, k, i, a));
      inner.push(xsym(c, k, j, b), 1);
      lhs = Word::conjugate(word_of(zsym(c, i, j, cc, p)), inner);
      rhs.push(xsym(c, k, i, add(add(a, mul3(a, cc, p)), mul4(b, p, cc, p))), 1);
      rhs.push(xsym(c, k, j, sub(sub(b, mul(a, cc)), mul3(b, p, cc))), 1);
      break;
    }
    case RelationId::Mult: {
      std::size_t i = at(args, 0, 3, "Mult"), j = at(args, 1, 3, "Mult"), k = at(args, 2, 3, "Mult");
      need_distinct({i, j, k}, "Mult");
      const Vec &a = arg(args, "a"), &b = arg(args, "b"), &p = arg(args, "p");
      Word u = word_of(xsym(c, j, k, mul(p, a)));
      u.push(xsym(c, i, k, a), 1);
      Word v = word_of(xsym(c, k, j, b));
      v.push(xsym(c, k, i, neg(mul(b, p))), 1);
      lhs = Word::commutator(u, v);
      rhs.push(zsym(c, i, j, mul(a, b), p), 1);
      break;
    }
    case RelationId::Dis: {
      std::size_t i = at(args, 0, 4, "Dis"), j = at(args, 1, 4, "Dis"), k = at(args, 2, 4, "Dis"),
                  l = at(args, 3, 4, "Dis");
      need_distinct({i, j, k, l}, "Dis");
      lhs = Word::commutator(word_of(zsym(c, i, j, arg(args, "a"), arg(args, "p"))),
                             word_of(zsym(c, k, l, arg(args, "b"), arg(args, "q"))));
      break;
    }
    case RelationId::Sym: {
      std::size_t i = at(args, 0, 3, "Sym"), j = at(args, 1, 3, "Sym"), k = at(args, 2, 3, "Sym");
      const Vec &a = arg(args, "a"), &b = arg(args, "b"), &p = arg(args, "p"), &q = arg(args, "q");
      lhs = z4_word(c, i, j, k, a, b, p, q);
      rhs = z4_word(c, j, i, k, b, a, q, p);
      break;
    }
    case RelationId::Symt: {
      std::size_t i = at(args, 0, 3, "Symt"), j = at(args, 1, 3, "Symt"), k = at(args, 2, 3, "Symt");
      const Vec &a = arg(args, "a"), &b = arg(args, "b"), &p = arg(args, "p"), &q = arg(args, "q");
      lhs = z4t_word(c, i, j, k, a, b, p, q);
      rhs = z4t_word(c, i, k, j, b, a, q, p);
      break;
    }
    case RelationId::Conj2:
    case RelationId::Conj2p: {
      const char* what = id == RelationId::Conj2 ? "Conj2" : "Conj2'";
      std::size_t i = at(args, 0, 3, what), j = at(args, 1, 3, what), k = at(args, 2, 3, what);
      need_distinct({i, j, k}, what);
      const Vec &cc = arg(args, "c"), &r = arg(args, "r"), &a = arg(args, "a"),
                &b = arg(args, "b"), &p = arg(args, "p"), &q = arg(args, "q");
      lhs = Word::conjugate(word_of(zsym(c, i, j, cc, r)), z4_word(c, i, j, k, a, b, p, q));
      Vec na = sub(add(a, mul(cc, b)), mul3(cc, r, a));
      Vec nb = sub(add(b, mul3(r, cc, b)), mul4(r, cc, r, a));
      Vec u = add(mul3(p, cc, r), mul4(q, r, cc, r));  // in e_k A e_i
      Vec v = add(mul(p, cc), mul3(q, r, cc));         // in e_k A e_j
      if (id == RelationId::Conj2) {
        Word outer = word_of(xsym(c, k, i, u));
        outer.push(xsym(c, k, j, neg(v)), 1);
        rhs = Word::conjugate(outer, z4_word(c, i, j, k, na, nb, p, q));
      } else {
        rhs = z4_word(c, i, j, k, na, nb, add(p, c.d_of(u)), sub(q, c.d_of(v)));
      }
      break;
    }
    case RelationId::Conj2t:
    case RelationId::Conj2pt: {
      const char* what = id == RelationId::Conj2t ? "Conj2t" : "Conj2't";
      std::size_t i = at(args, 0, 3, what), j = at(args, 1, 3, what), k = at(args, 2, 3, what);
      need_distinct({i, j, k}, what);
      const Vec &cc = arg(args, "c"), &r = arg(args, "r"), &a = arg(args, "a"),
                &b = arg(args, "b"), &p = arg(args, "p"), &q = arg(args, "q");
      lhs = Word::conjugate(word_of(zsym(c, i, j, cc, r)), z4t_word(c, k, i, j, a, b, p, q));
      Vec na = add(add(a, mul3(a, cc, r)), mul4(b, r, cc, r));
      Vec nb = sub(sub(b, mul(a, cc)), mul3(b, r, cc));
      Vec u = sub(mul(cc, q), mul3(cc, r, p));         // in e_i A e_k
      Vec v = sub(mul3(r, cc, q), mul4(r, cc, r, p));  // in e_j A e_k
      if (id == RelationId::Conj2t) {
        Word outer = word_of(xsym(c, i, k, u));
        outer.push(xsym(c, j, k, v), 1);
        rhs = Word::conjugate(outer, z4t_word(c, k, i, j, na, nb, p, q));
      } else {
        rhs = z4t_word(c, k, i, j, na, nb, add(p, c.d_of(u)), add(q, c.d_of(v)));
      }
      break;
    }
    case RelationId::HW: {
      std::size_t i = at(args, 0, 3, "HW"), j = at(args, 1, 3, "HW"), k = at(args, 2, 3, "HW");
      need_distinct({i, j, k}, "HW");
      const Vec &a = arg(args, "a"), &p = arg(args, "p"), &q = arg(args, "q"), &r = arg(args, "r");
      lhs = z4_word(c, i, j, k, a, mul(q, a), sub(r, mul(p, q)), p);
      rhs = z4t_word(c, i, j, k, neg(mul(a, p)), a, q, r);
      break;
    }
    case RelationId::Rel4: {
      std::size_t i = at(args, 0, 2, "Rel4"), j = at(args, 1, 2, "Rel4");
      const Vec &a = arg(args, "a"), &p = arg(args, "p"), &b = arg(args, "b");
      lhs.push(zsym(c, i, j, a, add(p, c.d_of(b))), 1);
      rhs.push(xsym(c, j, i, b), 1);
      rhs.push(zsym(c, i, j, a, p), 1);
      rhs.push(xsym(c, j, i, neg(b)), 1);
      break;
    }
    default:
      throw Error(std::string("relation_instance: ") + relation_name(id) +
                  " is not a group relation over the linear model");
  }
  return inst;
}

// ---------------------------------------------------------------------------
// Sampling

namespace {

std::vector<std::size_t> pick_distinct(Rng& rng, std::size_t n, std::size_t k) {
  if (k > n) throw Error("pick_distinct: not enough indices");
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t t = 0; t < k; ++t) std::swap(pool[t], pool[t + rng.below(n - t)]);
  pool.resize(k);
  return pool;
}

}  // namespace

Word random_z_word(const LinearContext& c, Rng& rng, std::size_t len, bool s_params) {
  Word w;
  for (std::size_t t = 0; t < len; ++t) {
    auto ij = pick_distinct(rng, c.n(), 2);
    Vec a = c.sample_a(ij[0], ij[1], rng);
    Vec p = s_params ? c.sample_s(ij[1], ij[0], rng) : c.sample_r(ij[1], ij[0], rng);
    w.push(zsym(c, ij[0], ij[1], a, p), rng.coin() ? 1 : -1);
  }
  return w;
}

RelationInstance sample_instance(const LinearContext& c, RelationId id, Rng& rng,
                                 bool s_params) {
  const std::size_t n = c.n();
  InstanceArgs a;
  auto A = [&](std::size_t i, std::size_t j) { return c.sample_a(i, j, rng); };
  auto P = [&](std::size_t i, std::size_t j) {
    return s_params ? c.sample_s(i, j, rng) : c.sample_r(i, j, rng);
  };

  switch (id) {
    case RelationId::St1: {
      a.idx = pick_distinct(rng, n, 2);
      a.elts["a"] = A(a.idx[0], a.idx[1]);
      a.elts["a'"] = A(a.idx[0], a.idx[1]);
      break;
    }
    case RelationId::St2: {
      a.idx = pick_distinct(rng, n, 3);
      a.elts["a"] = A(a.idx[0], a.idx[1]);
      a.elts["b"] = A(a.idx[1], a.idx[2]);
      break;
    }
    case RelationId::St3:
    case RelationId::Rel1: {
      auto ij = pick_distinct(rng, n, 2);
      std::size_t k, l;
      do {
        k = rng.below(n);
        l = rng.below(n);
      } while (k == l || ij[1] == k || ij[0] == l);
      a.idx = {ij[0], ij[1], k, l};
      if (id == RelationId::St3)
        a.elts["a"] = A(ij[0], ij[1]);
      else
        a.elts["p"] = P(ij[0], ij[1]);
      a.elts[id == RelationId::St3 ? "b" : "a"] = A(k, l);
      break;
    }
    case RelationId::Rel2:
    case RelationId::Rel2t: {
      a.idx = pick_distinct(rng, n, 3);
      if (id == RelationId::Rel2) {
        a.elts["p"] = P(a.idx[0], a.idx[1]);
        a.elts["a"] = A(a.idx[1], a.idx[2]);
      } else {
        a.elts["p"] = P(a.idx[1], a.idx[2]);
        a.elts["a"] = A(a.idx[0], a.idx[1]);
      }
      break;
    }
    case RelationId::Rel3: {
      a.idx = pick_distinct(rng, n, 2);
      a.elts["a"] = A(a.idx[0], a.idx[1]);
      a.aux = random_z_word(c, rng, 3, s_params);
      break;
    }
    case RelationId::Add1: {
      a.idx = pick_distinct(rng, n, 2);
      a.elts["a"] = A(a.idx[0], a.idx[1]);
      a.elts["a'"] = A(a.idx[0], a.idx[1]);
      a.elts["p"] = P(a.idx[1], a.idx[0]);
      break;
    }
    case RelationId::Add2: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["a"] = A(i, j);
      a.elts["a'"] = A(i, j);
      a.elts["b"] = A(i, k);
      a.elts["b'"] = A(i, k);
      a.elts["p"] = P(j, i);
      break;
    }
    case RelationId::Add2t: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["a"] = A(i, k);
      a.elts["a'"] = A(i, k);
      a.elts["b"] = A(j, k);
      a.elts["b'"] = A(j, k);
      a.elts["p"] = P(k, j);
      break;
    }
    case RelationId::Add3:
    case RelationId::Sym: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["a"] = A(i, k);
      a.elts["b"] = A(j, k);
      a.elts["p"] = P(k, i);
      a.elts["q"] = P(k, j);
      if (id == RelationId::Add3) {
        a.elts["a'"] = A(i, k);
        a.elts["b'"] = A(j, k);
      }
      break;
    }
    case RelationId::Add3t:
    case RelationId::Symt: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["a"] = A(i, j);
      a.elts["b"] = A(i, k);
      a.elts["p"] = P(j, i);
      a.elts["q"] = P(k, i);
      if (id == RelationId::Add3t) {
        a.elts["a'"] = A(i, j);
        a.elts["b'"] = A(i, k);
      }
      break;
    }
    case RelationId::Conj1: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["c"] = A(i, j);
      a.elts["p"] = P(j, i);
      a.elts["a"] = A(i, k);
      a.elts["b"] = A(j, k);
      break;
    }
    case RelationId::Conj1t: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["c"] = A(i, j);
      a.elts["p"] = P(j, i);
      a.elts["a"] = A(k, i);
      a.elts["b"] = A(k, j);
      break;
    }
    case RelationId::Mult: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["a"] = A(i, k);
      a.elts["b"] = A(k, j);
      a.elts["p"] = P(j, i);
      break;
    }
    case RelationId::Dis: {
      a.idx = pick_distinct(rng, n, 4);
      a.elts["a"] = A(a.idx[0], a.idx[1]);
      a.elts["p"] = P(a.idx[1], a.idx[0]);
      a.elts["b"] = A(a.idx[2], a.idx[3]);
      a.elts["q"] = P(a.idx[3], a.idx[2]);
      break;
    }
    case RelationId::Conj2:
    case RelationId::Conj2p: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["c"] = A(i, j);
      a.elts["r"] = P(j, i);
      a.elts["a"] = A(i, k);
      a.elts["b"] = A(j, k);
      a.elts["p"] = P(k, i);
      a.elts["q"] = P(k, j);
      break;
    }
    case RelationId::Conj2t:
    case RelationId::Conj2pt: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["c"] = A(i, j);
      a.elts["r"] = P(j, i);
      a.elts["a"] = A(k, i);
      a.elts["b"] = A(k, j);
      a.elts["p"] = P(i, k);
      a.elts["q"] = P(j, k);
      break;
    }
    case RelationId::HW: {
      a.idx = pick_distinct(rng, n, 3);
      std::size_t i = a.idx[0], j = a.idx[1], k = a.idx[2];
      a.elts["a"] = A(i, k);
      a.elts["p"] = P(k, j);
      a.elts["q"] = P(j, i);
      a.elts["r"] = P(k, i);
      break;
    }
    case RelationId::Rel4: {
      a.idx = pick_distinct(rng, n, 2);
      a.elts["a"] = A(a.idx[0], a.idx[1]);
      a.elts["p"] = P(a.idx[1], a.idx[0]);
      a.elts["b"] = A(a.idx[1], a.idx[0]);
      break;
    }
    default:
      throw Error(std::string("sample_instance: cannot sample ") + relation_name(id));
  }
  return relation_instance(c, id, a);
}

std::vector<RelationInstance> random_instances(const LinearContext& c,
                                               const std::vector<RelationId>& ids,
                                               std::size_t count, u64 seed, bool s_params) {
  std::vector<RelationInstance> out;
  out.reserve(ids.size() * count);
  for (RelationId id : ids)
    for (std::size_t t = 0; t < count; ++t) {
      Rng rng(derive_seed(seed, relation_name(id), t));
      out.push_back(sample_instance(c, id, rng, s_params));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Transposition

Word transpose_word(const Word& w) {
  Word out;
  for (auto it = w.terms().rbegin(); it != w.terms().rend(); ++it) {
    GenSymbol s = it->sym;
    if (s.kind != SymKind::LinZ && s.kind != SymKind::LinX)
      throw Error("transpose_word: only linear symbols transpose");
    std::swap(s.i, s.j);
    out.push(s, it->exp);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conjugation algorithm (the recursion behind the uniqueness lemma)

namespace {

struct ConjRec {
  const LinearContext& c;
  ExtremePolicy policy;

  Word conj(const std::vector<UnipotentFactor>& g, std::size_t i, std::size_t j, Vec a) {
    const FiniteRing& s = c.S();
    Word out;
    if (s.is_zero(a)) return out;
    if (g.empty()) {
      out.push(xsym(c, i, j, std::move(a)), 1);
      return out;
    }
    if (g.size() == 1 && g[0].root == IndexRoot{j, i}) {
      out.push(zsym(c, i, j, std::move(a), g[0].param), 1);
      return out;
    }

    RootSet sigma;
    for (const auto& f : g) sigma.insert(f.root);
    std::vector<IndexRoot> ext = extreme_roots(sigma);
    std::erase(ext, IndexRoot{j, i});
    if (ext.empty()) throw Error("conjugation_form: no admissible extreme root (internal)");
    IndexRoot beta = policy == ExtremePolicy::LexLeast
                         ? *std::min_element(ext.begin(), ext.end())
                         : *std::max_element(ext.begin(), ext.end());

    std::vector<UnipotentFactor> g1;
    Vec p;
    if (g.back().root == beta) {
      g1.assign(g.begin(), g.end() - 1);
      p = g.back().param;
    } else {
      Vec u = s.one();
      for (const auto& f : g) u = s.mul(u, s.add(s.one(), f.param));
      std::vector<IndexRoot> order;
      for (const auto& f : g)
        if (!(f.root == beta)) order.push_back(f.root);
      order.push_back(beta);
      auto pay = unipotent_factorization(c, u, order);
      if (!pay) throw Error("conjugation_form: unipotent refactorization failed (internal)");
      for (std::size_t t = 0; t + 1 < order.size(); ++t) g1.push_back({order[t], (*pay)[t]});
      p = pay->back();
    }

    const std::size_t k = beta.i, l = beta.j;
    if (l != i && j != k) return conj(g1, i, j, std::move(a));
    if (l == i && j != k) {
      Word w = conj(g1, k, j, s.mul(p, a));
      w *= conj(g1, i, j, std::move(a));
      return w;
    }
    if (l != i && j == k) {
      Word w = conj(g1, i, j, a);
      w *= conj(g1, i, l, s.neg(s.mul(a, p)));
      return w;
    }
    throw Error("conjugation_form: stripped the opposite root (internal)");
  }
};

}  // namespace

Word conjugation_form(const LinearContext& c, const std::vector<UnipotentFactor>& g,
                      const Word& h, ExtremePolicy policy) {
  const FiniteRing& s = c.S();
  RootSet sigma;
  for (const auto& f : g) {
    if (f.root.i >= c.n() || f.root.j >= c.n() || f.root.i == f.root.j)
      throw Error("conjugation_form: bad root in g");
    if (s.mul(c.idem(f.root.i), s.mul(f.param, c.idem(f.root.j))) != f.param)
      throw Error("conjugation_form: parameter outside its Peirce component");
    if (!sigma.insert(f.root).second) throw Error("conjugation_form: repeated root in g");
  }
  if (!is_special_closed(sigma))
    throw Error("conjugation_form: the roots of g are not special closed");

  ConjRec rec{c, policy};
  Word out;
  for (const auto& t : h.terms()) {
    if (t.sym.kind != SymKind::LinZ || !s.is_zero(t.sym.param))
      throw Error("conjugation_form: h must be a word in x-symbols");
    Vec payload = t.exp == 1 ? t.sym.payload : s.neg(t.sym.payload);
    out *= rec.conj(g, t.sym.i, t.sym.j, std::move(payload));
  }
  return out;
}

}  // namespace relst
