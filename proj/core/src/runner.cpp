#include "relst/runner.hpp"

#include <atomic>
#include <fstream>
#include <iostream>
#include <thread>

#include <nlohmann/json.hpp>

#include "relst/elimination.hpp"

namespace relst {

using json = nlohmann::json;

namespace {

std::string hex64(u64 v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (u64 c : v) out.push_back(c);
  return out;
}

json instance_json(const RelationInstance& inst, u64 inst_seed) {
  json out;
  out["relation_id"] = relation_name(inst.id);
  out["seed"] = inst_seed;
  json idx = json::array();
  for (std::size_t i : inst.args.idx) idx.push_back(i);
  json elts;
  for (const auto& [name, v] : inst.args.elts) elts[name] = vec_json(v);
  out["parameters"] = {{"idx", idx}, {"elts", elts}};
  if (inst.args.aux) out["parameters"]["aux_length"] = inst.args.aux->size();
  return out;
}

void parallel_for(std::size_t jobs, std::size_t count,
                  const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto body = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < std::min(jobs, count); ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

struct CheckAccum {
  std::size_t samples = 0, passes = 0;
  std::vector<json> failures;

  json to_json() const {
    json out;
    out["samples"] = samples;
    out["passes"] = passes;
    out["pass"] = samples == passes;
    json f = json::array();
    for (const auto& x : failures) f.push_back(x);
    out["failures"] = f;
    return out;
  }
  bool pass() const { return samples == passes; }
};

// merge per-index verdicts in canonical order
CheckAccum collect(std::size_t count, std::size_t jobs,
                   const std::function<std::pair<bool, json>(std::size_t)>& one) {
  std::vector<char> ok(count, 0);
  std::vector<json> fail(count);
  parallel_for(jobs, count, [&](std::size_t t) {
    auto [pass, detail] = one(t);
    ok[t] = pass ? 1 : 0;
    if (!pass) fail[t] = std::move(detail);
  });
  CheckAccum acc;
  acc.samples = count;
  for (std::size_t t = 0; t < count; ++t) {
    if (ok[t])
      ++acc.passes;
    else if (acc.failures.size() < 16)
      acc.failures.push_back(fail[t]);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// relations suite (linear)

json run_relations(const JobConfig& cfg, bool& pass) {
  const LinearContext& ctx = *cfg.context.linear;
  std::vector<RelationId> ids = cfg.relation_filter.empty() ? linear_catalog() : cfg.relation_filter;
  json out;
  bool all = true;
  for (RelationId id : ids) {
    CheckAccum acc = collect(cfg.samples, cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
      u64 s = derive_seed(cfg.seed, relation_name(id), t);
      Rng rng(s);
      RelationInstance inst = sample_instance(ctx, id, rng, false);
      Verdict v = verify_instance(ctx, inst);
      if (v.pass) return {true, {}};
      json fail = instance_json(inst, s);
      fail["pass"] = false;
      fail["lhs_eval"] = vec_json(v.lhs_eval);
      fail["rhs_eval"] = vec_json(v.rhs_eval);
      return {false, fail};
    });
    all = all && acc.pass();
    out[relation_name(id)] = acc.to_json();
  }
  pass = all;
  json suite;
  suite["pass"] = all;
  suite["relations"] = out;
  return suite;
}

// ---------------------------------------------------------------------------
// elimination suite (linear): conjugation algorithm, F/G/FG, the commuting
// square, and the relativization round trips

json check_conjugation(const JobConfig& cfg, bool& pass) {
  const CtxPtr& ctx = cfg.context.linear;
  const LinearContext& c = *ctx;
  CheckAccum acc = collect(cfg.samples, cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
    u64 s = derive_seed(cfg.seed, "conj", t);
    Rng rng(s);
    RootSet sigma = random_special_closed(c.n(), rng, 3);
    std::vector<UnipotentFactor> g;
    for (const auto& r : sigma) g.push_back({r, c.sample_r(r.i, r.j, rng)});
    for (std::size_t i = g.size(); i > 1; --i) std::swap(g[i - 1], g[rng.below(i)]);
    Word h = random_z_word(c, rng, 2, false);
    Word hx;  // x-symbols only
    for (const auto& term : h.terms())
      hx.push(xsym(c, term.sym.i, term.sym.j, term.sym.payload), term.exp);

    Word w1 = conjugation_form(c, g, hx, ExtremePolicy::LexLeast);
    Word w2 = conjugation_form(c, g, hx, ExtremePolicy::LexGreatest);
    Unit eg = unit_one(c);
    for (const auto& f : g) {
      Vec u = c.S().add(c.S().one(), f.param);
      Vec ui = c.S().sub(c.S().one(), f.param);
      eg = unit_mul(c, eg, {u, ui});
    }
    Unit eh = eval_word(c, hx);
    Vec want = c.S().mul(eg.u, c.S().mul(eh.u, eg.uinv));
    Vec got1 = eval_word(c, w1).u;
    Vec got2 = eval_word(c, w2).u;
    if (got1 == want && got2 == want) return {true, {}};
    json fail;
    fail["map"] = "conj";
    fail["seed"] = s;
    fail["order_independent"] = got1 == got2;
    return {false, fail};
  });
  pass = acc.pass();
  return acc.to_json();
}

json check_f_map(const JobConfig& cfg, bool& pass) {
  const CtxPtr& base = cfg.context.linear;
  json out;
  bool all = true;
  for (RelationId id : linear_catalog()) {
    CheckAccum acc = collect(cfg.samples, cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
      u64 s = derive_seed(cfg.seed, std::string("F-") + relation_name(id), t);
      Rng rng(s);
      std::size_t l = rng.below(base->n());
      std::size_t m = rng.below(base->n());
      if (l == m) m = (m + 1) % base->n();
      MergedContext mc = merge_root(base, l, m);
      std::size_t need = id == RelationId::Dis || id == RelationId::St3 || id == RelationId::Rel1
                             ? 4
                             : 3;
      if (mc.child->n() < need) return {true, json{{"skipped", true}}};
      RelationInstance inst = sample_instance(*mc.child, id, rng, false);
      Unit lv = eval_word(*base, f_alpha(mc, inst.lhs));
      Unit rv = eval_word(*base, f_alpha(mc, inst.rhs));
      if (lv.u == rv.u) return {true, {}};
      json fail = instance_json(inst, s);
      fail["map"] = "F";
      fail["pass"] = false;
      return {false, fail};
    });
    all = all && acc.pass();
    out[relation_name(id)] = acc.to_json();
  }
  pass = all;
  json suite;
  suite["pass"] = all;
  suite["relations"] = out;
  return suite;
}

json check_fg_roundtrip(const JobConfig& cfg, bool& pass) {
  const CtxPtr& base = cfg.context.linear;
  const LinearContext& c = *base;
  std::vector<std::pair<std::size_t, std::size_t>> merges;
  for (std::size_t l = 0; l < c.n(); ++l)
    for (std::size_t m = l + 1; m < c.n(); ++m) merges.emplace_back(l, m);

  CheckAccum acc = collect(merges.size(), cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
    auto [l, m] = merges[t];
    MergedContext mc = merge_root(base, l, m);
    for (std::size_t i = 0; i < c.n(); ++i)
      for (std::size_t j = 0; j < c.n(); ++j) {
        if (i == j) continue;
        for (const Vec& a : all_elements(c.comp_a(i, j), 4096))
          for (const Vec& p : all_elements(c.comp_r(j, i), 4096)) {
            GenSymbol z = zsym(c, i, j, a, p);
            Word back = f_alpha(mc, g_alpha(mc, z));
            if (eval_word(c, back).u != eval_symbol(c, z).u) {
              json fail;
              fail["map"] = "FG";
              fail["merge"] = {l, m};
              fail["symbol"] = {{"i", i}, {"j", j}, {"a", vec_json(a)}, {"p", vec_json(p)}};
              return {false, fail};
            }
          }
      }
    return {true, {}};
  });
  pass = acc.pass();
  json out = acc.to_json();
  out["note"] = "exhaustive over all generator symbols per merged root";
  return out;
}

json check_elim_square(const JobConfig& cfg, bool& pass) {
  const CtxPtr& base = cfg.context.linear;
  const LinearContext& c = *base;
  // all rank-2 subsystems: index triangles (A2) and disjoint pairs (A1xA1)
  struct Psi {
    std::vector<std::pair<std::size_t, std::size_t>> order1, order2;
  };
  std::vector<Psi> psis;
  for (std::size_t a = 0; a < c.n(); ++a)
    for (std::size_t b = a + 1; b < c.n(); ++b)
      for (std::size_t d = b + 1; d < c.n(); ++d) {
        // A2 on {a, b, d}: eliminate (a,b) then the merged class against d
        Psi p;
        p.order1 = {{a, b}, {0, 0}};
        p.order2 = {{b, d}, {0, 0}};
        // second step pairs are fixed up below, in child coordinates
        psis.push_back(p);
      }
  // Disjoint pairs need n >= 4.
  std::vector<std::array<std::size_t, 4>> quads;
  for (std::size_t a = 0; a < c.n(); ++a)
    for (std::size_t b = a + 1; b < c.n(); ++b)
      for (std::size_t x = a + 1; x < c.n(); ++x)
        for (std::size_t y = x + 1; y < c.n(); ++y) {
          if (x == b || y == b) continue;
          if (std::min(x, y) < std::min(a, b)) continue;  // dedupe unordered pair of pairs
          quads.push_back({a, b, x, y});
        }

  bool all = true;
  json detail;

  {  // A2 squares
    std::vector<std::array<std::size_t, 3>> tris;
    for (std::size_t a = 0; a < c.n(); ++a)
      for (std::size_t b = a + 1; b < c.n(); ++b)
        for (std::size_t d = b + 1; d < c.n(); ++d) tris.push_back({a, b, d});
    CheckAccum acc = collect(tris.size(), cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
      auto [a, b, d] = std::tuple{tris[t][0], tris[t][1], tris[t][2]};
      // chain 1: merge (a,b), then merge that class with d
      MergedContext s1 = merge_root(base, a, b);
      MergedContext s2 = merge_root(s1.child, s1.child_of[a], s1.child_of[d]);
      // chain 2: merge (b,d), then merge with a
      MergedContext t1 = merge_root(base, b, d);
      MergedContext t2 = merge_root(t1.child, t1.child_of[b], t1.child_of[a]);
      if (s2.child->n() != t2.child->n()) throw Error("elim square: shape mismatch");
      for (std::size_t smp = 0; smp < std::min<std::size_t>(cfg.samples, 50); ++smp) {
        u64 s = derive_seed(cfg.seed, "square-a2-" + std::to_string(t), smp);
        Rng rng(s);
        const LinearContext& top = *s2.child;
        auto ij = std::pair<std::size_t, std::size_t>{rng.below(top.n()), rng.below(top.n())};
        if (ij.first == ij.second) ij.second = (ij.second + 1) % top.n();
        Vec av = top.sample_a(ij.first, ij.second, rng);
        Vec pv = top.sample_r(ij.second, ij.first, rng);
        GenSymbol z1 = zsym(top, ij.first, ij.second, av, pv);
        GenSymbol z2 = zsym(*t2.child, ij.first, ij.second, av, pv);
        Word w1 = f_alpha(s1, f_alpha(s2, word_of(z1)));
        Word w2 = f_alpha(t1, f_alpha(t2, word_of(z2)));
        if (eval_word(c, w1).u != eval_word(c, w2).u) {
          json fail;
          fail["map"] = "F";
          fail["square"] = {a, b, d};
          fail["seed"] = s;
          return {false, fail};
        }
      }
      return {true, {}};
    });
    all = all && acc.pass();
    detail["a2_squares"] = acc.to_json();
  }

  if (!quads.empty()) {  // A1 x A1 squares
    CheckAccum acc = collect(quads.size(), cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
      auto [a, b, x, y] = std::tuple{quads[t][0], quads[t][1], quads[t][2], quads[t][3]};
      MergedContext s1 = merge_root(base, a, b);
      MergedContext s2 = merge_root(s1.child, s1.child_of[x], s1.child_of[y]);
      MergedContext t1 = merge_root(base, x, y);
      MergedContext t2 = merge_root(t1.child, t1.child_of[a], t1.child_of[b]);
      for (std::size_t smp = 0; smp < std::min<std::size_t>(cfg.samples, 50); ++smp) {
        u64 s = derive_seed(cfg.seed, "square-a11-" + std::to_string(t), smp);
        Rng rng(s);
        const LinearContext& top = *s2.child;
        auto ij = std::pair<std::size_t, std::size_t>{rng.below(top.n()), rng.below(top.n())};
        if (ij.first == ij.second) ij.second = (ij.second + 1) % top.n();
        Vec av = top.sample_a(ij.first, ij.second, rng);
        Vec pv = top.sample_r(ij.second, ij.first, rng);
        // the two chains merge classes in a different child order; map indices
        GenSymbol z1 = zsym(top, ij.first, ij.second, av, pv);
        Word w1 = f_alpha(s1, f_alpha(s2, word_of(z1)));
        // translate the class labeling of chain 1's top into chain 2's top
        std::vector<std::size_t> to_parent(top.n());
        for (std::size_t pi = 0; pi < c.n(); ++pi)
          to_parent[s2.child_of[s1.child_of[pi]]] = pi;  // any representative
        std::size_t i2 = t2.child_of[t1.child_of[to_parent[ij.first]]];
        std::size_t j2 = t2.child_of[t1.child_of[to_parent[ij.second]]];
        GenSymbol z2 = zsym(*t2.child, i2, j2, av, pv);
        Word w2 = f_alpha(t1, f_alpha(t2, word_of(z2)));
        if (eval_word(c, w1).u != eval_word(c, w2).u) {
          json fail;
          fail["map"] = "F";
          fail["square"] = {a, b, x, y};
          fail["seed"] = s;
          return {false, fail};
        }
      }
      return {true, {}};
    });
    all = all && acc.pass();
    detail["a1a1_squares"] = acc.to_json();
  }

  pass = all;
  detail["pass"] = all;
  return detail;
}

json check_relativization(const JobConfig& cfg, bool& pass) {
  const LinearContext& c = *cfg.context.linear;
  bool all = true;
  json out;

  CheckAccum rt = collect(cfg.samples, cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
    u64 s = derive_seed(cfg.seed, "xi-roundtrip", t);
    Rng rng(s);
    Word w = random_z_word(c, rng, 3, true);  // parameters with ideal parts
    Word back = zeta_rewrite(c, xi_rewrite(c, w));
    if (eval_word(c, back).u == eval_word(c, w).u) return {true, {}};
    json fail;
    fail["map"] = "xi";
    fail["seed"] = s;
    return {false, fail};
  });
  all = all && rt.pass();
  out["roundtrip"] = rt.to_json();

  json images;
  for (RelationId id : {RelationId::Add1, RelationId::Dis, RelationId::Conj2, RelationId::HW}) {
    CheckAccum acc = collect(cfg.samples, cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
      u64 s = derive_seed(cfg.seed, std::string("xi-") + relation_name(id), t);
      Rng rng(s);
      RelationInstance inst = sample_instance(c, id, rng, true);
      Unit lv = eval_word(c, xi_rewrite(c, inst.lhs));
      Unit rv = eval_word(c, xi_rewrite(c, inst.rhs));
      if (lv.u == rv.u) return {true, {}};
      json fail = instance_json(inst, s);
      fail["map"] = "xi";
      return {false, fail};
    });
    all = all && acc.pass();
    images[relation_name(id)] = acc.to_json();
  }
  out["instance_images"] = images;
  out["pass"] = all;
  pass = all;
  return out;
}

json run_elimination(const JobConfig& cfg, bool& pass) {
  json out;
  bool all = true, p = false;
  out["conjugation"] = check_conjugation(cfg, p);
  all = all && p;
  out["F"] = check_f_map(cfg, p);
  all = all && p;
  out["FG"] = check_fg_roundtrip(cfg, p);
  all = all && p;
  out["squares"] = check_elim_square(cfg, p);
  all = all && p;
  out["relativization"] = check_relativization(cfg, p);
  all = all && p;
  out["pass"] = all;
  pass = all;
  return out;
}

// ---------------------------------------------------------------------------
// chevalley suite

json run_chevalley(const JobConfig& cfg, bool& pass) {
  const ChevContext& c = *cfg.context.chev;
  json out;
  bool all = true;

  NRelReport nrel = verify_n_rel(c.constants());
  out["n_rel"] = {{"pass", nrel.pass}, {"pairs_checked", nrel.pairs_checked}};
  all = all && nrel.pass;

  std::vector<RelationId> ids =
      cfg.relation_filter.empty() ? chevalley_catalog() : cfg.relation_filter;
  json rels;
  std::atomic<std::size_t> support_ok{0}, support_total{0};
  for (RelationId id : ids) {
    CheckAccum acc = collect(cfg.samples, cfg.jobs, [&](std::size_t t) -> std::pair<bool, json> {
      u64 s = derive_seed(cfg.seed, std::string("chev-") + relation_name(id), t);
      Rng rng(s);
      RelationInstance inst = sample_chevalley_instance(c, id, rng);
      ChevVerdict v = verify_chevalley_instance(c, inst);
      support_total.fetch_add(1);
      if (v.support_rank_le2) support_ok.fetch_add(1);
      if (v.pass && v.support_rank_le2) return {true, {}};
      json fail = instance_json(inst, s);
      fail["note"] = v.note;
      fail["support_type"] = v.support_type;
      return {false, fail};
    });
    all = all && acc.pass();
    rels[relation_name(id)] = acc.to_json();
  }
  out["relations"] = rels;
  out["support_rank_le2"] = {{"checked", support_total.load()}, {"ok", support_ok.load()}};
  out["pass"] = all;
  pass = all;
  return out;
}

// ---------------------------------------------------------------------------
// ft suite

json run_ft(const JobConfig& cfg, bool& pass) {
  json out;
  bool all = true;

  auto render = [&](const FtGroup& ft) {
    json j;
    j["generator_count"] = ft.presentation().gens.size();
    j["relation_count"] = ft.presentation().rows.size();
    json fac = json::array();
    for (i64 d : ft.snf().invariant_factors) fac.push_back(d);
    j["invariant_factors"] = fac;
    j["free_rank"] = ft.snf().free_rank;
    j["snf_certified"] = ft.snf().certified;
    return j;
  };

  if (cfg.context.kind == JobContext::Kind::Linear) {
    FtGroup ft = FtGroup::linear(cfg.context.linear);
    out["group"] = render(ft);
    // permutation invariance of the invariant factors
    bool perm_ok = true;
    for (u64 p = 1; p <= 2; ++p) {
      FtGroup ftp = FtGroup::linear(cfg.context.linear, 5000, derive_seed(cfg.seed, "ftperm", p));
      if (ftp.snf().invariant_factors != ft.snf().invariant_factors ||
          ftp.snf().free_rank != ft.snf().free_rank)
        perm_ok = false;
    }
    out["permutation_invariant"] = perm_ok;
    all = all && perm_ok && ft.snf().certified;

    QuotientMapVerdict qm =
        verify_quotient_map(cfg.context.linear, defining_ids(), cfg.samples, cfg.seed);
    out["quotient_map"] = {{"pass", qm.pass}, {"checked", qm.checked}, {"failures", qm.failures}};
    all = all && qm.pass;
  } else {
    FtGroup ft = FtGroup::chevalley(cfg.context.chev);
    out["group"] = render(ft);
    bool perm_ok = true;
    for (u64 p = 1; p <= 2; ++p) {
      FtGroup ftp =
          FtGroup::chevalley(cfg.context.chev, 5000, derive_seed(cfg.seed, "ftperm", p));
      if (ftp.snf().invariant_factors != ft.snf().invariant_factors ||
          ftp.snf().free_rank != ft.snf().free_rank)
        perm_ok = false;
    }
    out["permutation_invariant"] = perm_ok;
    all = all && perm_ok && ft.snf().certified;

    std::vector<RelationId> ids = {RelationId::Add1, RelationId::Dis, RelationId::Conj2,
                                   RelationId::HW, RelationId::Rel4};
    QuotientMapVerdict qm = verify_quotient_map_chev(cfg.context.chev, ids, cfg.samples, cfg.seed);
    out["quotient_map"] = {{"pass", qm.pass}, {"checked", qm.checked}, {"failures", qm.failures}};
    all = all && qm.pass;
  }
  out["pass"] = all;
  pass = all;
  return out;
}

}  // namespace

RunResult run_job(const JobConfig& cfg) {
  json report;
  report["schema_version"] = 1;
  report["context"] = {
      {"kind", cfg.context.kind == JobContext::Kind::Linear ? "linear" : "chevalley"},
      {"name", cfg.context.name()},
      {"fingerprint", hex64(cfg.context.fingerprint())}};
  report["seed"] = cfg.seed;
  report["samples"] = cfg.samples;
  json filt = json::array();
  for (RelationId id : cfg.relation_filter) filt.push_back(relation_name(id));
  report["relation_filter"] = filt;

  bool all = true;
  json suites;
  auto want = [&](const char* name) {
    return cfg.suite == "all" || cfg.suite == name;
  };
  const bool lin = cfg.context.kind == JobContext::Kind::Linear;

  if (want("relations") && lin) {
    bool p = false;
    suites["relations"] = run_relations(cfg, p);
    all = all && p;
  }
  if (want("elimination") && lin) {
    bool p = false;
    suites["elimination"] = run_elimination(cfg, p);
    all = all && p;
  }
  if (want("chevalley") && !lin) {
    bool p = false;
    suites["chevalley"] = run_chevalley(cfg, p);
    all = all && p;
  }
  if (want("ft")) {
    bool p = false;
    suites["ft"] = run_ft(cfg, p);
    all = all && p;
  }
  if (cfg.suite != "all" && suites.empty())
    throw ConfigError("suite '" + cfg.suite + "' does not apply to this context");

  report["suites"] = suites;
  report["pass"] = all;

  RunResult res;
  res.pass = all;
  res.report_json = report.dump(2) + "\n";
  return res;
}

int run_job_to_file(const JobConfig& cfg) {
  RunResult res = run_job(cfg);
  if (cfg.out_path.empty()) {
    std::cout << res.report_json;
  } else {
    std::ofstream out(cfg.out_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write report to " + cfg.out_path);
    out << res.report_json;
  }
  return res.pass ? 0 : 1;
}

}  // namespace relst
