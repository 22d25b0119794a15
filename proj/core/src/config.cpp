#include "relst/config.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace relst {

using nlohmann::json;

namespace {

Vec parse_element(const json& j, const FiniteRing& ring, const char* what) {
  if (j.is_number_integer()) {
    // scalar shorthand: k * 1
    i64 k = j.get<i64>();
    u64 ku = static_cast<u64>(((k % static_cast<i64>(ring.modulus())) +
                               static_cast<i64>(ring.modulus()))) %
             ring.modulus();
    return ring.scalar_mul(ku, ring.one());
  }
  if (!j.is_array()) throw ConfigError(std::string(what) + ": element must be an integer or a coordinate list");
  Vec v(ring.dim(), 0);
  if (j.size() != ring.dim())
    throw ConfigError(std::string(what) + ": coordinate list has wrong length");
  for (std::size_t s = 0; s < ring.dim(); ++s) {
    i64 c = j[s].get<i64>();
    u64 cu = static_cast<u64>(((c % static_cast<i64>(ring.modulus())) +
                               static_cast<i64>(ring.modulus()))) %
             ring.modulus();
    v[s] = cu;
  }
  if (!ring.canonical(v)) throw ConfigError(std::string(what) + ": element is not canonical");
  return v;
}

CrossedModule parse_crossed_module(const json& j, const RingPtr& ring) {
  std::string kind = j.value("kind", "");
  if (kind == "zero") return zero_crossed_module(ring);
  if (kind == "identity") return identity_crossed_module(ring);
  if (kind == "ideal") {
    std::vector<Vec> gens;
    if (j.contains("scalar"))
      gens.push_back(parse_element(j["scalar"], *ring, "crossed_module.scalar"));
    if (j.contains("generators"))
      for (const auto& g : j["generators"])
        gens.push_back(parse_element(g, *ring, "crossed_module.generators"));
    if (gens.empty()) throw ConfigError("ideal crossed module needs scalar or generators");
    return ideal_crossed_module(ring, gens);
  }
  if (kind == "homotope") {
    if (!j.contains("s")) throw ConfigError("homotope crossed module needs the central element s");
    return homotope_crossed_module(ring, parse_element(j["s"], *ring, "crossed_module.s"));
  }
  throw ConfigError("unknown crossed_module kind: " + kind);
}

struct BuiltRing {
  RingPtr ring;
  // the natural block structure carrier, when the construction has one
  RingPtr base;          // base of the outermost matrix layer
  std::size_t msize = 0;  // matrix size, 0 if none
  bool semidirect_layer = false;
  SemidirectRing sd;     // valid when semidirect_layer
};

BuiltRing parse_construction(const json& j) {
  std::string kind = j.value("kind", "");
  BuiltRing out;
  if (kind == "cyclic") {
    if (!j.contains("modulus")) throw ConfigError("cyclic construction needs a modulus");
    out.ring = cyclic_ring(j["modulus"].get<u64>());
    return out;
  }
  if (kind == "matrix") {
    BuiltRing inner = parse_construction(j.at("base"));
    if (inner.msize != 0) throw ConfigError("nested matrix constructions are not supported");
    out.base = inner.ring;
    out.msize = j.at("size").get<std::size_t>();
    out.ring = matrix_ring(out.msize, out.base);
    return out;
  }
  if (kind == "semidirect") {
    BuiltRing inner = parse_construction(j.at("base"));
    if (inner.msize == 0)
      throw ConfigError("semidirect construction needs a matrix base to carry idempotents");
    std::vector<Vec> gens;
    if (j.contains("ideal_scalar"))
      gens.push_back(parse_element(j["ideal_scalar"], *inner.ring, "semidirect.ideal_scalar"));
    if (j.contains("ideal_generators"))
      for (const auto& g : j["ideal_generators"])
        gens.push_back(parse_element(g, *inner.ring, "semidirect.ideal_generators"));
    if (gens.empty()) throw ConfigError("semidirect construction needs ideal generators");
    CrossedModule cm = ideal_crossed_module(inner.ring, gens);
    out.sd = semidirect(cm);
    out.ring = out.sd.ring;
    out.base = inner.base;
    out.msize = inner.msize;
    out.semidirect_layer = true;
    return out;
  }
  throw ConfigError("unknown ring construction kind: " + kind);
}

std::vector<std::vector<std::size_t>> parse_blocks(const json& j, std::size_t n) {
  std::vector<std::vector<std::size_t>> blocks;
  if (!j.contains("idempotents") || j["idempotents"].value("kind", "diagonal") == "diagonal") {
    for (std::size_t i = 0; i < n; ++i) blocks.push_back({i});
    return blocks;
  }
  const json& idem = j["idempotents"];
  if (idem.value("kind", "") != "partition")
    throw ConfigError("idempotents kind must be diagonal or partition");
  for (const auto& blk : idem.at("blocks")) {
    std::vector<std::size_t> b;
    for (const auto& ix : blk) {
      std::size_t i = ix.get<std::size_t>();
      if (i == 0 || i > n) throw ConfigError("partition indices are 1-based block positions");
      b.push_back(i - 1);
    }
    blocks.push_back(b);
  }
  return blocks;
}

JobContext parse_linear(const json& j) {
  const json& ring_spec = j.at("ring");
  BuiltRing built = parse_construction(ring_spec.at("construction"));
  if (built.msize == 0)
    throw ConfigError("the top-level construction must provide diagonal blocks (matrix or "
                      "semidirect over matrix)");
  auto blocks = parse_blocks(ring_spec, built.msize);

  IdempotentFamily fam;
  if (!built.semidirect_layer) {
    fam = block_family(built.ring, built.msize, built.base, blocks);
  } else {
    IdempotentFamily inner = block_family(built.sd.base, built.msize, built.base, blocks);
    fam.ring = built.ring;
    for (const Vec& e : inner.idems) fam.idems.push_back(built.sd.embed_r(e));
  }

  CrossedModule cm = parse_crossed_module(ring_spec.at("crossed_module"), built.ring);
  std::ostringstream name;
  name << built.ring->name() << " / " << cm.alg.name;
  JobContext ctx;
  ctx.kind = JobContext::Kind::Linear;
  ctx.linear = LinearContext::make(built.ring, std::move(cm), std::move(fam), name.str());
  return ctx;
}

JobContext parse_chevalley(const json& j) {
  DatumPtr datum = root_datum_by_name(j.at("root_system").get<std::string>());
  BuiltRing base = parse_construction(j.at("base"));
  if (base.msize != 0) throw ConfigError("chevalley base must be a scalar (cyclic) ring");
  CrossedModule scalar = parse_crossed_module(j.at("crossed_module"), base.ring);
  std::vector<std::pair<int, int>> orientation;
  if (j.contains("orientation"))
    for (const auto& e : j["orientation"]) {
      int a = e.at(0).get<int>(), b = e.at(1).get<int>();
      orientation.emplace_back(a - 1, b - 1);  // 1-based nodes in configs
    }
  JobContext ctx;
  ctx.kind = JobContext::Kind::Chevalley;
  ctx.chev = ChevContext::make(datum, std::move(scalar), std::move(orientation));
  return ctx;
}

}  // namespace

u64 JobContext::fingerprint() const {
  return kind == Kind::Linear ? linear->fingerprint() : chev->fingerprint();
}

const std::string& JobContext::name() const {
  return kind == Kind::Linear ? linear->name() : chev->name();
}

JobContext parse_context_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  try {
    const json& ctx = j.contains("context") ? j["context"] : j;
    std::string kind = ctx.value("kind", "linear");
    if (kind == "linear") return parse_linear(ctx);
    if (kind == "chevalley") return parse_chevalley(ctx);
    throw ConfigError("unknown context kind: " + kind);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config structure error: ") + e.what());
  }
}

JobContext parse_context_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_context_json(ss.str());
}

}  // namespace relst
