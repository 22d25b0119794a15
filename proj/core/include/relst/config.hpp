#pragma once

#include <iosfwd>

#include "relst/chevalley.hpp"

namespace relst {

// A job context is either a linear crossed-module context or a simply laced
// scalar context. Built from the JSON spec file (see README for the schema).
struct JobContext {
  enum class Kind { Linear, Chevalley } kind = Kind::Linear;
  CtxPtr linear;
  ChevPtr chev;

  u64 fingerprint() const;
  const std::string& name() const;
};

JobContext parse_context_file(const std::string& path);
JobContext parse_context_json(const std::string& text);

struct JobConfig {
  JobContext context;
  std::string suite = "all";  // relations | elimination | chevalley | ft | all
  std::vector<RelationId> relation_filter;  // empty = every id of the suite
  std::size_t samples = 100;
  u64 seed = 1;
  std::size_t jobs = 1;
  std::string out_path;  // empty = stdout
};

}  // namespace relst
