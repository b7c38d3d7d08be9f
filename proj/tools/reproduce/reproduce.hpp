#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rcpoly/polytope.hpp"

namespace rcpoly::reproduce {

struct Options {
  unsigned threads = 1;
  /// Receives progress lines (may be empty).
  std::function<void(const std::string&)> log;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;  // one "what: got (expected)" line per check
  double seconds = 0;
};

/// State shared between criteria within one run (the full vertex set is
/// computed once by criterion 9 and reused by criterion 10).
struct Session {
  Options options;
  std::optional<VertexSet> fig1_vertices;
};

std::vector<int> criterion_ids();
std::string criterion_title(int id);

CriterionResult run_criterion(int id, Session& session);

/// "[PASS] 3 rank of the fig1 system (0.01 s)" followed by indented details.
std::string format(const CriterionResult& result, bool with_details = true);

}  // namespace rcpoly::reproduce
