// Runs every acceptance criterion at exact tolerance and prints one pass/fail
// line per criterion (with the individual checks indented below it).
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "reproduce.hpp"

int main(int argc, char** argv) {
  using namespace rcpoly::reproduce;
  Session session;
  session.options.threads = std::max(1u, std::thread::hardware_concurrency());
  session.options.log = [](const std::string& line) { std::cerr << line << "\n"; };
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
  if (ids.empty()) ids = criterion_ids();

  int failed = 0;
  std::vector<CriterionResult> results;
  for (int id : ids) {
    results.push_back(run_criterion(id, session));
    std::cout << format(results.back()) << std::endl;
    failed += results.back().passed ? 0 : 1;
  }
  std::cout << "\nsummary\n";
  for (const auto& r : results) std::cout << format(r, false) << "\n";
  std::cout << (ids.size() - failed) << "/" << ids.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
