// Runs the T1..T18 criteria and prints one line per criterion.
// Usage: acceptance [--check Tn]...   (no arguments: all criteria)

#include <cstring>
#include <iostream>
#include <string>
#include <vector>

#include "endograph/verify.hpp"

int main(int argc, char** argv) {
  using namespace endograph::verify;
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--check") == 0 && i + 1 < argc) {
      ids.emplace_back(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--check Tn]...\n";
      return 2;
    }
  }
  if (ids.empty()) ids = check_ids();

  Workspace ws;
  int failures = 0;
  for (const auto& id : ids) {
    const auto r = run_check(id, ws);
    std::cout << format_result(r) << std::endl;
    failures += r.status == Status::kFail;
  }
  std::cout << failures << " of " << ids.size() << " criteria failed" << std::endl;
  return failures == 0 ? 0 : 1;
}
