// Runs the acceptance criteria and prints one line per criterion.
// Usage: acceptance [fast|full] [threads]
#include <cstdlib>
#include <iostream>
#include <string>

#include "hatvol/acceptance.hpp"

int main(int argc, char** argv) {
  using namespace hatvol::acceptance;
  Options opts;
  if (argc > 1 && std::string(argv[1]) == "full") opts.suite = Suite::full;
  if (argc > 2) opts.threads = std::atoi(argv[2]);
  bool all = true;
  for (const auto& r : run_suite(opts)) {
    std::cout << format_line(r) << std::endl;
    all &= r.pass;
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
