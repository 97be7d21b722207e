#include <iostream>

#include "corpus_runner.hpp"

// Runs every corpus command twice on one thread and once on four, and checks exit
// codes, byte-identical output and JSON round trips.
int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: cli_determinism <khc> <corpus dir>\n";
    return 1;
  }
  const std::string binary = argv[1], dir = argv[2];
  int failures = 0;
  for (const auto& c : khc::testing::load_corpus(dir)) {
    const auto a = khc::testing::run_khc(binary, c.args, 1);
    const auto b = khc::testing::run_khc(binary, c.args, 1);
    const auto p = khc::testing::run_khc(binary, c.args, 4);
    std::string problem;
    if (a.exit_code != c.expected_exit) problem = "exit " + std::to_string(a.exit_code) + ", expected " + std::to_string(c.expected_exit);
    else if (a.output != b.output || a.exit_code != b.exit_code) problem = "output differs between runs";
    else if (a.output != p.output || a.exit_code != p.exit_code) problem = "output differs with 4 threads";
    else if (a.exit_code == 0 && !khc::testing::round_trips(a.output)) problem = "output does not round-trip as JSON";
    std::cout << (problem.empty() ? "ok    " : "FAIL  ") << c.args << (problem.empty() ? "" : "  (" + problem + ")") << "\n";
    failures += problem.empty() ? 0 : 1;
  }
  std::cout << failures << " failure(s)\n";
  return failures == 0 ? 0 : 1;
}
