#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace khc::testing {

struct CorpusCommand {
  int expected_exit = 0;
  std::string args;
};

struct CommandRun {
  int exit_code = -1;
  std::string output;  // stdout followed by stderr
};

inline std::vector<CorpusCommand> load_corpus(const std::string& dir) {
  std::ifstream in(dir + "/corpus.txt");
  std::vector<CorpusCommand> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    CorpusCommand c;
    ss >> c.expected_exit;
    std::getline(ss >> std::ws, c.args);
    for (std::size_t pos; (pos = c.args.find("@DIR@")) != std::string::npos;) c.args.replace(pos, 5, dir);
    out.push_back(std::move(c));
  }
  return out;
}

inline CommandRun run_khc(const std::string& binary, const std::string& args, int threads) {
  const std::string cmd = "HC_CENSUS_THREADS=" + std::to_string(threads) + " " + binary + " " + args + " 2>&1";
  CommandRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

/// Successful outputs must parse and re-serialize to the same bytes.
inline bool round_trips(const std::string& output) {
  try {
    const auto j = nlohmann::ordered_json::parse(output);
    return j.dump(2) + "\n" == output;
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace khc::testing
