#pragma once

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace cli {

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

inline std::string quote(const std::string& s) {
  std::string q = "'";
  for (char c : s) {
    if (c == '\'') q += "'\\''";
    else q += c;
  }
  return q + "'";
}

/// Runs `cli args...` with the given working directory, capturing stdout and stderr.
inline Result run(const std::string& cli, const std::vector<std::string>& args,
                  const std::string& cwd = ".", const std::string& env = "") {
  static int counter = 0;
  const auto err_path = std::filesystem::temp_directory_path() /
                        ("vortexloop_cli_err_" + std::to_string(::getpid()) + "_" +
                         std::to_string(counter++));
  std::string cmd = "cd " + quote(cwd) + " && " + env + (env.empty() ? "" : " ") +
                    quote(std::filesystem::absolute(cli).string());
  for (const auto& a : args) cmd += " " + quote(a);
  cmd += " 2>" + quote(err_path.string());
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  Result r;
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err_path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.err = ss.str();
  std::filesystem::remove(err_path);
  return r;
}

struct Expectation {
  std::vector<std::string> args;
  int exit_code;
};

/// Exit-code contract over the fixture corpus; paths are relative to the fixtures directory.
inline std::vector<Expectation> contract() {
  return {
      {{"invariants", "unit_circle_sin2t.json"}, 0},
      {{"invariants", "unit_circle_sin3t.json"}, 0},
      {{"invariants", "rotated_sin2t.json"}, 0},
      {{"invariants", "scaled_sin2t.json"}, 0},
      {{"invariants", "sampled_sin2t.json"}, 0},
      {{"invariants", "clockwise_sin2t.json"}, 2},
      {{"invariants", "clockwise_sin2t.json", "--auto-orient"}, 0},
      {{"invariants", "figure_eight.json"}, 2},
      {{"invariants", "degenerate_zero.json"}, 3},
      {{"invariants", "volume_form.json"}, 3},
      {{"invariants", "wrong_schema.json"}, 2},
      {{"invariants", "missing_beta.json"}, 2},
      {{"invariants", "bad_coefficient.json"}, 2},
      {{"invariants", "malformed.json"}, 2},
      {{"invariants", "does_not_exist.json"}, 2},
      {{"equiv", "unit_circle_sin2t.json", "rotated_sin2t.json"}, 0},
      {{"equiv", "unit_circle_sin2t.json", "scaled_sin2t.json"}, 1},
      {{"equiv", "unit_circle_sin2t.json", "unit_circle_sin3t.json"}, 1},
      {{"intertwine", "model_sin2t.json", "unit_circle_sin2t.json"}, 0},
      {{"intertwine", "model_sin2t.json", "rotated_sin2t.json", "--shift", "2"}, 0},
      {{"intertwine", "model_sin3t.json", "unit_circle_sin2t.json"}, 4},
      {{"intertwine", "model_sin2t.json", "unit_circle_sin2t.json", "--shift", "1"}, 4},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian.json", "-T", "1", "--dt", "0.05"}, 0},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian_zero.json"}, 0},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian_strong.json", "-T", "1", "--dt", "0.05"}, 5},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian_fold.json", "-T", "2", "--dt", "0.01"}, 5},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian_bad.json"}, 2},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian.json", "--dt", "0"}, 2},
      {{"flow", "unit_circle_sin2t.json", "hamiltonian.json", "--scheme", "euler"}, 2},
      {{"verify", "--suite", "forms"}, 0},
      {{"verify", "--suite", "symplectic", "--inject-volume-form"}, 1},
      {{"bogus"}, 2},
  };
}

}  // namespace cli
