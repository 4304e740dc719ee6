#include "common.hpp"

#include <cstdlib>
#include <iostream>
#include <random>

namespace affectdyn {

std::filesystem::path resolve_output_dir(const std::string& explicit_dir,
                                         const GlobalOptions& global) {
  std::filesystem::path dir = ".";
  if (!explicit_dir.empty()) {
    dir = explicit_dir;
  } else if (!global.output_dir.empty()) {
    dir = global.output_dir;
  } else if (const char* env = std::getenv(kOutputDirEnv); env && *env) {
    dir = env;
  }
  std::filesystem::create_directories(dir);
  return dir;
}

std::uint64_t resolve_seed(const GlobalOptions& global, std::optional<std::uint64_t> config_seed) {
  if (global.seed) return *global.seed;
  if (config_seed) return *config_seed;
  std::random_device rd;
  const std::uint64_t seed = (std::uint64_t{rd()} << 32) ^ rd();
  std::cerr << "affectdyn: no seed given, using generated seed " << seed << '\n';
  return seed;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace affectdyn
