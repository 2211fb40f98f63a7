#include "mz/config.hpp"

#include <cstdlib>
#include <fstream>

#include "mz/common.hpp"

namespace mz {

RunConfig load_run_config(const std::string& config_path) {
  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw Error("cannot read config file " + config_path);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      std::string key = line.substr(0, eq);
      std::string val = line.substr(eq + 1);
      if (key == "tol")
        cfg.tol = std::stod(val);
      else if (key == "cache_dir")
        cfg.cache_dir = val;
      else if (key == "threads")
        cfg.threads = std::stoi(val);
      else if (key == "output")
        cfg.output = (val == "csv") ? OutputFormat::kCsv : OutputFormat::kJson;
    }
  }
  if (const char* env = std::getenv("MZ_CACHE_DIR"); env && *env)
    cfg.cache_dir = env;
  return cfg;
}

}  // namespace mz
