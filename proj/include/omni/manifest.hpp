#ifndef OMNI_MANIFEST_HPP
#define OMNI_MANIFEST_HPP

#include <map>
#include <string>
#include <vector>

namespace omni {

// Record of one command run: parameter echo, produced files with content
// hashes, and wall-clock timings. Written next to the outputs as
// manifest.json; verify() re-hashes the files.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::map<std::string, std::string> parameters;
  struct Output {
    std::string path;
    std::string sha256;
    std::uint64_t bytes = 0;
  };
  std::vector<Output> outputs;
  std::map<std::string, double> timings_ms;

  void add_output(const std::string& path);  // hashes the file now
  void write(const std::string& path) const;
  static RunManifest load(const std::string& path);

  // Re-hashes every listed output; returns the paths that mismatch or are
  // missing (empty = verified).
  std::vector<std::string> verify() const;
};

}  // namespace omni

#endif
