#include "omni/manifest.hpp"

#include <filesystem>

#include <json.hpp>

#include "omni/errors.hpp"
#include "omni/image_io.hpp"
#include "omni/sha256.hpp"

namespace omni {

void RunManifest::add_output(const std::string& path) {
  Output out;
  out.path = path;
  out.sha256 = sha256_file(path);
  out.bytes = static_cast<std::uint64_t>(std::filesystem::file_size(path));
  outputs.push_back(std::move(out));
}

void RunManifest::write(const std::string& path) const {
  nlohmann::json j;
  j["command"] = command;
  j["config_path"] = config_path;
  j["parameters"] = parameters;
  j["outputs"] = nlohmann::json::array();
  for (const auto& out : outputs) {
    j["outputs"].push_back({{"path", out.path}, {"sha256", out.sha256}, {"bytes", out.bytes}});
  }
  j["timings_ms"] = timings_ms;
  write_text_file(path, j.dump(2) + "\n");
}

RunManifest RunManifest::load(const std::string& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("manifest: ") + e.what());
  }
  RunManifest m;
  m.command = j.value("command", "");
  m.config_path = j.value("config_path", "");
  if (j.contains("parameters"))
    m.parameters = j["parameters"].get<std::map<std::string, std::string>>();
  for (const auto& out : j.value("outputs", nlohmann::json::array())) {
    Output o;
    o.path = out.at("path").get<std::string>();
    o.sha256 = out.at("sha256").get<std::string>();
    o.bytes = out.value("bytes", std::uint64_t{0});
    m.outputs.push_back(std::move(o));
  }
  if (j.contains("timings_ms"))
    m.timings_ms = j["timings_ms"].get<std::map<std::string, double>>();
  return m;
}

std::vector<std::string> RunManifest::verify() const {
  std::vector<std::string> bad;
  for (const auto& out : outputs) {
    if (!std::filesystem::exists(out.path)) {
      bad.push_back(out.path + " (missing)");
      continue;
    }
    if (sha256_file(out.path) != out.sha256) bad.push_back(out.path + " (hash mismatch)");
  }
  return bad;
}

}  // namespace omni
