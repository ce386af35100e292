#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace dlnsolve {

// Provenance record written next to command outputs.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::string version;
    std::string started_at;
    std::string finished_at;
    std::vector<std::string> outputs;
};

std::string utc_timestamp();

nlohmann::json to_json(const RunManifest& m);

void write_manifest(const std::string& path, const RunManifest& m);

}  // namespace dlnsolve
