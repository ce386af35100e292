#include "run_manifest.hpp"

#include <dln/io.hpp>

#include <chrono>
#include <ctime>

namespace dlnsolve {

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

nlohmann::json to_json(const RunManifest& m) {
    return {{"command", m.command},   {"config", m.config},           {"seed", m.seed},
            {"version", m.version},   {"started_at", m.started_at}, {"finished_at", m.finished_at},
            {"outputs", m.outputs}};
}

void write_manifest(const std::string& path, const RunManifest& m) {
    dln::io::write_text(path, to_json(m).dump(2) + "\n");
}

}  // namespace dlnsolve
