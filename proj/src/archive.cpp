#include "avgent/archive.hpp"
#include "avgent/errors.hpp"
#include "avgent/version.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <mutex>

namespace avgent::archive {

namespace {
std::mutex& append_mutex() {
    static std::mutex m;
    return m;
}

nlohmann::json parse_field(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("archive ") + what + " is not valid JSON: " + e.what());
    }
}
} // namespace

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void append(const std::string& path, const std::string& config_json, const std::string& result_json,
            const std::string& extra_json) {
    nlohmann::json rec{{"schema_version", kSchemaVersion},
                       {"timestamp", utc_timestamp()},
                       {"tool_version", kVersion},
                       {"config", parse_field(config_json, "config")},
                       {"result", parse_field(result_json, "result")}};
    const auto extra = parse_field(extra_json, "extra");
    if (!extra.is_object()) throw InvalidArgument("archive extra fields must be a JSON object");
    for (const auto& [k, v] : extra.items()) rec[k] = v;
    const std::string line = rec.dump() + "\n";

    std::lock_guard lock(append_mutex());
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw IoError("cannot open archive '" + path + "' for appending");
    out << line;
    out.flush();
    if (!out) throw IoError("failed writing archive '" + path + "'");
}

} // namespace avgent::archive
