#pragma once

#include <string>

namespace avgent::archive {

inline constexpr int kSchemaVersion = 1;

/// Appends one JSON line {schema_version, timestamp, tool_version, config, result, ...extra}
/// to `path`. Appends from concurrent callers in one process never interleave.
/// Throws IoError when the file cannot be opened or written.
void append(const std::string& path, const std::string& config_json, const std::string& result_json,
            const std::string& extra_json = "{}");

/// UTC timestamp, ISO 8601 with seconds.
std::string utc_timestamp();

} // namespace avgent::archive
