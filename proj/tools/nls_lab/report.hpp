#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include <nlslab/groundstate.hpp>

namespace nlslab::cli {

using Json = nlohmann::ordered_json;

/// Thrown for invalid configurations; maps to the usage exit code.
struct ConfigError {
  std::string field;
  std::string message;
};

/// Doubles as %.17g, non-finite values as null, two-space indent.
void write_json(std::ostream& out, const Json& value);

/// %.17g.
std::string format_double(double value);

/// SHA-1 of "blob <size>\0<content>", as git hashes a file.
std::string git_blob_sha1(std::string_view content);

/// {"command", "config", "content_hash", "result"}; the hash covers the
/// serialized config echo.
Json make_report(std::string_view command, const Json& config, Json result);

/// Comma-separated row with %.17g numbers.
void write_csv_row(std::ostream& out, const std::vector<double>& values);

}  // namespace nlslab::cli
