#include "report.hpp"

#include <array>
#include <sstream>
#include <cmath>

#include <fmt/format.h>
#include <openssl/evp.h>

#include <nlslab/error.hpp>

namespace nlslab::cli {

namespace {

void write_value(std::ostream& out, const Json& v, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out << "{}";
        return;
      }
      out << "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out << ",\n";
        first = false;
        out << inner << Json(key).dump() << ": ";
        write_value(out, item, indent + 1);
      }
      out << "\n" << pad << "}";
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out << "[]";
        return;
      }
      // Arrays of scalars stay on one line.
      bool flat = true;
      for (const auto& item : v) flat = flat && !item.is_structured();
      if (flat) {
        out << "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
          if (i) out << ", ";
          write_value(out, v[i], indent + 1);
        }
        out << "]";
        return;
      }
      out << "[\n";
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ",\n";
        out << inner;
        write_value(out, v[i], indent + 1);
      }
      out << "\n" << pad << "]";
      return;
    }
    case Json::value_t::number_float: {
      const double d = v.get<double>();
      out << (std::isfinite(d) ? format_double(d) : "null");
      return;
    }
    default:
      out << v.dump();
  }
}

}  // namespace

std::string format_double(double value) { return fmt::format("{:.17g}", value); }

void write_json(std::ostream& out, const Json& value) {
  write_value(out, value, 0);
  out << "\n";
}

std::string git_blob_sha1(std::string_view content) {
  const std::string header = "blob " + std::to_string(content.size()) + std::string(1, '\0');
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  const bool ok = ctx != nullptr && EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  EVP_DigestUpdate(ctx, header.data(), header.size()) == 1 &&
                  EVP_DigestUpdate(ctx, content.data(), content.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest.data(), &length) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error(ErrorKind::io, "sha1 digest failed");
  std::string hex;
  for (unsigned int i = 0; i < length; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

Json make_report(std::string_view command, const Json& config, Json result) {
  std::ostringstream canonical;
  write_json(canonical, config);
  Json report;
  report["command"] = command;
  report["config"] = config;
  report["content_hash"] = git_blob_sha1(canonical.str());
  report["result"] = std::move(result);
  return report;
}

void write_csv_row(std::ostream& out, const std::vector<double>& values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out << ',';
    out << format_double(values[i]);
  }
  out << '\n';
}

}  // namespace nlslab::cli
