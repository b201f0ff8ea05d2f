#include "rsl/io.hpp"

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace rsl {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  // The C locale is never changed by this library, so '.' is already the
  // decimal separator; normalize defensively anyway.
  for (char& c : buf) {
    if (c == '\0') break;
    if (c == ',') c = '.';
  }
  return buf;
}

namespace {

void atomic_write(const std::string& path, const std::string& body) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open for writing: " + tmp);
    out << body;
    if (!out) throw std::runtime_error("short write: " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

void validate(const Table& table) {
  for (const auto& row : table.rows)
    if (row.size() != table.columns.size())
      throw std::invalid_argument("table row width does not match column count");
}

}  // namespace

void write_table_csv(const std::string& path, const Table& table) {
  validate(table);
  std::string body;
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) body += ',';
    body += table.columns[c];
  }
  body += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) body += ',';
      body += format_number(row[c]);
    }
    body += '\n';
  }
  atomic_write(path, body);
}

void write_table_json(const std::string& path, const Table& table) {
  validate(table);
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json obj;
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    rows.push_back(obj);
  }
  atomic_write(path, rows.dump(2) + "\n");
}

void write_table(const std::string& path, const Table& table,
                 const std::string& format) {
  if (format == "csv")
    write_table_csv(path, table);
  else if (format == "json")
    write_table_json(path, table);
  else
    throw std::invalid_argument("unknown output format '" + format +
                                "' (expected csv or json)");
}

void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<ManifestEntry>& params, std::uint64_t seed,
                    const std::vector<std::string>& outputs) {
  nlohmann::json m;
  m["command"] = command;
  nlohmann::json p;
  for (const ManifestEntry& e : params) p[e.key] = e.value;
  m["params"] = p;
  m["seed"] = seed;
  nlohmann::json versions;
#ifdef RSL_VERSION
  versions["rsl"] = RSL_VERSION;
#else
  versions["rsl"] = "dev";
#endif
  m["versions"] = versions;
  m["outputs"] = outputs;
  auto now = std::chrono::system_clock::now().time_since_epoch();
  m["timestamp_unix_ms"] =
      std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  atomic_write(path, m.dump(2) + "\n");
}

}  // namespace rsl
