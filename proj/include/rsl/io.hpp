#pragma once

#include <string>
#include <vector>

namespace rsl {

// Rectangular numeric table with named columns.  Serialized with '.' as the
// decimal separator, 12 significant digits, LF line endings.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string format_number(double v);  // %.12g with '.' decimal separator

// Atomic writes (temp file + rename).
void write_table_csv(const std::string& path, const Table& table);
void write_table_json(const std::string& path, const Table& table);
void write_table(const std::string& path, const Table& table,
                 const std::string& format);  // "csv" or "json"

// Reproducibility record for one CLI run.  The timestamp lives here and
// only here, so data files from identical runs stay byte-identical.
struct ManifestEntry {
  std::string key;
  std::string value;
};
void write_manifest(const std::string& path, const std::string& command,
                    const std::vector<ManifestEntry>& params, std::uint64_t seed,
                    const std::vector<std::string>& outputs);

}  // namespace rsl
