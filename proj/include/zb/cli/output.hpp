#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "zb/cli/config.hpp"

namespace zb::cli {

/// Shortest round-trip independent text: 17 significant digits, C locale.
std::string format_number(double v);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// Digest of a command line and its resolved configuration.
std::string config_digest(const std::string& command, const json& config);

/// Directory from ZB_OUT_DIR, else ./zb_out.
std::filesystem::path default_output_dir();

/// Column table written as CSV with '#' comment headers.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> columns);
  void add_row(const std::vector<double>& row);
  void add_comment(const std::string& line);
  std::size_t rows() const { return data_.size(); }
  const std::vector<std::string>& columns() const { return columns_; }
  /// Writes `# zb <version> digest=<digest>`, comments, the column line and rows.
  void write(const std::filesystem::path& file, const std::string& digest) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<double>> data_;
};

/// Record of one command invocation.
struct RunManifest {
  std::string command;
  json config;
  std::vector<std::string> outputs;
  double duration_s = 0.0;
  std::string digest() const { return config_digest(command, config); }
  json to_json() const;
  /// Writes manifest.json (or `name`) into `dir`; returns the path.
  std::filesystem::path write(const std::filesystem::path& dir, const std::string& name = "manifest.json") const;
};

}  // namespace zb::cli
