#include "zb/cli/output.hpp"

#include <charconv>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

#include "zb/version.hpp"

namespace zb::cli {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string config_digest(const std::string& command, const json& config) {
  return fnv1a_hex(std::string(kVersion) + "\n" + command + "\n" + config.dump());
}

std::filesystem::path default_output_dir() {
  if (const char* env = std::getenv("ZB_OUT_DIR"); env && *env) return env;
  return "zb_out";
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(const std::vector<double>& row) {
  if (row.size() != columns_.size()) throw std::logic_error("row width does not match the column count");
  data_.push_back(row);
}

void CsvTable::add_comment(const std::string& line) { comments_.push_back(line); }

void CsvTable::write(const std::filesystem::path& file, const std::string& digest) const {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "# zb " << kVersion << " digest=" << digest << '\n';
  for (const auto& c : comments_) out << "# " << c << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : data_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
    out << '\n';
  }
}

json RunManifest::to_json() const {
  return json{{"command", command}, {"version", kVersion}, {"digest", digest()},
              {"config", config},   {"outputs", outputs},  {"duration_s", duration_s}};
}

std::filesystem::path RunManifest::write(const std::filesystem::path& dir, const std::string& name) const {
  std::filesystem::create_directories(dir);
  const auto path = dir / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << to_json().dump(2) << '\n';
  return path;
}

}  // namespace zb::cli
