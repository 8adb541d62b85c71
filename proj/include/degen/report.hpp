#pragma once

// CSV and JSON output. Floats are serialized with the shortest decimal
// representation that round-trips, so identical runs produce byte-identical
// files. Nothing time- or host-dependent is ever written here.

#include <array>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "degen/errors.hpp"

namespace degen {

/// Shortest round-trip decimal text for a double.
inline std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) throw Error("double formatting failed");
  return std::string(buf, ptr);
}

/// One CSV table: fixed header, rows of doubles in fixed column order.
struct CsvTable {
  std::string header;
  std::vector<std::vector<double>> rows;
};

inline void write_csv(const std::filesystem::path& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << table.header << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << format_double(row[i]);
    }
    out << '\n';
  }
  if (!out) throw Error("write failed for " + path.string());
}

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

inline constexpr const char* kSpinorHeader =
    "t,x,y,z,re0,im0,re1,im1,re2,im2,re3,im3,abs";
inline constexpr const char* kFieldsHeader =
    "t,x,y,z,a0,a1,a2,a3,Ex,Ey,Ez,Bx,By,Bz";
inline constexpr const char* kSpinHeader = "t,x,y,z,Sx,Sy,Sz";

}  // namespace degen
