#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tvc/common.hpp"

namespace tvc {

/// Base64 of little-endian f64 data (symbol/report serialization).
std::string base64_encode_doubles(const std::vector<double>& v);
std::vector<double> base64_decode_doubles(const std::string& s);

/// One CSV table: header + rows, written with %.17g formatting.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
};

void write_text_file(const std::string& path, const std::string& content);

std::string format_double(double v);

}  // namespace tvc
