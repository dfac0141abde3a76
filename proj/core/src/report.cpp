#include "tvc/report.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>

namespace tvc {

namespace {
const char* kB64 =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";

int b64_value(char c) {
  if (c >= 'A' && c <= 'Z') return c - 'A';
  if (c >= 'a' && c <= 'z') return c - 'a' + 26;
  if (c >= '0' && c <= '9') return c - '0' + 52;
  if (c == '+') return 62;
  if (c == '/') return 63;
  return -1;
}
}  // namespace

std::string base64_encode_doubles(const std::vector<double>& v) {
  std::vector<unsigned char> bytes(v.size() * 8);
  for (size_t i = 0; i < v.size(); ++i)
    std::memcpy(&bytes[i * 8], &v[i], 8);  // host is little-endian
  std::string out;
  out.reserve((bytes.size() + 2) / 3 * 4);
  for (size_t i = 0; i < bytes.size(); i += 3) {
    unsigned int b0 = bytes[i];
    unsigned int b1 = i + 1 < bytes.size() ? bytes[i + 1] : 0;
    unsigned int b2 = i + 2 < bytes.size() ? bytes[i + 2] : 0;
    unsigned int n = (b0 << 16) | (b1 << 8) | b2;
    out.push_back(kB64[(n >> 18) & 63]);
    out.push_back(kB64[(n >> 12) & 63]);
    out.push_back(i + 1 < bytes.size() ? kB64[(n >> 6) & 63] : '=');
    out.push_back(i + 2 < bytes.size() ? kB64[n & 63] : '=');
  }
  return out;
}

std::vector<double> base64_decode_doubles(const std::string& s) {
  std::vector<unsigned char> bytes;
  bytes.reserve(s.size() / 4 * 3);
  int acc = 0, nbits = 0;
  for (char c : s) {
    if (c == '=' || c == '\n' || c == '\r') continue;
    int v = b64_value(c);
    require(v >= 0, "base64: invalid character");
    acc = (acc << 6) | v;
    nbits += 6;
    if (nbits >= 8) {
      nbits -= 8;
      bytes.push_back(static_cast<unsigned char>((acc >> nbits) & 0xff));
    }
  }
  require(bytes.size() % 8 == 0, "base64: payload is not f64-aligned");
  std::vector<double> out(bytes.size() / 8);
  for (size_t i = 0; i < out.size(); ++i)
    std::memcpy(&out[i], &bytes[i * 8], 8);
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 < header.size()) ? "," : "\n";
  }
  for (const auto& row : rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      out += format_double(row[i]);
      out += (i + 1 < row.size()) ? "," : "\n";
    }
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  require(bool(f), "cannot open for writing: " + path);
  f << content;
  require(bool(f), "write failed: " + path);
}

}  // namespace tvc
