#include "pagecurve/artifacts.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

namespace pagecurve {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace

std::string format_number(double value) {
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
  if (result.ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buf.data(), result.ptr);
}

double parse_number(std::string_view text) {
  double value = 0.0;
  const auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{} || result.ptr != text.data() + text.size()) {
    throw std::invalid_argument("parse_number: malformed number '" + std::string(text) + "'");
  }
  return value;
}

std::string curve_csv(const CurveSeries& series) {
  std::string out(kCurveHeader);
  out += '\n';
  for (const auto& r : series.rows) {
    out += std::to_string(r.N);
    for (double v : {r.z, r.S, r.S_thermal, r.I, r.nbar, r.nbar_frac}) {
      out += ',';
      out += format_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string compare_csv(const std::vector<CompareRow>& rows) {
  std::string out(kCompareHeader);
  out += '\n';
  for (const auto& r : rows) {
    out += std::to_string(r.N) + ',' + format_number(r.tv_oneshot) + ',' + format_number(r.tv_refined) + '\n';
  }
  return out;
}

std::string probs_csv(const ProbabilityVector& p) {
  std::string out(kProbsHeader);
  out += '\n';
  for (std::size_t k = 0; k < p.size(); ++k) out += std::to_string(k) + ',' + format_number(p[k]) + '\n';
  return out;
}

CurveSeries parse_curve_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCurveHeader) {
    throw std::invalid_argument("parse_curve_csv: missing or unexpected header");
  }
  CurveSeries series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != 7) throw std::invalid_argument("parse_curve_csv: expected 7 fields in '" + line + "'");
    CurveRow row;
    row.N = static_cast<int>(parse_number(fields[0]));
    row.z = parse_number(fields[1]);
    row.S = parse_number(fields[2]);
    row.S_thermal = parse_number(fields[3]);
    row.I = parse_number(fields[4]);
    row.nbar = parse_number(fields[5]);
    row.nbar_frac = parse_number(fields[6]);
    series.rows.push_back(row);
  }
  return series;
}

std::string probs_filename(int N) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "probs_N%04d.csv", N);
  return buf.data();
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

ArtifactRecord write_artifact(const std::filesystem::path& dir, const std::string& name, std::string_view content) {
  write_text_file(dir / name, content);
  return {name, sha256_hex(content), content.size()};
}

}  // namespace pagecurve
