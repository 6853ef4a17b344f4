#pragma once

// Plot-ready CSV files and the run manifest.

#include "pagecurve/analysis.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace pagecurve {

inline constexpr std::string_view kCurveHeader = "N,z,S,S_thermal,I,nbar,nbar_frac";
inline constexpr std::string_view kCompareHeader = "N,tv_oneshot,tv_refined";
inline constexpr std::string_view kProbsHeader = "k,P_k";

/// 17 significant digits, so parsing returns the identical double.
std::string format_number(double value);
/// Inverse of format_number. Throws std::invalid_argument on malformed text.
double parse_number(std::string_view text);

struct CompareRow {
  int N = 0;
  double tv_oneshot = 0.0;
  double tv_refined = 0.0;
};

std::string curve_csv(const CurveSeries& series);
std::string compare_csv(const std::vector<CompareRow>& rows);
std::string probs_csv(const ProbabilityVector& p);

/// Parses a curve.csv body (header required).
CurveSeries parse_curve_csv(std::string_view text);

/// "probs_N0042.csv"
std::string probs_filename(int N);

/// Writes `content` to `path`, throwing std::runtime_error on failure.
void write_text_file(const std::filesystem::path& path, std::string_view content);
std::string read_text_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

struct ArtifactRecord {
  std::string file;
  std::string sha256;
  std::size_t bytes = 0;
};

/// Writes a file and records its checksum.
ArtifactRecord write_artifact(const std::filesystem::path& dir, const std::string& name, std::string_view content);

}  // namespace pagecurve
