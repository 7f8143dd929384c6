#pragma once

#include "rfad/signal.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rfad {

// Binary signal file layout (all little-endian):
//   "RFSG" | u16 version | f64 sample_rate | u32 count | count x f32 samples
inline constexpr std::uint16_t kSignalFormatVersion = 1;

void write_signal_file(const std::filesystem::path &path, const Signal &signal);

struct SignalPayload {
  Eigen::VectorXd samples;
  double sample_rate = 0.0;
};

/// Throws CorruptFile on bad magic, unknown version or truncated data,
/// IoError when the file cannot be opened.
SignalPayload read_signal_file(const std::filesystem::path &path);

/// One row of a corpus manifest (`path,device_id,class,snr_db`). An empty
/// snr_db field denotes a clean reference signal.
struct ManifestEntry {
  std::string path; // as written, relative to the manifest's directory
  std::string device_id;
  SignalClass cls = SignalClass::Recognized;
  std::optional<double> snr_db;
};

inline constexpr const char *kManifestHeader = "path,device_id,class,snr_db";

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &manifest);
std::string format_manifest(const std::vector<ManifestEntry> &entries);

/// Loads the signal an entry points at, resolving its path against `base_dir`.
Signal load_entry(const ManifestEntry &entry, const std::filesystem::path &base_dir);

/// Formats an optional SNR as a CSV field ("" for clean).
std::string format_snr(const std::optional<double> &snr_db);
std::optional<double> parse_snr(const std::string &field);

/// Splits one CSV line on commas. No quoting: the formats written here
/// never contain embedded commas.
std::vector<std::string> split_csv_line(const std::string &line);

/// Writes `contents` to a temporary sibling and renames it into place, so a
/// failed write never leaves a partial file behind.
void write_file_atomic(const std::filesystem::path &path, const std::string &contents);

} // namespace rfad
