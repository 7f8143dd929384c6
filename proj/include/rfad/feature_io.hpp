#pragma once

#include "rfad/features.hpp"
#include "rfad/lof.hpp"
#include "rfad/signal.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rfad {

/// Rows of per-signal features with their labels. Used for both the
/// four-variance fingerprint table and the 44-column statistics table.
struct FeatureTable {
  std::vector<std::string> device_ids;
  std::vector<SignalClass> labels;
  std::vector<std::optional<double>> snr_db;
  RowMatrix values;

  std::size_t size() const noexcept { return labels.size(); }
  /// Rows at the given indices, in that order.
  FeatureTable subset(const std::vector<std::size_t> &rows) const;
  bool contains(SignalClass cls) const;
};

inline constexpr const char *kFeatureHeader = "device_id,class,snr_db,sigma1,sigma2,sigma3,sigma4";

/// Writes with round-trip precision so reloaded features are bit-identical.
std::string format_feature_table(const FeatureTable &table, const std::vector<std::string> &value_columns);
std::string format_fingerprints(const FeatureTable &table);
std::string format_stat_table(const FeatureTable &table);

/// Parses either layout; the header decides the column names and count.
FeatureTable parse_feature_table(const std::string &text, std::vector<std::string> *value_columns = nullptr);
FeatureTable read_feature_table(const std::filesystem::path &path, std::vector<std::string> *value_columns = nullptr);

} // namespace rfad
