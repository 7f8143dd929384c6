#pragma once

#include "rfad/feature_io.hpp"
#include "rfad/features.hpp"
#include "rfad/parallel.hpp"
#include "rfad/synth.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace rfad::test {

/// Fingerprint table for in-memory signals; every signal must trigger.
inline FeatureTable fingerprint_table(const std::vector<Signal> &signals, const TriggerConfig &trigger,
                                      unsigned jobs = 1) {
  FeatureTable t;
  t.values.resize(static_cast<Eigen::Index>(signals.size()), 4);
  parallel_for(signals.size(), jobs, [&](std::size_t i) {
    t.values.row(static_cast<Eigen::Index>(i)) = fingerprint(signals[i], trigger).transpose();
  });
  for (const auto &s : signals) {
    t.device_ids.push_back(s.device_id());
    t.labels.push_back(s.cls());
    t.snr_db.push_back(s.snr_db());
  }
  return t;
}

inline std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path fresh_dir(const std::string &name) {
  const auto dir = std::filesystem::temp_directory_path() / ("rfad-test-" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace rfad::test
