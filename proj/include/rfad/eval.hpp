#pragma once

#include "rfad/feature_io.hpp"
#include "rfad/lof.hpp"
#include "rfad/signal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rfad {

/// Binary confusion counts with UAV / Outlier as the positive class.
struct ConfusionMatrix {
  std::size_t tp = 0, tn = 0, fp = 0, fn = 0;

  std::size_t total() const noexcept { return tp + tn + fp + fn; }
};

struct Metrics {
  double accuracy = 0, precision = 0, recall = 0, f1 = 0;
  /// Set when any ratio had a zero denominator and was reported as 0.
  bool degenerate = false;
};

ConfusionMatrix confusion(const std::vector<SignalClass> &truth, const std::vector<Prediction> &pred);
Metrics metrics(const ConfusionMatrix &cm);

/// Fraction of predictions that match the truth labels.
double accuracy(const std::vector<SignalClass> &truth, const std::vector<Prediction> &pred);

std::vector<Prediction> classify_rows(const LofModel &model, const RowMatrix &rows, unsigned jobs = 1);

struct SweepRow {
  std::optional<double> snr_db;
  int k = 0;
  std::optional<double> validation_accuracy;
  double test_accuracy = 0;
};

struct SweepTable {
  std::vector<SweepRow> rows;
};

/// Fits one model per k (sorted ascending) and reports validation and test
/// accuracy. `base` supplies every parameter except k.
SweepTable sweep_neighbors(const RowMatrix &train, const FeatureTable &validation, const FeatureTable &test,
                           std::vector<int> k_grid, const LofParams &base, unsigned jobs = 1);

/// k with the best validation accuracy; ties go to the smaller k.
int select_k(const SweepTable &table);

struct SnrSweepConfig {
  LofParams base;
  TriggerConfig trigger;
  std::uint64_t noise_seed = 0;
  unsigned jobs = 1;
};

/// Seed used to re-noise the i-th clean signal at `snr_db`. Independent of
/// k so every neighbour count sees the same noisy signals.
std::uint64_t renoise_seed(std::uint64_t noise_seed, double snr_db, std::size_t index);

/// For each SNR, re-noises the clean evaluation signals, fingerprints them
/// and scores them against models fitted once on `train`. Rows are ordered
/// by SNR then k.
SweepTable sweep_snr(const RowMatrix &train, const std::vector<Signal> &clean_eval, std::vector<int> k_grid,
                     std::vector<double> snr_grid, const SnrSweepConfig &cfg);

std::string format_neighbors_csv(const SweepTable &table);
std::string format_snr_csv(const SweepTable &table);
std::string format_confusion_csv(const ConfusionMatrix &cm);
/// One row per named split: split,accuracy,precision,recall,f1,degenerate
std::string format_metrics_csv(const std::vector<std::pair<std::string, Metrics>> &rows);

/// Self-contained SVG line chart of accuracy against SNR, one line per k.
std::string snr_plot_svg(const SweepTable &table);

} // namespace rfad
