#include "rfad/eval.hpp"

#include "rfad/error.hpp"
#include "rfad/features.hpp"
#include "rfad/parallel.hpp"
#include "rfad/seed.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace rfad {
namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

double ratio(std::size_t num, std::size_t den, bool &degenerate) {
  if (den == 0) {
    degenerate = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

void check_k_grid(std::vector<int> &k_grid) {
  if (k_grid.empty()) throw Error(Errc::ConfigError, "k grid is empty");
  std::sort(k_grid.begin(), k_grid.end());
  k_grid.erase(std::unique(k_grid.begin(), k_grid.end()), k_grid.end());
}

} // namespace

ConfusionMatrix confusion(const std::vector<SignalClass> &truth, const std::vector<Prediction> &pred) {
  if (truth.size() != pred.size())
    throw Error(Errc::LengthMismatch, std::to_string(truth.size()) + " labels vs " + std::to_string(pred.size()) +
                                          " predictions");
  if (truth.empty()) throw Error(Errc::Empty, "no predictions to tally");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const bool positive = truth[i] == SignalClass::UAV;
    const bool flagged = pred[i] == Prediction::Outlier;
    if (positive) {
      (flagged ? cm.tp : cm.fn) += 1;
    } else {
      (flagged ? cm.fp : cm.tn) += 1;
    }
  }
  return cm;
}

Metrics metrics(const ConfusionMatrix &cm) {
  if (cm.total() == 0) throw Error(Errc::EmptyMatrix, "confusion matrix is empty");
  Metrics m;
  m.accuracy = ratio(cm.tp + cm.tn, cm.total(), m.degenerate);
  m.precision = ratio(cm.tp, cm.tp + cm.fp, m.degenerate);
  m.recall = ratio(cm.tp, cm.tp + cm.fn, m.degenerate);
  if (m.precision + m.recall > 0.0)
    m.f1 = 2.0 * (m.precision * m.recall) / (m.precision + m.recall);
  else
    m.degenerate = true;
  return m;
}

double accuracy(const std::vector<SignalClass> &truth, const std::vector<Prediction> &pred) {
  return metrics(confusion(truth, pred)).accuracy;
}

std::vector<Prediction> classify_rows(const LofModel &model, const RowMatrix &rows, unsigned jobs) {
  const Eigen::VectorXd scores = model.score_rows(rows, jobs);
  std::vector<Prediction> out;
  out.reserve(static_cast<std::size_t>(scores.size()));
  for (double s : scores) out.push_back(s > model.threshold() ? Prediction::Outlier : Prediction::Inlier);
  return out;
}

SweepTable sweep_neighbors(const RowMatrix &train, const FeatureTable &validation, const FeatureTable &test,
                           std::vector<int> k_grid, const LofParams &base, unsigned jobs) {
  check_k_grid(k_grid);
  SweepTable table;
  for (int k : k_grid) {
    LofParams params = base;
    params.k = k;
    const LofModel model = fit_lof(train, params);
    SweepRow row;
    row.k = k;
    if (validation.size() > 0) row.validation_accuracy = accuracy(validation.labels, classify_rows(model, validation.values, jobs));
    row.test_accuracy = accuracy(test.labels, classify_rows(model, test.values, jobs));
    table.rows.push_back(row);
  }
  return table;
}

int select_k(const SweepTable &table) {
  const SweepRow *best = nullptr;
  for (const auto &row : table.rows) {
    const double acc = row.validation_accuracy.value_or(row.test_accuracy);
    if (!best || acc > best->validation_accuracy.value_or(best->test_accuracy) ||
        (acc == best->validation_accuracy.value_or(best->test_accuracy) && row.k < best->k))
      best = &row;
  }
  if (!best) throw Error(Errc::Empty, "sweep table has no rows");
  return best->k;
}

std::uint64_t renoise_seed(std::uint64_t noise_seed, double snr_db, std::size_t index) {
  return derive_seed(noise_seed, std::bit_cast<std::uint64_t>(snr_db), static_cast<std::uint64_t>(index));
}

SweepTable sweep_snr(const RowMatrix &train, const std::vector<Signal> &clean_eval, std::vector<int> k_grid,
                     std::vector<double> snr_grid, const SnrSweepConfig &cfg) {
  check_k_grid(k_grid);
  if (snr_grid.empty()) throw Error(Errc::ConfigError, "SNR grid is empty");
  if (clean_eval.empty()) throw Error(Errc::EmptyEval, "no evaluation signals");
  std::sort(snr_grid.begin(), snr_grid.end());
  snr_grid.erase(std::unique(snr_grid.begin(), snr_grid.end()), snr_grid.end());

  std::vector<LofModel> models;
  for (int k : k_grid) {
    LofParams params = cfg.base;
    params.k = k;
    models.push_back(fit_lof(train, params));
  }
  std::vector<SignalClass> truth;
  for (const auto &s : clean_eval) truth.push_back(s.cls());

  SweepTable table;
  RowMatrix features(static_cast<Eigen::Index>(clean_eval.size()), 4);
  for (double snr : snr_grid) {
    parallel_for(clean_eval.size(), cfg.jobs, [&](std::size_t i) {
      const Signal noisy = add_awgn(clean_eval[i], snr, renoise_seed(cfg.noise_seed, snr, i));
      features.row(static_cast<Eigen::Index>(i)) = fingerprint(noisy, cfg.trigger).transpose();
    });
    for (std::size_t m = 0; m < models.size(); ++m) {
      SweepRow row;
      row.snr_db = snr;
      row.k = k_grid[m];
      row.test_accuracy = accuracy(truth, classify_rows(models[m], features, cfg.jobs));
      table.rows.push_back(row);
    }
  }
  return table;
}

std::string format_neighbors_csv(const SweepTable &table) {
  std::string out = "k,val_acc,test_acc\n";
  for (const auto &r : table.rows)
    out += std::to_string(r.k) + "," + (r.validation_accuracy ? fmt(*r.validation_accuracy) : "") + "," +
           fmt(r.test_accuracy) + "\n";
  return out;
}

std::string format_snr_csv(const SweepTable &table) {
  std::string out = "snr_db,k,accuracy\n";
  for (const auto &r : table.rows)
    out += (r.snr_db ? fmt(*r.snr_db) : "") + "," + std::to_string(r.k) + "," + fmt(r.test_accuracy) + "\n";
  return out;
}

std::string format_confusion_csv(const ConfusionMatrix &cm) {
  return "tp,fp,fn,tn\n" + std::to_string(cm.tp) + "," + std::to_string(cm.fp) + "," + std::to_string(cm.fn) + "," +
         std::to_string(cm.tn) + "\n";
}

std::string format_metrics_csv(const std::vector<std::pair<std::string, Metrics>> &rows) {
  std::string out = "split,accuracy,precision,recall,f1,degenerate\n";
  for (const auto &[name, m] : rows)
    out += name + "," + fmt(m.accuracy) + "," + fmt(m.precision) + "," + fmt(m.recall) + "," + fmt(m.f1) + "," +
           (m.degenerate ? "1" : "0") + "\n";
  return out;
}

} // namespace rfad
