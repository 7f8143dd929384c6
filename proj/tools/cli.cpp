#include "cli.hpp"

#include "rfad/error.hpp"
#include "rfad/eval.hpp"
#include "rfad/feature_io.hpp"
#include "rfad/features.hpp"
#include "rfad/lof.hpp"
#include "rfad/parallel.hpp"
#include "rfad/seed.hpp"
#include "rfad/signal_io.hpp"
#include "rfad/synth.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>

namespace fs = std::filesystem;

namespace rfad::cli {
namespace {

// Stage names folded into --seed; see derive_seed.
constexpr const char *kCorpusStage = "corpus";
constexpr const char *kSplitStage = "split";
constexpr const char *kBalancedStage = "balanced";
constexpr const char *kSnrNoiseStage = "snr-noise";

struct TriggerFlags {
  Eigen::Index capture_len = 4096;
  Eigen::Index window_len = 64;
  double energy = 0.25;

  TriggerConfig config() const {
    TriggerConfig t{window_len, energy, capture_len};
    t.validate();
    if (capture_len % 4 != 0) throw Error(Errc::ConfigError, "--capture-len must be a multiple of 4");
    return t;
  }
  void add_to(CLI::App &app) {
    app.add_option("--capture-len", capture_len, "Samples kept after the trigger (multiple of 4)")->capture_default_str();
    app.add_option("--window-len", window_len, "Trigger energy window in samples")->capture_default_str();
    app.add_option("--trigger-energy", energy, "Mean-square energy that starts a capture")->capture_default_str();
  }
};

struct LofFlags {
  int k = 100;
  double threshold = 1.5;
  std::string metric = "manhattan";
  bool no_standardize = false;

  LofParams params() const { return {k, parse_metric(metric), threshold, !no_standardize}; }
  void add_to(CLI::App &app, bool with_k) {
    if (with_k) app.add_option("--k", k, "Number of neighbours")->capture_default_str();
    app.add_option("--threshold", threshold, "LOF score above which a signal is an outlier")->capture_default_str();
    app.add_option("--metric", metric, "Distance metric")
        ->check(CLI::IsMember({"manhattan", "euclidean"}))
        ->capture_default_str();
    app.add_flag("--no-standardize", no_standardize, "Use raw features instead of z-scored ones");
  }
};

std::string read_text(const fs::path &path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void ensure_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw Error(Errc::IoError, "cannot create directory " + dir.string());
}

std::optional<double> parse_snr_flag(const std::string &text) {
  if (text == "inf" || text == "none" || text == "clean") return std::nullopt;
  const auto v = parse_snr(text);
  if (!v || !std::isfinite(*v)) throw Error(Errc::ConfigError, "bad --snr '" + text + "'");
  return v;
}

// ---------------------------------------------------------------- synth

struct SynthFlags {
  fs::path out;
  std::uint64_t seed = 1;
  std::string snr = "30";
  Eigen::Index capture_len = 4096;
  int signals_per_device = 300;
  unsigned jobs = 1;
};

int cmd_synth(const SynthFlags &f, std::ostream &err) {
  CorpusConfig cfg = default_corpus_config(derive_seed(f.seed, kCorpusStage));
  cfg.snr_db = parse_snr_flag(f.snr);
  cfg.capture_len = f.capture_len;
  cfg.signals_per_device = f.signals_per_device;
  cfg.validate();

  for (const char *split : {"train", "eval"}) ensure_dir(f.out / split);
  const auto per_device = static_cast<std::size_t>(cfg.signals_per_device);
  const std::size_t total = per_device * cfg.profiles.size();
  std::vector<ManifestEntry> entries(total);
  std::vector<char> train(total, 0);
  parallel_for(total, f.jobs, [&](std::size_t i) {
    const auto &profile = cfg.profiles[i / per_device];
    const int index = static_cast<int>(i % per_device);
    train[i] = assigned_to_train(profile, index, cfg);
    char name[64];
    std::snprintf(name, sizeof name, "%s_%04d.rfsg", profile.device_id.c_str(), index);
    const Signal s = gen_burst(profile, index, cfg);
    write_signal_file(f.out / (train[i] ? "train" : "eval") / name, s);
    entries[i] = {name, s.device_id(), s.cls(), s.snr_db()};
  });

  std::vector<ManifestEntry> train_rows, eval_rows;
  for (std::size_t i = 0; i < total; ++i) (train[i] ? train_rows : eval_rows).push_back(entries[i]);
  write_file_atomic(f.out / "train" / "manifest.csv", format_manifest(train_rows));
  write_file_atomic(f.out / "eval" / "manifest.csv", format_manifest(eval_rows));
  err << "synth: wrote " << train_rows.size() << " train and " << eval_rows.size() << " eval signals to "
      << f.out.string() << "\n";
  return 0;
}

// -------------------------------------------------------------- extract

struct ExtractFlags {
  fs::path manifest;
  fs::path out;
  fs::path stats;
  TriggerFlags trigger;
  unsigned jobs = 1;
};

int cmd_extract(const ExtractFlags &f, std::ostream &err) {
  const TriggerConfig trigger = f.trigger.config();
  const auto entries = read_manifest(f.manifest);
  const fs::path base = f.manifest.parent_path();

  enum class Outcome { Ok, Corrupt, NoTrigger, TooShort };
  std::vector<Outcome> outcome(entries.size(), Outcome::Ok);
  std::vector<std::string> reason(entries.size());
  RowMatrix fingerprints(static_cast<Eigen::Index>(entries.size()), 4);
  RowMatrix stats(static_cast<Eigen::Index>(entries.size()), kStatColumns);
  const bool want_stats = !f.stats.empty();

  parallel_for(entries.size(), f.jobs, [&](std::size_t i) {
    const auto row = static_cast<Eigen::Index>(i);
    try {
      const Signal capture = extract_transient(load_entry(entries[i], base), trigger);
      const PacketSet packets = wpt2(capture);
      fingerprints.row(row) = feature_vector(packets).transpose();
      if (want_stats) stats.row(row) = stat_row(packets);
    } catch (const Error &e) {
      switch (e.code()) {
      case Errc::CorruptFile: outcome[i] = Outcome::Corrupt; break;
      case Errc::NoTrigger: outcome[i] = Outcome::NoTrigger; break;
      case Errc::InputTooShort: outcome[i] = Outcome::TooShort; break;
      default: throw;
      }
      reason[i] = e.what();
    }
  });

  std::vector<std::size_t> kept;
  std::map<Outcome, std::size_t> skipped;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (outcome[i] == Outcome::Ok) {
      kept.push_back(i);
    } else {
      ++skipped[outcome[i]];
      err << "extract: skipping " << entries[i].path << ": " << reason[i] << "\n";
    }
  }

  auto table_of = [&](const RowMatrix &values) {
    FeatureTable t;
    t.values.resize(static_cast<Eigen::Index>(kept.size()), values.cols());
    for (std::size_t r = 0; r < kept.size(); ++r) {
      const auto &e = entries[kept[r]];
      t.device_ids.push_back(e.device_id);
      t.labels.push_back(e.cls);
      t.snr_db.push_back(e.snr_db);
      t.values.row(static_cast<Eigen::Index>(r)) = values.row(static_cast<Eigen::Index>(kept[r]));
    }
    return t;
  };
  write_file_atomic(f.out, format_fingerprints(table_of(fingerprints)));
  if (want_stats) write_file_atomic(f.stats, format_stat_table(table_of(stats)));

  const std::size_t warnings = entries.size() - kept.size();
  err << "extract: " << kept.size() << " feature rows, " << warnings << " warnings (corrupt "
      << skipped[Outcome::Corrupt] << ", no trigger " << skipped[Outcome::NoTrigger] << ", too short "
      << skipped[Outcome::TooShort] << ")\n";
  return 0;
}

// ---------------------------------------------------------------- train

int cmd_train(const fs::path &features, const fs::path &out, const LofFlags &lof, std::ostream &err) {
  const FeatureTable table = read_feature_table(features);
  if (table.contains(SignalClass::UAV))
    throw Error(Errc::ContractViolation, "training features contain UAV rows; the detector is fitted on "
                                         "recognized signals only");
  const LofModel model = fit_lof(table.values, lof.params());
  write_file_atomic(out, model_to_json(model));
  err << "train: fitted k=" << model.k() << " on " << table.size() << " rows -> " << out.string() << "\n";
  return 0;
}

LofModel load_model(const fs::path &path) { return model_from_json(read_text(path)); }

// ---------------------------------------------------------------- score

int cmd_score(const fs::path &model_path, const fs::path &features, const fs::path &out, unsigned jobs,
              std::ostream &stdout_stream) {
  const LofModel model = load_model(model_path);
  const FeatureTable table = read_feature_table(features);
  const Eigen::VectorXd scores = model.score_rows(table.values, jobs);
  std::string csv = "device_id,class,snr_db,score,prediction\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double s = scores[static_cast<Eigen::Index>(i)];
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", s);
    csv += table.device_ids[i] + "," + to_string(table.labels[i]) + "," + format_snr(table.snr_db[i]) + "," + buf +
           "," + to_string(s > model.threshold() ? Prediction::Outlier : Prediction::Inlier) + "\n";
  }
  if (out.empty())
    stdout_stream << csv;
  else
    write_file_atomic(out, csv);
  return 0;
}

// ----------------------------------------------------------------- eval

struct EvalFlags {
  fs::path model;
  fs::path features;
  fs::path out;
  std::uint64_t seed = 1;
  double test_frac = 0.7;
  bool no_split = false;
  unsigned jobs = 1;
};

int cmd_eval(const EvalFlags &f, std::ostream &stdout_stream, std::ostream &err) {
  const LofModel model = load_model(f.model);
  const FeatureTable table = read_feature_table(f.features);
  if (table.size() == 0) throw Error(Errc::EmptyEval, "no evaluation rows");
  ensure_dir(f.out);

  std::vector<std::pair<std::string, Metrics>> rows;
  ConfusionMatrix headline;
  auto evaluate = [&](const std::string &name, const FeatureTable &part) {
    const auto cm = confusion(part.labels, classify_rows(model, part.values, f.jobs));
    rows.emplace_back(name, metrics(cm));
    return cm;
  };
  if (f.no_split) {
    headline = evaluate("all", table);
  } else {
    const auto split = split_indices(table.labels, f.test_frac, derive_seed(f.seed, kSplitStage));
    headline = evaluate("test", table.subset(split.test));
    if (!split.validation.empty()) evaluate("validation", table.subset(split.validation));
  }
  write_file_atomic(f.out / "confusion.csv", format_confusion_csv(headline));
  write_file_atomic(f.out / "metrics.csv", format_metrics_csv(rows));
  stdout_stream << format_metrics_csv(rows);
  err << "eval: reports written to " << f.out.string() << "\n";
  return 0;
}

// -------------------------------------------------------------- sweep-n

struct SweepNFlags {
  fs::path train;
  fs::path eval;
  fs::path out;
  std::string k_grid = "10:200:10";
  std::uint64_t seed = 1;
  double test_frac = 0.7;
  LofFlags lof;
  unsigned jobs = 1;
};

int cmd_sweep_n(const SweepNFlags &f, std::ostream &stdout_stream, std::ostream &err) {
  const FeatureTable train = read_feature_table(f.train);
  if (train.contains(SignalClass::UAV)) throw Error(Errc::ContractViolation, "training features contain UAV rows");
  const FeatureTable eval = read_feature_table(f.eval);
  const auto split = split_indices(eval.labels, f.test_frac, derive_seed(f.seed, kSplitStage));
  const SweepTable table = sweep_neighbors(train.values, eval.subset(split.validation), eval.subset(split.test),
                                           parse_int_grid(f.k_grid), f.lof.params(), f.jobs);
  ensure_dir(f.out);
  write_file_atomic(f.out / "neighbors_sweep.csv", format_neighbors_csv(table));
  stdout_stream << "selected_k," << select_k(table) << "\n";
  err << "sweep-n: " << table.rows.size() << " rows -> " << (f.out / "neighbors_sweep.csv").string() << "\n";
  return 0;
}

// ------------------------------------------------------------ sweep-snr

struct SweepSnrFlags {
  fs::path train;
  fs::path manifest;
  fs::path out;
  fs::path plot;
  std::string k_grid = "100:200:20";
  std::string snr_grid = "6:30:2";
  std::size_t per_class = 200;
  std::uint64_t seed = 1;
  LofFlags lof;
  TriggerFlags trigger;
  unsigned jobs = 1;
};

int cmd_sweep_snr(const SweepSnrFlags &f, std::ostream &err) {
  const FeatureTable train = read_feature_table(f.train);
  if (train.contains(SignalClass::UAV)) throw Error(Errc::ContractViolation, "training features contain UAV rows");
  const auto entries = read_manifest(f.manifest);
  for (const auto &e : entries)
    if (e.snr_db) throw Error(Errc::ConfigError, "sweep-snr needs clean signals (synth --snr inf); " + e.path +
                                                     " has snr " + format_snr(e.snr_db));
  std::vector<SignalClass> labels;
  for (const auto &e : entries) labels.push_back(e.cls);
  std::vector<Signal> balanced;
  for (auto i : balanced_indices(labels, f.per_class, derive_seed(f.seed, kBalancedStage)))
    balanced.push_back(load_entry(entries[i], f.manifest.parent_path()));

  SnrSweepConfig cfg;
  cfg.base = f.lof.params();
  cfg.trigger = f.trigger.config();
  cfg.noise_seed = derive_seed(f.seed, kSnrNoiseStage);
  cfg.jobs = f.jobs;
  const SweepTable table =
      sweep_snr(train.values, balanced, parse_int_grid(f.k_grid), parse_double_grid(f.snr_grid), cfg);

  ensure_dir(f.out);
  write_file_atomic(f.out / "snr_sweep.csv", format_snr_csv(table));
  const fs::path plot = f.plot.empty() ? f.out / "snr_sweep.svg" : f.plot;
  write_file_atomic(plot, snr_plot_svg(table));
  err << "sweep-snr: " << table.rows.size() << " cells -> " << (f.out / "snr_sweep.csv").string() << ", "
      << plot.string() << "\n";
  return 0;
}

// ----------------------------------------------------------------- rank

int cmd_rank(const fs::path &stats_path, std::size_t top, std::ostream &stdout_stream) {
  std::vector<std::string> columns;
  const FeatureTable table = read_feature_table(stats_path, &columns);
  const auto order = rank_features(table.values);
  stdout_stream << "rank,column,index\n";
  for (std::size_t r = 0; r < std::min(top, order.size()); ++r)
    stdout_stream << r + 1 << "," << columns[static_cast<std::size_t>(order[r])] << "," << order[r] << "\n";
  return 0;
}

template <typename T> std::vector<T> parse_grid(const std::string &text) {
  auto number = [&](const std::string &s) -> T {
    try {
      std::size_t used = 0;
      T v;
      if constexpr (std::is_integral_v<T>)
        v = static_cast<T>(std::stol(s, &used));
      else
        v = std::stod(s, &used);
      if (used == s.size()) return v;
    } catch (const std::logic_error &) {
    }
    throw Error(Errc::ConfigError, "bad grid value '" + s + "' in '" + text + "'");
  };
  std::vector<T> grid;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t pos; (pos = text.find(':', start)) != std::string::npos; start = pos + 1)
      parts.push_back(text.substr(start, pos - start));
    parts.push_back(text.substr(start));
    if (parts.size() != 3) throw Error(Errc::ConfigError, "range grids are start:stop:step, got '" + text + "'");
    const T lo = number(parts[0]), hi = number(parts[1]), step = number(parts[2]);
    if (!(step > 0) || hi < lo) throw Error(Errc::ConfigError, "empty or invalid range '" + text + "'");
    const auto count = static_cast<long>(std::floor((hi - lo) / static_cast<double>(step) + 1e-9));
    for (long i = 0; i <= count; ++i) grid.push_back(static_cast<T>(lo + i * step));
  } else {
    for (const auto &field : split_csv_line(text))
      if (!field.empty()) grid.push_back(number(field));
  }
  if (grid.empty()) throw Error(Errc::ConfigError, "empty grid");
  return grid;
}

} // namespace

std::vector<int> parse_int_grid(const std::string &text) { return parse_grid<int>(text); }
std::vector<double> parse_double_grid(const std::string &text) { return parse_grid<double>(text); }

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"RF burst novelty detection: wavelet-packet fingerprints scored with a Local Outlier Factor "
               "model fitted on recognized signals only."};
  app.name("rfad");
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  SynthFlags synth;
  auto *synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic burst corpus");
  synth_cmd->add_option("--out", synth.out, "Output directory (train/ and eval/ are created)")->required();
  synth_cmd->add_option("--seed", synth.seed, "Master seed")->capture_default_str();
  synth_cmd->add_option("--snr", synth.snr, "Corpus SNR in dB, or 'inf' for clean references")->capture_default_str();
  synth_cmd->add_option("--capture-len", synth.capture_len, "Samples captured after the trigger")->capture_default_str();
  synth_cmd->add_option("--signals-per-device", synth.signals_per_device, "Signals generated per device")
      ->capture_default_str();
  synth_cmd->add_option("--jobs", synth.jobs, "Worker threads")->capture_default_str();

  ExtractFlags extract;
  auto *extract_cmd = app.add_subcommand("extract", "Trigger, decompose and fingerprint every signal in a manifest");
  extract_cmd->add_option("--manifest", extract.manifest, "Corpus manifest CSV")->required();
  extract_cmd->add_option("--out", extract.out, "Fingerprint CSV to write")->required();
  extract_cmd->add_option("--stats", extract.stats, "Also write the 44-column statistics CSV here");
  extract.trigger.add_to(*extract_cmd);
  extract_cmd->add_option("--jobs", extract.jobs, "Worker threads")->capture_default_str();

  fs::path train_features, train_out = "model.json";
  LofFlags train_lof;
  auto *train_cmd = app.add_subcommand("train", "Fit the LOF detector on recognized fingerprints");
  train_cmd->add_option("--features", train_features, "Fingerprint CSV (recognized rows only)")->required();
  train_cmd->add_option("--out", train_out, "Model JSON to write")->capture_default_str();
  train_lof.add_to(*train_cmd, true);

  fs::path score_model, score_features, score_out;
  unsigned score_jobs = 1;
  auto *score_cmd = app.add_subcommand("score", "Score fingerprints with a fitted model");
  score_cmd->add_option("--model", score_model, "Model JSON")->required();
  score_cmd->add_option("--features", score_features, "Fingerprint CSV")->required();
  score_cmd->add_option("--out", score_out, "Scores CSV (standard output when omitted)");
  score_cmd->add_option("--jobs", score_jobs, "Worker threads")->capture_default_str();

  EvalFlags eval;
  auto *eval_cmd = app.add_subcommand("eval", "Confusion matrix and metrics on the test/validation split");
  eval_cmd->add_option("--model", eval.model, "Model JSON")->required();
  eval_cmd->add_option("--features", eval.features, "Evaluation fingerprint CSV")->required();
  eval_cmd->add_option("--out", eval.out, "Report directory")->required();
  eval_cmd->add_option("--seed", eval.seed, "Master seed (split)")->capture_default_str();
  eval_cmd->add_option("--test-frac", eval.test_frac, "Fraction of each class sent to the test split")
      ->capture_default_str();
  eval_cmd->add_flag("--no-split", eval.no_split, "Evaluate every row as one set");
  eval_cmd->add_option("--jobs", eval.jobs, "Worker threads")->capture_default_str();

  SweepNFlags sweep_n;
  auto *sweep_n_cmd = app.add_subcommand("sweep-n", "Validation/test accuracy across neighbour counts");
  sweep_n_cmd->add_option("--train", sweep_n.train, "Training fingerprint CSV")->required();
  sweep_n_cmd->add_option("--eval", sweep_n.eval, "Evaluation fingerprint CSV")->required();
  sweep_n_cmd->add_option("--out", sweep_n.out, "Report directory")->required();
  sweep_n_cmd->add_option("--k-grid", sweep_n.k_grid, "Neighbour counts (start:stop:step or a,b,c)")
      ->capture_default_str();
  sweep_n_cmd->add_option("--seed", sweep_n.seed, "Master seed (split)")->capture_default_str();
  sweep_n_cmd->add_option("--test-frac", sweep_n.test_frac, "Test fraction of the evaluation set")
      ->capture_default_str();
  sweep_n.lof.add_to(*sweep_n_cmd, false);
  sweep_n_cmd->add_option("--jobs", sweep_n.jobs, "Worker threads")->capture_default_str();

  SweepSnrFlags sweep_snr_flags;
  auto *sweep_snr_cmd = app.add_subcommand("sweep-snr", "Accuracy across SNR and neighbour counts on a balanced set");
  sweep_snr_cmd->add_option("--train", sweep_snr_flags.train, "Training fingerprint CSV")->required();
  sweep_snr_cmd->add_option("--manifest", sweep_snr_flags.manifest, "Manifest of clean evaluation signals")
      ->required();
  sweep_snr_cmd->add_option("--out", sweep_snr_flags.out, "Report directory")->required();
  sweep_snr_cmd->add_option("--plot", sweep_snr_flags.plot, "SVG path (default <out>/snr_sweep.svg)");
  sweep_snr_cmd->add_option("--k-grid", sweep_snr_flags.k_grid, "Neighbour counts")->capture_default_str();
  sweep_snr_cmd->add_option("--snr-grid", sweep_snr_flags.snr_grid, "SNR values in dB")->capture_default_str();
  sweep_snr_cmd->add_option("--per-class", sweep_snr_flags.per_class, "Signals per class in the balanced set")
      ->capture_default_str();
  sweep_snr_cmd->add_option("--seed", sweep_snr_flags.seed, "Master seed (subset, noise)")->capture_default_str();
  sweep_snr_flags.lof.add_to(*sweep_snr_cmd, false);
  sweep_snr_flags.trigger.add_to(*sweep_snr_cmd);
  sweep_snr_cmd->add_option("--jobs", sweep_snr_flags.jobs, "Worker threads")->capture_default_str();

  fs::path rank_stats;
  std::size_t rank_top = 8;
  auto *rank_cmd = app.add_subcommand("rank", "Rank the 44 packet statistics by across-signal variance");
  rank_cmd->add_option("--stats", rank_stats, "Statistics CSV from extract --stats")->required();
  rank_cmd->add_option("--top", rank_top, "Rows to print")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError &e) {
    return app.exit(e, out, err);
  }

  try {
    if (*synth_cmd) return cmd_synth(synth, err);
    if (*extract_cmd) return cmd_extract(extract, err);
    if (*train_cmd) return cmd_train(train_features, train_out, train_lof, err);
    if (*score_cmd) return cmd_score(score_model, score_features, score_out, score_jobs, out);
    if (*eval_cmd) return cmd_eval(eval, out, err);
    if (*sweep_n_cmd) return cmd_sweep_n(sweep_n, out, err);
    if (*sweep_snr_cmd) return cmd_sweep_snr(sweep_snr_flags, err);
    if (*rank_cmd) return cmd_rank(rank_stats, rank_top, out);
  } catch (const std::exception &e) {
    err << "rfad: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

} // namespace rfad::cli
