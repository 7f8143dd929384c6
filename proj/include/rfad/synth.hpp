#pragma once

#include "rfad/signal.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rfad {

enum class DeviceKind { BluetoothLike, WifiLike, UavControllerLike };

/// Surrogate emitter. Frequencies are fractions of the sample rate.
struct DeviceProfile {
  std::string device_id;
  DeviceKind kind = DeviceKind::BluetoothLike;
  double carrier_frac = 0.1;
  double bandwidth_frac = 0.02;
  std::optional<int> hop_period; // samples between frequency hops
  int envelope_rise = 128;       // transient ramp length in samples
  double modulation_index = 1.0;
  double amplitude = 1.0;        // nominal steady-state peak amplitude
  std::uint64_t device_seed = 0;

  SignalClass cls() const noexcept {
    return kind == DeviceKind::UavControllerLike ? SignalClass::UAV : SignalClass::Recognized;
  }
  void validate() const;
};

struct CorpusConfig {
  std::vector<DeviceProfile> profiles;
  int signals_per_device = 300;
  /// Recognized devices send round(train_fraction * signals_per_device)
  /// signals to training, the rest to evaluation.
  double train_fraction = 2.0 / 3.0;
  std::optional<double> snr_db = 30.0; // nullopt: clean references
  Eigen::Index capture_len = 4096;
  double sample_rate = 20e9;
  std::uint64_t master_seed = 1;

  void validate() const;
};

/// Two Bluetooth-like, two WiFi-like and six UAV-controller-like profiles.
std::vector<DeviceProfile> default_profiles();
CorpusConfig default_corpus_config(std::uint64_t master_seed = 1);

/// Noise-free burst: idle lead-in, a raised-cosine onset of envelope_rise
/// samples, then the steady modulated carrier.
Signal gen_clean_burst(const DeviceProfile &profile, int index, const CorpusConfig &cfg);

/// gen_clean_burst plus AWGN at cfg.snr_db (when set). Deterministic in
/// (master_seed, device_seed, index).
Signal gen_burst(const DeviceProfile &profile, int index, const CorpusConfig &cfg);

/// Whether signal `index` of `profile` belongs to the training split.
bool assigned_to_train(const DeviceProfile &profile, int index, const CorpusConfig &cfg);

struct Corpus {
  std::vector<Signal> train; // recognized only
  std::vector<Signal> eval;
};

/// Generates every device's signals and assigns them to train/eval. UAV
/// devices go entirely to eval.
Corpus build_corpus(const CorpusConfig &cfg, unsigned jobs = 1);

struct SplitIndices {
  std::vector<std::size_t> test;
  std::vector<std::size_t> validation;
};

/// Stratified random split: per class, round(test_frac * n_class) items go
/// to test. Indices in each part keep their original order.
SplitIndices split_indices(const std::vector<SignalClass> &labels, double test_frac, std::uint64_t seed);

struct EvalSplit {
  std::vector<Signal> test;
  std::vector<Signal> validation;
};
EvalSplit split_eval(const std::vector<Signal> &eval, double test_frac, std::uint64_t seed);

/// Deterministic random subset with `per_class` items of each class.
std::vector<std::size_t> balanced_indices(const std::vector<SignalClass> &labels, std::size_t per_class,
                                          std::uint64_t seed);

} // namespace rfad
