#include "rfad/synth.hpp"

#include "rfad/error.hpp"
#include "rfad/parallel.hpp"
#include "rfad/seed.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace rfad {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kHopChannels = 8;
constexpr int kFskSymbolLen = 8;
constexpr int kWifiTones = 12;
constexpr int kWifiSymbolLen = 80;
constexpr Eigen::Index kLeadMin = 256;
constexpr Eigen::Index kTail = 256;

double onset_envelope(Eigen::Index n, int rise) {
  if (n >= rise) return 1.0;
  return 0.5 * (1.0 - std::cos(std::numbers::pi * static_cast<double>(n) / rise));
}

// Phase-continuous FSK on a hopping carrier.
void fill_hopped_fsk(Eigen::Ref<Eigen::VectorXd> out, const DeviceProfile &p, double amplitude,
                     std::mt19937_64 &device_rng, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<double> channels(kHopChannels);
  for (auto &c : channels) c = 0.4 * p.bandwidth_frac * unit(device_rng);

  std::uniform_real_distribution<double> phase_dist(0.0, kTwoPi);
  std::uniform_int_distribution<int> channel_dist(0, kHopChannels - 1);
  std::bernoulli_distribution bit(0.5);
  const double deviation = p.modulation_index * p.bandwidth_frac / 8.0;
  const int hop = p.hop_period.value_or(0);
  const int hop_offset = hop > 0 ? std::uniform_int_distribution<int>(0, hop - 1)(rng) : 0;

  double phase = phase_dist(rng);
  double channel = hop > 0 ? channels[channel_dist(rng)] : 0.0;
  double symbol = 1.0;
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    if (hop > 0 && (n + hop_offset) % hop == 0) channel = channels[channel_dist(rng)];
    if (n % kFskSymbolLen == 0) symbol = bit(rng) ? 1.0 : -1.0;
    phase += kTwoPi * (p.carrier_frac + channel + deviation * symbol);
    out[n] = amplitude * onset_envelope(n, p.envelope_rise) * std::cos(phase);
  }
}

// Multi-tone burst with per-symbol phase keying on every tone.
void fill_multitone(Eigen::Ref<Eigen::VectorXd> out, const DeviceProfile &p, double amplitude,
                    std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> phase_dist(0.0, kTwoPi);
  std::uniform_int_distribution<int> quadrant(0, 3);
  std::vector<double> freq(kWifiTones), phase(kWifiTones);
  for (int t = 0; t < kWifiTones; ++t) {
    freq[t] = p.carrier_frac + p.bandwidth_frac * ((t + 0.5) / kWifiTones - 0.5);
    phase[t] = phase_dist(rng);
  }
  const double tone_amp = amplitude / std::sqrt(static_cast<double>(kWifiTones));
  std::vector<double> keyed(kWifiTones, 0.0);
  for (Eigen::Index n = 0; n < out.size(); ++n) {
    if (n % kWifiSymbolLen == 0)
      for (auto &k : keyed) k = p.modulation_index * (std::numbers::pi / 2.0) * quadrant(rng);
    double v = 0.0;
    for (int t = 0; t < kWifiTones; ++t) v += std::cos(kTwoPi * freq[t] * static_cast<double>(n) + phase[t] + keyed[t]);
    out[n] = tone_amp * onset_envelope(n, p.envelope_rise) * v;
  }
}

} // namespace

void DeviceProfile::validate() const {
  if (!(carrier_frac > 0.0 && carrier_frac < 0.5) || !(bandwidth_frac > 0.0 && bandwidth_frac < 0.5))
    throw Error(Errc::ConfigError, device_id + ": carrier and bandwidth must lie in (0, 0.5)");
  if (!(carrier_frac + bandwidth_frac / 2.0 < 0.5) || !(carrier_frac - bandwidth_frac / 2.0 > 0.0))
    throw Error(Errc::ConfigError, device_id + ": occupied band leaves (0, 0.5)");
  if (hop_period && *hop_period <= 0) throw Error(Errc::ConfigError, device_id + ": hop period must be positive");
  if (envelope_rise < 1) throw Error(Errc::ConfigError, device_id + ": envelope rise must be >= 1");
  if (!(modulation_index > 0.0) || !(amplitude > 0.0))
    throw Error(Errc::ConfigError, device_id + ": modulation index and amplitude must be positive");
  if (device_id.empty() || device_id.find_first_of(",\n") != std::string::npos)
    throw Error(Errc::ConfigError, "device id must be non-empty and contain no comma or newline");
}

void CorpusConfig::validate() const {
  if (signals_per_device <= 0) throw Error(Errc::ConfigError, "signals_per_device must be positive");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw Error(Errc::ConfigError, "train_fraction must be in (0, 1)");
  if (capture_len < 4) throw Error(Errc::ConfigError, "capture_len must be at least 4");
  if (!(sample_rate > 0.0)) throw Error(Errc::ConfigError, "sample_rate must be positive");
  if (snr_db && !std::isfinite(*snr_db)) throw Error(Errc::ConfigError, "snr_db must be finite");
  int recognized = 0, uav = 0;
  for (const auto &p : profiles) {
    p.validate();
    (p.cls() == SignalClass::UAV ? uav : recognized) += 1;
  }
  if (recognized < 2 || uav < 1)
    throw Error(Errc::ConfigError, "corpus needs >= 2 recognized and >= 1 UAV profiles");
  const auto train = static_cast<int>(std::lround(train_fraction * signals_per_device));
  if (train < 1 || train >= signals_per_device)
    throw Error(Errc::ConfigError, "train/eval split leaves an empty side");
}

std::vector<DeviceProfile> default_profiles() {
  using K = DeviceKind;
  // id, kind, carrier, bandwidth, hop, rise, modulation index, amplitude, seed
  // Recognized emitters share the low end of the band; controllers spread
  // across the rest of it.
  return {
      {"bt-1", K::BluetoothLike, 0.05, 0.02, 512, 256, 1.0, 4.0, 101},
      {"bt-2", K::BluetoothLike, 0.08, 0.02, 512, 320, 1.0, 4.6, 102},
      {"wifi-1", K::WifiLike, 0.07, 0.06, std::nullopt, 192, 1.0, 5.2, 201},
      {"wifi-2", K::WifiLike, 0.10, 0.06, std::nullopt, 224, 1.0, 4.4, 202},
      {"uav-1", K::UavControllerLike, 0.17, 0.03, 256, 48, 1.5, 5.2, 301},
      {"uav-2", K::UavControllerLike, 0.22, 0.03, 192, 32, 1.5, 3.6, 302},
      {"uav-3", K::UavControllerLike, 0.28, 0.04, 320, 40, 1.5, 6.0, 303},
      {"uav-4", K::UavControllerLike, 0.34, 0.03, 256, 24, 1.5, 4.0, 304},
      {"uav-5", K::UavControllerLike, 0.40, 0.04, 128, 56, 1.5, 5.0, 305},
      {"uav-6", K::UavControllerLike, 0.46, 0.04, 384, 32, 1.5, 6.4, 306},
  };
}

CorpusConfig default_corpus_config(std::uint64_t master_seed) {
  CorpusConfig cfg;
  cfg.profiles = default_profiles();
  cfg.master_seed = master_seed;
  return cfg;
}

Signal gen_clean_burst(const DeviceProfile &profile, int index, const CorpusConfig &cfg) {
  profile.validate();
  std::mt19937_64 device_rng(derive_seed(cfg.master_seed, profile.device_seed));
  std::mt19937_64 rng(derive_seed(cfg.master_seed, profile.device_seed, static_cast<std::uint64_t>(index)));

  const Eigen::Index lead = kLeadMin + std::uniform_int_distribution<Eigen::Index>(0, kLeadMin - 1)(rng);
  const double amplitude = profile.amplitude * std::uniform_real_distribution<double>(0.9, 1.1)(rng);

  Eigen::VectorXd samples = Eigen::VectorXd::Zero(lead + cfg.capture_len + kTail);
  auto burst = samples.tail(cfg.capture_len + kTail);
  if (profile.kind == DeviceKind::WifiLike)
    fill_multitone(burst, profile, amplitude, rng);
  else
    fill_hopped_fsk(burst, profile, amplitude, device_rng, rng);
  return Signal(std::move(samples), cfg.sample_rate, profile.device_id, profile.cls(), std::nullopt);
}

Signal gen_burst(const DeviceProfile &profile, int index, const CorpusConfig &cfg) {
  Signal clean = gen_clean_burst(profile, index, cfg);
  if (!cfg.snr_db) return clean;
  return add_awgn(clean, *cfg.snr_db,
                  derive_seed(derive_seed(cfg.master_seed, "noise"), profile.device_seed,
                              static_cast<std::uint64_t>(index)));
}

bool assigned_to_train(const DeviceProfile &profile, int index, const CorpusConfig &cfg) {
  const auto n_train = std::lround(cfg.train_fraction * cfg.signals_per_device);
  return profile.cls() == SignalClass::Recognized && index < n_train;
}

Corpus build_corpus(const CorpusConfig &cfg, unsigned jobs) {
  cfg.validate();
  const auto per_device = static_cast<std::size_t>(cfg.signals_per_device);
  const std::size_t total = per_device * cfg.profiles.size();
  std::vector<std::optional<Signal>> generated(total);
  parallel_for(total, jobs, [&](std::size_t i) {
    generated[i] = gen_burst(cfg.profiles[i / per_device], static_cast<int>(i % per_device), cfg);
  });

  Corpus corpus;
  for (std::size_t i = 0; i < total; ++i) {
    const bool to_train = assigned_to_train(cfg.profiles[i / per_device], static_cast<int>(i % per_device), cfg);
    (to_train ? corpus.train : corpus.eval).push_back(std::move(*generated[i]));
  }
  return corpus;
}

SplitIndices split_indices(const std::vector<SignalClass> &labels, double test_frac, std::uint64_t seed) {
  if (!(test_frac > 0.0 && test_frac < 1.0)) throw Error(Errc::ConfigError, "test_frac must be in (0, 1)");
  if (labels.empty()) throw Error(Errc::EmptyEval, "nothing to split");
  std::mt19937_64 rng(seed);
  std::vector<bool> in_test(labels.size(), false);
  for (auto cls : {SignalClass::Recognized, SignalClass::UAV}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    std::shuffle(members.begin(), members.end(), rng);
    const auto take = static_cast<std::size_t>(std::lround(test_frac * static_cast<double>(members.size())));
    for (std::size_t j = 0; j < take; ++j) in_test[members[j]] = true;
  }
  SplitIndices out;
  for (std::size_t i = 0; i < labels.size(); ++i) (in_test[i] ? out.test : out.validation).push_back(i);
  return out;
}

EvalSplit split_eval(const std::vector<Signal> &eval, double test_frac, std::uint64_t seed) {
  std::vector<SignalClass> labels;
  labels.reserve(eval.size());
  for (const auto &s : eval) labels.push_back(s.cls());
  const auto idx = split_indices(labels, test_frac, seed);
  EvalSplit out;
  for (auto i : idx.test) out.test.push_back(eval[i]);
  for (auto i : idx.validation) out.validation.push_back(eval[i]);
  return out;
}

std::vector<std::size_t> balanced_indices(const std::vector<SignalClass> &labels, std::size_t per_class,
                                          std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> picked;
  for (auto cls : {SignalClass::Recognized, SignalClass::UAV}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == cls) members.push_back(i);
    if (members.size() < per_class)
      throw Error(Errc::EmptyEval, std::string("not enough ") + to_string(cls) + " signals for a balanced set");
    std::shuffle(members.begin(), members.end(), rng);
    picked.insert(picked.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(per_class));
  }
  std::sort(picked.begin(), picked.end());
  return picked;
}

} // namespace rfad
