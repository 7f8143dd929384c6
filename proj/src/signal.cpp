#include "rfad/signal.hpp"

#include "rfad/error.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>

namespace rfad {

const char *to_string(SignalClass c) noexcept {
  return c == SignalClass::UAV ? "UAV" : "Recognized";
}

SignalClass parse_signal_class(const std::string &text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  if (lower == "recognized") return SignalClass::Recognized;
  if (lower == "uav") return SignalClass::UAV;
  throw Error(Errc::ConfigError, "unknown signal class '" + text + "'");
}

Signal::Signal(Eigen::VectorXd samples, double sample_rate, std::string device_id, SignalClass cls,
               std::optional<double> snr_db, bool padded)
    : samples_(std::move(samples)), sample_rate_(sample_rate), device_id_(std::move(device_id)),
      cls_(cls), snr_db_(snr_db), padded_(padded) {
  if (samples_.size() == 0) throw Error(Errc::InvalidSignal, "empty sample vector");
  if (!samples_.allFinite()) throw Error(Errc::InvalidSignal, "non-finite sample");
  if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_))
    throw Error(Errc::InvalidSignal, "sample rate must be positive");
}

Signal Signal::with_samples(Eigen::VectorXd samples, std::optional<double> snr_db, bool padded) const {
  return Signal(std::move(samples), sample_rate_, device_id_, cls_, snr_db, padded);
}

void TriggerConfig::validate() const {
  if (window_len <= 0 || capture_len <= 0)
    throw Error(Errc::ConfigError, "window_len and capture_len must be positive");
  if (window_len > capture_len) throw Error(Errc::ConfigError, "window_len exceeds capture_len");
  if (!(energy_threshold >= 0.0)) throw Error(Errc::ConfigError, "energy_threshold must be >= 0");
}

double mean_power(const Signal &signal) { return signal.samples().squaredNorm() / static_cast<double>(signal.size()); }

Signal add_awgn(const Signal &signal, double target_snr_db, std::uint64_t seed) {
  if (std::isinf(target_snr_db) && target_snr_db > 0) return signal;
  if (!std::isfinite(target_snr_db)) throw Error(Errc::ConfigError, "target SNR must be finite or +inf");
  const double power = mean_power(signal);
  if (power <= 0.0) throw Error(Errc::ZeroPowerSignal, "cannot set an SNR for an all-zero signal");

  const double sigma = std::sqrt(power / std::pow(10.0, target_snr_db / 10.0));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, sigma);
  Eigen::VectorXd out = signal.samples();
  for (auto &v : out) v += noise(rng);
  return signal.with_samples(std::move(out), target_snr_db);
}

std::optional<Eigen::Index> find_trigger(const Eigen::VectorXd &samples, const TriggerConfig &cfg) {
  const Eigen::Index w = cfg.window_len;
  if (samples.size() < w) return std::nullopt;
  const double needed = cfg.energy_threshold * static_cast<double>(w);
  // Running sum drifts over long records, so re-anchor it periodically.
  double sum = samples.head(w).squaredNorm();
  for (Eigen::Index i = 0;; ++i) {
    if (i % 1024 == 0) sum = samples.segment(i, w).squaredNorm();
    // Confirm near-threshold windows exactly so the returned window never
    // falls short of the threshold because of accumulated rounding.
    if (sum >= needed * (1.0 - 1e-9) && samples.segment(i, w).squaredNorm() >= needed) return i;
    if (i + w >= samples.size()) return std::nullopt;
    sum += samples[i + w] * samples[i + w] - samples[i] * samples[i];
  }
}

Signal extract_transient(const Signal &signal, const TriggerConfig &cfg) {
  cfg.validate();
  if (signal.size() < cfg.capture_len)
    throw Error(Errc::InputTooShort, "signal has " + std::to_string(signal.size()) +
                                         " samples, capture needs " + std::to_string(cfg.capture_len));
  const auto start = find_trigger(signal.samples(), cfg);
  if (!start) throw Error(Errc::NoTrigger, "no window reached the energy threshold");

  const Eigen::Index available = std::min(cfg.capture_len, signal.size() - *start);
  Eigen::VectorXd slice = Eigen::VectorXd::Zero(cfg.capture_len);
  slice.head(available) = signal.samples().segment(*start, available);
  return signal.with_samples(std::move(slice), signal.snr_db(), available < cfg.capture_len);
}

} // namespace rfad
