#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <string>

namespace rfad {

enum class SignalClass { Recognized, UAV };

const char *to_string(SignalClass c) noexcept;
/// Accepts "Recognized" / "UAV" (case-insensitive); throws ConfigError otherwise.
SignalClass parse_signal_class(const std::string &text);

/// A real-valued sampled RF burst. Immutable once constructed; the
/// constructor rejects empty or non-finite sample vectors and a
/// non-positive sample rate.
class Signal {
public:
  Signal(Eigen::VectorXd samples, double sample_rate, std::string device_id, SignalClass cls,
         std::optional<double> snr_db = std::nullopt, bool padded = false);

  const Eigen::VectorXd &samples() const noexcept { return samples_; }
  Eigen::Index size() const noexcept { return samples_.size(); }
  double sample_rate() const noexcept { return sample_rate_; }
  const std::string &device_id() const noexcept { return device_id_; }
  SignalClass cls() const noexcept { return cls_; }
  /// nullopt marks a clean (noise-free) reference.
  std::optional<double> snr_db() const noexcept { return snr_db_; }
  /// Set when extract_transient had to zero-pad the tail.
  bool padded() const noexcept { return padded_; }

  /// Same metadata, different samples.
  Signal with_samples(Eigen::VectorXd samples, std::optional<double> snr_db, bool padded = false) const;

private:
  Eigen::VectorXd samples_;
  double sample_rate_;
  std::string device_id_;
  SignalClass cls_;
  std::optional<double> snr_db_;
  bool padded_;
};

struct TriggerConfig {
  Eigen::Index window_len = 64;
  double energy_threshold = 0.25; // mean-square energy per window
  Eigen::Index capture_len = 4096;

  void validate() const;
};

/// (1/N) * sum of squared samples.
double mean_power(const Signal &signal);

/// Adds zero-mean Gaussian noise with variance mean_power / 10^(snr/10).
/// A target of +infinity is the no-noise sentinel and returns the input
/// unchanged.
Signal add_awgn(const Signal &signal, double target_snr_db, std::uint64_t seed);

/// Index of the first window (step 1) whose mean-square energy reaches the
/// threshold, or nullopt if none does.
std::optional<Eigen::Index> find_trigger(const Eigen::VectorXd &samples, const TriggerConfig &cfg);

/// Emulates an energy-triggered capture: returns capture_len samples
/// starting at the trigger index. Bursts that end early are zero-padded
/// and the result is flagged padded().
Signal extract_transient(const Signal &signal, const TriggerConfig &cfg);

} // namespace rfad
