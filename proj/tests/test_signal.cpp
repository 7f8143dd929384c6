#include "rfad/error.hpp"
#include "rfad/signal.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace rfad;

namespace {

Signal make(Eigen::VectorXd samples) {
  return Signal(std::move(samples), 1e6, "dev", SignalClass::Recognized, std::nullopt);
}

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

Eigen::VectorXd unit_power_tone(Eigen::Index n) {
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) s[i] = std::sqrt(2.0) * std::sin(0.0123 * static_cast<double>(i));
  return s;
}

template <typename Fn> Errc error_of(Fn &&fn) {
  try {
    fn();
  } catch (const Error &e) {
    return e.code();
  }
  ADD_FAILURE() << "no rfad::Error thrown";
  return Errc::IoError;
}

} // namespace

TEST(Signal, RejectsInvalidConstruction) {
  EXPECT_EQ(error_of([] { make(Eigen::VectorXd()); }), Errc::InvalidSignal);
  EXPECT_EQ(error_of([] { make(vec({1.0, std::numeric_limits<double>::quiet_NaN()})); }), Errc::InvalidSignal);
  EXPECT_EQ(error_of([] { Signal(vec({1.0}), 0.0, "d", SignalClass::UAV); }), Errc::InvalidSignal);
}

TEST(MeanPower, Examples) {
  EXPECT_EQ(mean_power(make(vec({0, 0, 0, 0}))), 0.0);
  EXPECT_EQ(mean_power(make(vec({1, -1, 1, -1}))), 1.0);
  EXPECT_DOUBLE_EQ(mean_power(make(vec({1, 2, 3, 4}))), 7.5);
}

TEST(AddAwgn, InfinitePassthrough) {
  const Signal s = make(vec({0.5, -1, 2}));
  const Signal out = add_awgn(s, std::numeric_limits<double>::infinity(), 9);
  EXPECT_EQ(out.samples(), s.samples());
}

TEST(AddAwgn, NoisePowerMatchesTarget) {
  const Signal s = make(unit_power_tone(100000));
  ASSERT_NEAR(mean_power(s), 1.0, 1e-3);
  const Signal out = add_awgn(s, 10.0, 42);
  const double noise = (out.samples() - s.samples()).squaredNorm() / static_cast<double>(s.size());
  EXPECT_NEAR(noise, 0.1, 0.1 * 0.05);
  EXPECT_EQ(out.snr_db(), 10.0);
  EXPECT_EQ(out.size(), s.size());
  EXPECT_EQ(out.sample_rate(), s.sample_rate());
}

TEST(AddAwgn, ZeroSignalRejected) {
  EXPECT_EQ(error_of([] { add_awgn(make(Eigen::VectorXd::Zero(64)), 30.0, 1); }), Errc::ZeroPowerSignal);
}

TEST(AddAwgn, MeasuredSnrWithinHalfDecibelAcrossTargets) {
  const Signal s = make(unit_power_tone(100000) * 3.0);
  for (double target : {-5.0, 0.0, 6.0, 12.0, 20.0, 30.0}) {
    for (std::uint64_t seed : {1u, 7u, 99u}) {
      const Signal out = add_awgn(s, target, seed);
      const double noise = (out.samples() - s.samples()).squaredNorm() / static_cast<double>(s.size());
      EXPECT_LE(std::fabs(10.0 * std::log10(mean_power(s) / noise) - target), 0.5) << target << " " << seed;
    }
  }
}

TEST(AddAwgn, DeterministicPerSeed) {
  const Signal s = make(unit_power_tone(4096));
  EXPECT_EQ(add_awgn(s, 12.0, 5).samples(), add_awgn(s, 12.0, 5).samples());
  EXPECT_NE(add_awgn(s, 12.0, 5).samples(), add_awgn(s, 12.0, 6).samples());
}

TEST(ExtractTransient, IdleNoiseDoesNotTrigger) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 0.01);
  Eigen::VectorXd x(8192);
  for (auto &v : x) v = n(rng);
  const TriggerConfig cfg{64, 0.25, 4096};
  EXPECT_EQ(error_of([&] { extract_transient(make(x), cfg); }), Errc::NoTrigger);
}

TEST(ExtractTransient, TriggersAtBurstOnset) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(20000);
  x.tail(10000).setOnes();
  const TriggerConfig cfg{64, 0.25, 4096};

  // direct scan: first window whose mean square reaches the threshold
  Eigen::Index expected = -1;
  for (Eigen::Index i = 0; i + 64 <= x.size() && expected < 0; ++i)
    if (x.segment(i, 64).squaredNorm() / 64.0 >= 0.25) expected = i;

  const auto idx = find_trigger(x, cfg);
  ASSERT_TRUE(idx.has_value());
  EXPECT_EQ(*idx, expected);
  EXPECT_GE(*idx, 10000 - 63);
  EXPECT_LE(*idx, 10000);
  const Signal cap = extract_transient(make(x), cfg);
  EXPECT_EQ(cap.size(), 4096);
  EXPECT_EQ(cap.samples(), x.segment(*idx, 4096));
  EXPECT_FALSE(cap.padded());
}

TEST(ExtractTransient, ImmediateTrigger) {
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(5000, 1.0, 2.0);
  const Signal cap = extract_transient(make(x), {64, 0.25, 4096});
  EXPECT_EQ(cap.samples(), x.head(4096));
}

TEST(ExtractTransient, PadsWhenBurstEndsEarly) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(5000);
  x.tail(1000).setConstant(2.0);
  const Signal cap = extract_transient(make(x), {64, 0.25, 4096});
  EXPECT_TRUE(cap.padded());
  EXPECT_EQ(cap.size(), 4096);
  // four samples of 2.0 fill a 64-sample window to 0.25, so the trigger is 4000 - 60
  ASSERT_EQ(find_trigger(x, {64, 0.25, 4096}), Eigen::Index{3940});
  EXPECT_EQ(cap.samples().head(1060), x.tail(1060));
  EXPECT_TRUE(cap.samples().tail(4096 - 1060).isZero());
}

TEST(ExtractTransient, InputShorterThanCapture) {
  EXPECT_EQ(error_of([] { extract_transient(make(Eigen::VectorXd::Ones(100)), {64, 0.25, 4096}); }),
            Errc::InputTooShort);
}

TEST(ExtractTransient, InvalidConfig) {
  EXPECT_EQ(error_of([] { extract_transient(make(Eigen::VectorXd::Ones(100)), {128, 0.25, 64}); }),
            Errc::ConfigError);
}

TEST(ExtractTransient, TriggerWindowMeetsThresholdAndIsIdempotent) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.05, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    Eigen::VectorXd x(6000);
    for (auto &v : x) v = 0.3 * n(rng);
    const TriggerConfig cfg{32, u(rng), 1024};
    const auto idx = find_trigger(x, cfg);
    if (!idx) continue;
    EXPECT_GE(x.segment(*idx, 32).squaredNorm() / 32.0, cfg.energy_threshold);
    if (*idx > 0) EXPECT_LT(x.segment(*idx - 1, 32).squaredNorm() / 32.0, cfg.energy_threshold);
    const Signal once = extract_transient(make(x), cfg);
    if (find_trigger(once.samples(), cfg) == Eigen::Index{0})
      EXPECT_EQ(extract_transient(once, cfg).samples(), once.samples());
  }
}

TEST(SignalClass, ParsesNames) {
  EXPECT_EQ(parse_signal_class("UAV"), SignalClass::UAV);
  EXPECT_EQ(parse_signal_class("recognized"), SignalClass::Recognized);
  EXPECT_THROW(parse_signal_class("drone"), Error);
}
