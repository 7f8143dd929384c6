#include "cli.hpp"
#include "rfad/feature_io.hpp"
#include "rfad/signal_io.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

using namespace rfad;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome rfad_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t line_count(const std::string &text) { return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')); }

} // namespace

TEST(Grid, RangesAndLists) {
  EXPECT_EQ(cli::parse_int_grid("10:200:10").size(), 20u);
  EXPECT_EQ(cli::parse_int_grid("5,10"), (std::vector<int>{5, 10}));
  EXPECT_EQ(cli::parse_double_grid("6:30:2").size(), 13u);
  EXPECT_EQ(cli::parse_double_grid("6:30:2").back(), 30.0);
  EXPECT_THROW(cli::parse_int_grid("1:2"), Error);
  EXPECT_THROW(cli::parse_int_grid("a,b"), Error);
  EXPECT_THROW(cli::parse_int_grid("10:1:1"), Error);
}

TEST(Synth, DefaultCorpusShape) {
  const auto dir = test::fresh_dir("synth-default");
  const auto r = rfad_cli({"synth", "--out", dir.string(), "--seed", "3", "--jobs", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_manifest(dir / "train" / "manifest.csv").size(), 800u);
  EXPECT_EQ(read_manifest(dir / "eval" / "manifest.csv").size(), 2200u);
  fs::remove_all(dir);
}

TEST(Synth, SameSeedSameManifests) {
  const auto a = test::fresh_dir("synth-a"), b = test::fresh_dir("synth-b");
  for (const auto &d : {a, b})
    ASSERT_EQ(rfad_cli({"synth", "--out", d.string(), "--seed", "5", "--signals-per-device", "6"}).code, 0);
  for (const char *split : {"train", "eval"}) {
    EXPECT_EQ(test::slurp(a / split / "manifest.csv"), test::slurp(b / split / "manifest.csv"));
    for (const auto &e : read_manifest(a / split / "manifest.csv"))
      EXPECT_EQ(test::slurp(a / split / e.path), test::slurp(b / split / e.path));
  }
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST(Synth, UnwritableDirectoryFails) {
  const auto dir = test::fresh_dir("synth-blocked");
  std::ofstream(dir / "blocker") << "not a directory";
  const auto r = rfad_cli({"synth", "--out", (dir / "blocker" / "corpus").string(), "--signals-per-device", "3"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("rfad: error"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "blocker" / "corpus" / "train" / "manifest.csv"));
  fs::remove_all(dir);
}

class Pipeline : public ::testing::Test {
protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(test::fresh_dir("pipeline"));
    ASSERT_EQ(rfad_cli({"synth", "--out", dir_->string(), "--seed", "11", "--signals-per-device", "90", "--jobs", "4"})
                  .code,
              0);
  }
  static void TearDownTestSuite() {
    fs::remove_all(*dir_);
    delete dir_;
  }
  static fs::path path(const std::string &name) { return *dir_ / name; }
  static Outcome extract(const std::string &split, const std::string &out) {
    return rfad_cli({"extract", "--manifest", (path(split) / "manifest.csv").string(), "--out", path(out).string(),
                     "--jobs", "4"});
  }
  static fs::path *dir_;
};
fs::path *Pipeline::dir_ = nullptr;

TEST_F(Pipeline, ExtractConservesRowsAndIsRepeatable) {
  const auto r = extract("eval", "eval1.csv");
  ASSERT_EQ(r.code, 0) << r.err;
  const auto table = read_feature_table(path("eval1.csv"));
  EXPECT_EQ(table.size(), read_manifest(path("eval") / "manifest.csv").size());
  EXPECT_NE(r.err.find("0 warnings"), std::string::npos) << r.err;
  ASSERT_EQ(extract("eval", "eval2.csv").code, 0);
  EXPECT_EQ(test::slurp(path("eval1.csv")), test::slurp(path("eval2.csv")));
}

TEST_F(Pipeline, ExtractSkipsCorruptFiles) {
  const auto dir = test::fresh_dir("corrupt");
  auto entries = read_manifest(path("train") / "manifest.csv");
  entries.resize(5);
  for (const auto &e : entries) fs::copy_file(path("train") / e.path, dir / e.path);
  std::ofstream(dir / entries[2].path, std::ios::binary | std::ios::trunc) << "RFSG garbage";
  write_file_atomic(dir / "manifest.csv", format_manifest(entries));
  const auto r = rfad_cli({"extract", "--manifest", (dir / "manifest.csv").string(), "--out", (dir / "f.csv").string()});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_feature_table(dir / "f.csv").size(), 4u);
  EXPECT_NE(r.err.find("1 warnings"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(entries[2].path), std::string::npos);
  fs::remove_all(dir);
}

TEST_F(Pipeline, ExtractMissingManifestFails) {
  const auto r = rfad_cli({"extract", "--manifest", path("nope.csv").string(), "--out", path("x.csv").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Pipeline, TrainRefusesUavRows) {
  ASSERT_EQ(extract("eval", "mixed.csv").code, 0);
  const auto r = rfad_cli({"train", "--features", path("mixed.csv").string(), "--out", path("bad.json").string(),
                           "--k", "10"});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("UAV"), std::string::npos);
  EXPECT_FALSE(fs::exists(path("bad.json")));
}

TEST_F(Pipeline, TrainScoreRoundTrip) {
  ASSERT_EQ(extract("train", "train.csv").code, 0);
  ASSERT_EQ(extract("eval", "eval.csv").code, 0);
  ASSERT_EQ(rfad_cli({"train", "--features", path("train.csv").string(), "--out", path("model.json").string(), "--k",
                      "20"})
                .code,
            0);
  const auto a = rfad_cli({"score", "--model", path("model.json").string(), "--features", path("eval.csv").string()});
  const auto b = rfad_cli({"score", "--model", path("model.json").string(), "--features", path("eval.csv").string(),
                           "--jobs", "3"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.substr(0, a.out.find('\n')), "device_id,class,snr_db,score,prediction");
  EXPECT_EQ(line_count(a.out), read_feature_table(path("eval.csv")).size() + 1);

  const auto model = model_from_json(test::slurp(path("model.json")));
  const auto train = read_feature_table(path("train.csv"));
  EXPECT_EQ(model.train(), train.values);
  EXPECT_EQ(model.k(), 20);
}

TEST_F(Pipeline, ConstantOutlierStubScoresHalfOnBalancedSet) {
  ASSERT_EQ(extract("train", "train.csv").code, 0);
  ASSERT_EQ(extract("eval", "eval.csv").code, 0);
  const auto eval = read_feature_table(path("eval.csv"));
  std::vector<std::size_t> rec, uav;
  for (std::size_t i = 0; i < eval.size(); ++i) (eval.labels[i] == SignalClass::UAV ? uav : rec).push_back(i);
  uav.resize(rec.size());
  rec.insert(rec.end(), uav.begin(), uav.end());
  write_file_atomic(path("balanced.csv"), format_fingerprints(eval.subset(rec)));

  ASSERT_EQ(rfad_cli({"train", "--features", path("train.csv").string(), "--out", path("stub.json").string(), "--k",
                      "10", "--threshold", "-1"})
                .code,
            0);
  const auto r = rfad_cli({"eval", "--model", path("stub.json").string(), "--features", path("balanced.csv").string(),
                           "--out", path("stub-report").string(), "--no-split"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string metrics = test::slurp(path("stub-report") / "metrics.csv");
  EXPECT_NE(metrics.find("\nall,0.5,"), std::string::npos) << metrics;
  EXPECT_EQ(test::slurp(path("stub-report") / "confusion.csv"),
            "tp,fp,fn,tn\n" + std::to_string(uav.size()) + "," + std::to_string(uav.size()) + ",0,0\n");
}

TEST_F(Pipeline, SweepNeighborsFullGrid) {
  ASSERT_EQ(extract("train", "train.csv").code, 0);
  ASSERT_EQ(extract("eval", "eval.csv").code, 0);
  const auto r = rfad_cli({"sweep-n", "--train", path("train.csv").string(), "--eval", path("eval.csv").string(), "--out",
                           path("sweep").string(), "--k-grid", "10:200:10", "--jobs", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string csv = test::slurp(path("sweep") / "neighbors_sweep.csv");
  EXPECT_EQ(line_count(csv), 21u);
  EXPECT_EQ(r.out.rfind("selected_k,", 0), 0u);
  const auto again = rfad_cli({"sweep-n", "--train", path("train.csv").string(), "--eval", path("eval.csv").string(),
                               "--out", path("sweep2").string(), "--k-grid", "10:200:10"});
  ASSERT_EQ(again.code, 0);
  EXPECT_EQ(csv, test::slurp(path("sweep2") / "neighbors_sweep.csv"));
}

TEST_F(Pipeline, SweepSnrRejectsNoisyManifest) {
  ASSERT_EQ(extract("train", "train.csv").code, 0);
  const auto r = rfad_cli({"sweep-snr", "--train", path("train.csv").string(), "--manifest",
                           (path("eval") / "manifest.csv").string(), "--out", path("snr").string()});
  EXPECT_NE(r.code, 0);
  EXPECT_NE(r.err.find("clean"), std::string::npos);
}

TEST_F(Pipeline, SweepSnrOnCleanCorpus) {
  ASSERT_EQ(extract("train", "train.csv").code, 0);
  const auto clean = path("clean");
  ASSERT_EQ(rfad_cli({"synth", "--out", clean.string(), "--seed", "11", "--signals-per-device", "90", "--snr", "inf",
                      "--jobs", "4"})
                .code,
            0);
  const auto r = rfad_cli({"sweep-snr", "--train", path("train.csv").string(), "--manifest",
                           (clean / "eval" / "manifest.csv").string(), "--out", path("snr").string(), "--k-grid",
                           "20,40", "--snr-grid", "10:30:10", "--per-class", "30", "--jobs", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(line_count(test::slurp(path("snr") / "snr_sweep.csv")), 7u);
  EXPECT_TRUE(fs::exists(path("snr") / "snr_sweep.svg"));
}

TEST_F(Pipeline, RankListsVarianceColumns) {
  const auto r0 = rfad_cli({"extract", "--manifest", (path("eval") / "manifest.csv").string(), "--out",
                            path("e.csv").string(), "--stats", path("stats.csv").string(), "--jobs", "4"});
  ASSERT_EQ(r0.code, 0);
  const auto r = rfad_cli({"rank", "--stats", path("stats.csv").string(), "--top", "44"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(line_count(r.out), 45u);
  EXPECT_NE(r.out.find("a1_variance"), std::string::npos);
}

TEST(Help, ListsEveryFlag) {
  const auto r = rfad_cli({"--help-all"});
  EXPECT_EQ(r.code, 0);
  for (const char *flag : {"--out", "--seed", "--snr", "--capture-len", "--signals-per-device", "--manifest", "--stats",
                           "--window-len", "--trigger-energy", "--features", "--k", "--threshold", "--metric",
                           "--no-standardize", "--model", "--test-frac", "--no-split", "--k-grid", "--snr-grid",
                           "--per-class", "--plot", "--top", "--jobs"})
    EXPECT_NE(r.out.find(flag), std::string::npos) << flag;
  EXPECT_NE(rfad_cli({}).code, 0);
  EXPECT_NE(rfad_cli({"train", "--features"}).code, 0);
}
