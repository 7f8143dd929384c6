#include "rfad/lof.hpp"

#include <nlohmann/json.hpp>

namespace rfad {
namespace {

using nlohmann::json;

template <typename Derived> json to_array(const Eigen::DenseBase<Derived> &v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v.derived().reshaped()(i));
  return a;
}

Eigen::VectorXd vector_from(const json &a) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a.at(i).get<double>();
  return v;
}

constexpr const char *kFormat = "rfad-lof-model";
constexpr int kVersion = 1;

} // namespace

std::string model_to_json(const LofModel &model) {
  json train = json::array();
  for (Eigen::Index i = 0; i < model.train().rows(); ++i) train.push_back(to_array(model.train().row(i)));
  const json doc = {
      {"format", kFormat},
      {"version", kVersion},
      {"k", model.k()},
      {"metric", to_string(model.metric())},
      {"threshold", model.threshold()},
      {"standardize", model.params().standardize},
      {"scaler", {{"mean", to_array(model.scaler().mean)}, {"scale", to_array(model.scaler().scale)}}},
      {"train", train},
      {"kdist", to_array(model.kdist())},
      {"lrd", to_array(model.lrd())},
  };
  return doc.dump(1) + "\n";
}

LofModel model_from_json(const std::string &text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format").get<std::string>() != kFormat || doc.at("version").get<int>() != kVersion)
      throw Error(Errc::CorruptFile, "not a version 1 LOF model document");
    LofParams params;
    params.k = doc.at("k").get<int>();
    params.metric = parse_metric(doc.at("metric").get<std::string>());
    params.threshold = doc.at("threshold").get<double>();
    params.standardize = doc.at("standardize").get<bool>();

    const auto &rows = doc.at("train");
    const std::size_t dims = rows.empty() ? 0 : rows.at(0).size();
    RowMatrix raw(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(dims));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != dims) throw Error(Errc::ShapeError, "ragged training matrix");
      raw.row(static_cast<Eigen::Index>(i)) = vector_from(rows[i]).transpose();
    }
    Scaler scaler{vector_from(doc.at("scaler").at("mean")).transpose(),
                  vector_from(doc.at("scaler").at("scale")).transpose()};
    return LofModel::from_state(params, std::move(scaler), std::move(raw), vector_from(doc.at("kdist")),
                                vector_from(doc.at("lrd")));
  } catch (const json::exception &e) {
    throw Error(Errc::CorruptFile, std::string("model document: ") + e.what());
  }
}

} // namespace rfad
