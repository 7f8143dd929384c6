#include "rfad/feature_io.hpp"

#include "rfad/error.hpp"
#include "rfad/signal_io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rfad {
namespace {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string &field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used == field.size()) return v;
  } catch (const std::logic_error &) {
  }
  throw Error(Errc::CorruptFile, "bad numeric field '" + field + "'");
}

} // namespace

FeatureTable FeatureTable::subset(const std::vector<std::size_t> &rows) const {
  FeatureTable out;
  out.values.resize(static_cast<Eigen::Index>(rows.size()), values.cols());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.device_ids.push_back(device_ids.at(rows[r]));
    out.labels.push_back(labels.at(rows[r]));
    out.snr_db.push_back(snr_db.at(rows[r]));
    out.values.row(static_cast<Eigen::Index>(r)) = values.row(static_cast<Eigen::Index>(rows[r]));
  }
  return out;
}

bool FeatureTable::contains(SignalClass cls) const {
  for (auto l : labels)
    if (l == cls) return true;
  return false;
}

std::string format_feature_table(const FeatureTable &table, const std::vector<std::string> &value_columns) {
  if (static_cast<Eigen::Index>(value_columns.size()) != table.values.cols())
    throw Error(Errc::ShapeError, "column names do not match the feature matrix");
  std::string out = "device_id,class,snr_db";
  for (const auto &c : value_columns) out += "," + c;
  out += "\n";
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += table.device_ids[i] + "," + to_string(table.labels[i]) + "," + format_snr(table.snr_db[i]);
    for (Eigen::Index c = 0; c < table.values.cols(); ++c)
      out += "," + format_double(table.values(static_cast<Eigen::Index>(i), c));
    out += "\n";
  }
  return out;
}

std::string format_fingerprints(const FeatureTable &table) {
  return format_feature_table(table, {"sigma1", "sigma2", "sigma3", "sigma4"});
}

std::string format_stat_table(const FeatureTable &table) { return format_feature_table(table, stat_column_names()); }

FeatureTable parse_feature_table(const std::string &text, std::vector<std::string> *value_columns) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw Error(Errc::CorruptFile, "feature table is empty");
  const auto header = split_csv_line(line);
  if (header.size() < 4 || header[0] != "device_id" || header[1] != "class" || header[2] != "snr_db")
    throw Error(Errc::CorruptFile, "feature table header must start with device_id,class,snr_db");
  const auto dims = static_cast<Eigen::Index>(header.size() - 3);
  if (value_columns) value_columns->assign(header.begin() + 3, header.end());

  FeatureTable table;
  std::vector<double> flat;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != header.size()) throw Error(Errc::CorruptFile, "feature row has wrong field count: '" + line + "'");
    table.device_ids.push_back(f[0]);
    table.labels.push_back(parse_signal_class(f[1]));
    table.snr_db.push_back(parse_snr(f[2]));
    for (std::size_t c = 3; c < f.size(); ++c) flat.push_back(parse_double(f[c]));
  }
  table.values = Eigen::Map<RowMatrix>(flat.data(), static_cast<Eigen::Index>(table.labels.size()), dims);
  return table;
}

FeatureTable read_feature_table(const std::filesystem::path &path, std::vector<std::string> *value_columns) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return parse_feature_table({std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}, value_columns);
}

} // namespace rfad
