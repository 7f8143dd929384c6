#include "rfad/signal_io.hpp"

#include "rfad/error.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace rfad {
namespace {

template <typename T> void put_le(std::string &out, T value) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
  const auto bits = std::bit_cast<U>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

template <typename T> T get_le(const std::string &in, std::size_t &pos) {
  using U = std::conditional_t<sizeof(T) == 2, std::uint16_t,
                               std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>>;
  if (pos + sizeof(T) > in.size()) throw Error(Errc::CorruptFile, "truncated signal file");
  U bits = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bits |= static_cast<U>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
  pos += sizeof(T);
  return std::bit_cast<T>(bits);
}

std::string read_all(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

void write_signal_file(const std::filesystem::path &path, const Signal &signal) {
  std::string out = "RFSG";
  put_le<std::uint16_t>(out, kSignalFormatVersion);
  put_le<double>(out, signal.sample_rate());
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(signal.size()));
  for (double v : signal.samples()) put_le<float>(out, static_cast<float>(v));
  write_file_atomic(path, out);
}

SignalPayload read_signal_file(const std::filesystem::path &path) {
  const std::string data = read_all(path);
  if (data.size() < 4 || data.compare(0, 4, "RFSG") != 0)
    throw Error(Errc::CorruptFile, path.string() + ": bad magic");
  std::size_t pos = 4;
  const auto version = get_le<std::uint16_t>(data, pos);
  if (version != kSignalFormatVersion)
    throw Error(Errc::CorruptFile, path.string() + ": unsupported version " + std::to_string(version));
  SignalPayload payload;
  payload.sample_rate = get_le<double>(data, pos);
  const auto count = get_le<std::uint32_t>(data, pos);
  if (data.size() - pos != static_cast<std::size_t>(count) * 4)
    throw Error(Errc::CorruptFile, path.string() + ": sample count does not match file size");
  payload.samples.resize(count);
  for (std::uint32_t i = 0; i < count; ++i) payload.samples[i] = get_le<float>(data, pos);
  return payload;
}

std::string format_snr(const std::optional<double> &snr_db) {
  if (!snr_db) return {};
  std::ostringstream os;
  os.precision(17);
  os << *snr_db;
  return os.str();
}

std::optional<double> parse_snr(const std::string &field) {
  if (field.empty()) return std::nullopt;
  try {
    std::size_t used = 0;
    const double v = std::stod(field, &used);
    if (used != field.size()) throw std::invalid_argument(field);
    return v;
  } catch (const std::logic_error &) {
    throw Error(Errc::CorruptFile, "bad snr_db field '" + field + "'");
  }
}

std::vector<std::string> split_csv_line(const std::string &line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(std::move(current));
  return fields;
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path &manifest) {
  std::istringstream in(read_all(manifest));
  std::string line;
  if (!std::getline(in, line) || split_csv_line(line) != split_csv_line(kManifestHeader))
    throw Error(Errc::CorruptFile, manifest.string() + ": missing manifest header");
  std::vector<ManifestEntry> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw Error(Errc::CorruptFile, manifest.string() + ": malformed row '" + line + "'");
    entries.push_back({f[0], f[1], parse_signal_class(f[2]), parse_snr(f[3])});
  }
  return entries;
}

std::string format_manifest(const std::vector<ManifestEntry> &entries) {
  std::string out = std::string(kManifestHeader) + "\n";
  for (const auto &e : entries)
    out += e.path + "," + e.device_id + "," + to_string(e.cls) + "," + format_snr(e.snr_db) + "\n";
  return out;
}

Signal load_entry(const ManifestEntry &entry, const std::filesystem::path &base_dir) {
  auto payload = read_signal_file(base_dir / entry.path);
  try {
    return Signal(std::move(payload.samples), payload.sample_rate, entry.device_id, entry.cls, entry.snr_db);
  } catch (const Error &e) {
    throw Error(Errc::CorruptFile, entry.path + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path &path, const std::string &contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::IoError, "cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(Errc::IoError, "short write to " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(Errc::IoError, "cannot rename into " + path.string());
  }
}

} // namespace rfad
