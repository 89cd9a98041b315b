#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "lpmhd/error.hpp"
#include "lpmhd/io_config.hpp"

namespace lpmhd {

namespace {

constexpr char kMagic[8] = {'L', 'P', 'M', 'H', 'D', '0', '0', '1'};
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 + 4;

template <typename T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t& offset) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, in.data() + offset, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes, bytes + sizeof(T));
  offset += sizeof(T);
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

}  // namespace

void write_field(const std::filesystem::path& path, const Field& field) {
  if (field.empty()) throw InvalidArgument("write_field: empty field");
  const auto& grid = field.grid();
  std::string out(kMagic, sizeof kMagic);
  out.reserve(kHeaderBytes + field.samples().size() * 8);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.points_per_axis()));
  put<double>(out, grid.box_length());
  put<std::uint32_t>(out, static_cast<std::uint32_t>(field.components()));
  for (double v : field.samples()) put<double>(out, v);
  write_text_file(path, out);
}

Field read_field(const std::filesystem::path& path, const std::optional<FrequencyGrid>& expected) {
  const std::string in = read_text_file(path);
  const std::string where = "field file " + path.string() + ": ";
  if (in.size() < sizeof kMagic || std::memcmp(in.data(), kMagic, sizeof kMagic) != 0) {
    throw FormatError(where + "bad magic (expected LPMHD001)");
  }
  if (in.size() < kHeaderBytes) throw FormatError(where + "truncated header");
  std::size_t offset = sizeof kMagic;
  const auto d = get<std::uint32_t>(in, offset);
  const auto n = get<std::uint32_t>(in, offset);
  const auto L = get<double>(in, offset);
  const auto c = get<std::uint32_t>(in, offset);
  FrequencyGrid grid;
  try {
    grid = make_grid(static_cast<int>(d), static_cast<int>(n), L);
  } catch (const InvalidArgument& e) {
    throw FormatError(where + "invalid grid header (" + e.what() + ")");
  }
  if (c < 1 || c > 16) throw FormatError(where + "invalid component count " + std::to_string(c));
  if (expected && !(*expected == grid)) {
    throw InvalidArgument(where + "grid (d=" + std::to_string(d) + ", N=" + std::to_string(n) +
                          ") does not match the expected grid (d=" +
                          std::to_string(expected->dim()) +
                          ", N=" + std::to_string(expected->points_per_axis()) + ")");
  }
  Field field(grid, static_cast<int>(c));
  const std::size_t payload = field.samples().size() * sizeof(double);
  if (in.size() < kHeaderBytes + payload) {
    throw FormatError(where + "truncated: expected " + std::to_string(kHeaderBytes + payload) +
                      " bytes, found " + std::to_string(in.size()));
  }
  if (in.size() > kHeaderBytes + payload) throw FormatError(where + "trailing bytes after samples");
  for (double& v : field.samples()) v = get<double>(in, offset);
  return field;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string() + " for reading");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace lpmhd
