#include "admd/matrix_io.hpp"

#include "admd/errors.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>
#include <vector>

namespace admd {

namespace {

constexpr std::array<char, 4> kMagic = {'A', 'D', 'M', 'D'};

template <typename U>
void put_le(std::ostream& out, U value) {
  std::array<char, sizeof(U)> bytes;
  for (std::size_t i = 0; i < sizeof(U); ++i) {
    bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFFu);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

template <typename U>
U get_le(std::istream& in, std::uint64_t& offset, const char* field) {
  std::array<unsigned char, sizeof(U)> bytes;
  in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  const auto got = static_cast<std::uint64_t>(in.gcount());
  if (got != sizeof(U)) {
    throw FormatError(std::string("truncated ") + field, offset + got);
  }
  U value = 0;
  for (std::size_t i = 0; i < sizeof(U); ++i) value |= static_cast<U>(bytes[i]) << (8 * i);
  offset += sizeof(U);
  return value;
}

std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  return tmp;
}

void commit(const std::filesystem::path& tmp, const std::filesystem::path& path) {
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move temporary file into place: " + path.string());
  }
}

}  // namespace

void write_matrix(std::ostream& out, const Eigen::Ref<const Matrix>& x) {
  out.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out, kMatrixFormatVersion);
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(x.rows()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(x.cols()));
  std::vector<char> row(static_cast<std::size_t>(x.cols()) * 8);
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.cols(); ++j) {
      const auto bits = std::bit_cast<std::uint64_t>(x(i, j));
      for (std::size_t b = 0; b < 8; ++b) {
        row[static_cast<std::size_t>(j) * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xFFu);
      }
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("failed writing matrix stream");
}

Matrix read_matrix(std::istream& in) {
  std::uint64_t offset = 0;
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (in.gcount() != static_cast<std::streamsize>(magic.size()) || magic != kMagic) {
    throw FormatError("missing ADMD magic bytes", 0);
  }
  offset = magic.size();
  const auto version = get_le<std::uint32_t>(in, offset, "format version");
  if (version != kMatrixFormatVersion) {
    throw FormatError("unsupported format version " + std::to_string(version), 4);
  }
  const auto rows = get_le<std::uint64_t>(in, offset, "row count");
  const auto cols = get_le<std::uint64_t>(in, offset, "column count");
  // Reject shapes that could not possibly fit in memory before allocating.
  constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 40;
  if (rows != 0 && cols > kMaxEntries / rows) {
    throw FormatError("implausible matrix shape", 8);
  }

  Matrix x(static_cast<Index>(rows), static_cast<Index>(cols));
  std::vector<unsigned char> row(static_cast<std::size_t>(cols) * 8);
  for (Index i = 0; i < x.rows(); ++i) {
    in.read(reinterpret_cast<char*>(row.data()), static_cast<std::streamsize>(row.size()));
    const auto got = static_cast<std::uint64_t>(in.gcount());
    if (got != row.size()) throw FormatError("truncated matrix payload", offset + got);
    for (Index j = 0; j < x.cols(); ++j) {
      std::uint64_t bits = 0;
      for (std::size_t b = 0; b < 8; ++b) {
        bits |= static_cast<std::uint64_t>(row[static_cast<std::size_t>(j) * 8 + b]) << (8 * b);
      }
      x(i, j) = std::bit_cast<double>(bits);
    }
    offset += got;
  }

  if (in.peek() != std::char_traits<char>::eof()) {
    throw FormatError("trailing bytes after matrix payload", offset);
  }
  return x;
}

void write_matrix_file(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& x) {
  const auto tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    write_matrix(out, x);
    out.flush();
    if (!out) throw IoError("failed writing: " + path.string());
  }
  commit(tmp, path);
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot file: " + path.string());
  return read_matrix(in);
}

void write_text_file(const std::filesystem::path& path, const std::string& contents) {
  const auto tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    out << contents;
    out.flush();
    if (!out) throw IoError("failed writing: " + path.string());
  }
  commit(tmp, path);
}

}  // namespace admd
