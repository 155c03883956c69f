#pragma once

#include "admd/types.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

namespace admd {

/// Binary layout: "ADMD", u32 version, u64 rows, u64 cols, then rows*cols
/// IEEE-754 doubles in row-major order. Every field is little endian.
inline constexpr std::uint32_t kMatrixFormatVersion = 1;
inline constexpr std::uint64_t kMatrixHeaderBytes = 24;

void write_matrix(std::ostream& out, const Eigen::Ref<const Matrix>& x);
Matrix read_matrix(std::istream& in);

/// Writes to a temporary sibling and renames it over `path`.
void write_matrix_file(const std::filesystem::path& path, const Eigen::Ref<const Matrix>& x);
Matrix read_matrix_file(const std::filesystem::path& path);

/// Atomic text write (temp file + rename).
void write_text_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace admd
