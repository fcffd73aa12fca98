#pragma once

#include <filesystem>
#include <string>

#include "bomp/core.hpp"

namespace bomp::io {

/// Row-major CSV of reals, no header. Values are written with 17
/// significant digits so a write/read cycle is lossless.
Matrix read_csv(const std::filesystem::path& path);
void write_csv(const std::filesystem::path& path, const Matrix& m);

/// A vector file is a single CSV column (a single row is also accepted).
Vector read_vector_csv(const std::filesystem::path& path);
void write_vector_csv(const std::filesystem::path& path, const Vector& v);

Matrix parse_csv(const std::string& text);
std::string format_csv(const Matrix& m);

/// Layout sidecar {"m": rows, "M": blocks, "d": width}.
struct LayoutSidecar {
  std::size_t rows;
  BlockLayout layout;
};

LayoutSidecar read_layout(const std::filesystem::path& path);
void write_layout(const std::filesystem::path& path, std::size_t rows,
                  const BlockLayout& layout);

/// Loads A.csv + layout.json and checks that their shapes agree.
BlockedMatrix read_blocked_matrix(const std::filesystem::path& matrix_csv,
                                  const std::filesystem::path& layout_json);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace bomp::io
