#include "bomp/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "bomp/errors.hpp"

namespace bomp::io {
namespace {

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_real(const std::string& token, std::size_t line) {
  const std::string t = trim(token);
  if (t.empty()) {
    throw InvalidArgument("empty CSV field on line " + std::to_string(line));
  }
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size() || (errno == ERANGE && std::isinf(v))) {
    throw InvalidArgument("bad number '" + t + "' on line " + std::to_string(line));
  }
  return v;
}

}  // namespace

Matrix parse_csv(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string field;
    while (std::getline(fields, field, ',')) row.push_back(parse_real(field, line_no));
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw InvalidArgument("ragged CSV: line " + std::to_string(line_no) + " has " +
                            std::to_string(row.size()) + " fields, expected " +
                            std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) return Matrix(0, 0);
  Matrix m(static_cast<Eigen::Index>(rows.size()),
           static_cast<Eigen::Index>(rows.front().size()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

std::string format_csv(const Matrix& m) {
  std::string out;
  char buf[32];
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out += buf;
    }
    out += '\n';
  }
  return out;
}

Matrix read_csv(const std::filesystem::path& path) { return parse_csv(read_text(path)); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path.string());
  out << text;
}

void write_csv(const std::filesystem::path& path, const Matrix& m) {
  write_text(path, format_csv(m));
}

Vector read_vector_csv(const std::filesystem::path& path) {
  const Matrix m = read_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw InvalidArgument(path.string() + " is not a single row or column");
}

void write_vector_csv(const std::filesystem::path& path, const Vector& v) {
  write_csv(path, Matrix(v));
}

LayoutSidecar read_layout(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
    const auto rows = j.at("m").get<std::size_t>();
    const auto blocks = j.at("M").get<std::size_t>();
    const auto width = j.at("d").get<std::size_t>();
    return LayoutSidecar{rows, BlockLayout(blocks, width)};
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("bad layout sidecar " + path.string() + ": " + e.what());
  }
}

void write_layout(const std::filesystem::path& path, std::size_t rows,
                  const BlockLayout& layout) {
  const nlohmann::json j = {
      {"m", rows}, {"M", layout.num_blocks()}, {"d", layout.block_width()}};
  write_text(path, j.dump(2) + "\n");
}

BlockedMatrix read_blocked_matrix(const std::filesystem::path& matrix_csv,
                                  const std::filesystem::path& layout_json) {
  const LayoutSidecar sidecar = read_layout(layout_json);
  Matrix entries = read_csv(matrix_csv);
  if (static_cast<std::size_t>(entries.rows()) != sidecar.rows) {
    throw InvalidArgument(matrix_csv.string() + " has " +
                          std::to_string(entries.rows()) + " rows, sidecar says m = " +
                          std::to_string(sidecar.rows));
  }
  return BlockedMatrix(sidecar.layout, std::move(entries));
}

}  // namespace bomp::io
