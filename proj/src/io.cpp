#include "topoalign/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "topoalign/errors.hpp"

namespace topoalign {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (const char ch : line) {
    if (ch == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (ch != '\r') {
      cell += ch;
    }
  }
  cells.push_back(cell);
  return cells;
}

double parse_double_cell(const std::string& cell, std::size_t line_no, std::size_t column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{}) throw parse_error("expected a number, got \"" + cell + "\"", line_no, column);
  for (const char* p = ptr; p != end; ++p)
    if (*p != ' ' && *p != '\t')
      throw parse_error("trailing characters after number in \"" + cell + "\"", line_no, column);
  return value;
}

long long parse_int_cell(const std::string& cell, std::size_t line_no, std::size_t column) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc{} || ptr != cell.data() + cell.size())
    throw parse_error("expected an integer, got \"" + cell + "\"", line_no, column);
  return value;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_input("cannot open for writing: " + path);
  return out;
}

void put_u32_le(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int i = 0; i < 4; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(bytes, 4);
}

std::uint32_t get_u32_le(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw parse_error("truncated header", 1, 1);
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[i]) << (8 * i);
  return v;
}

point_cloud read_point_cloud_topa(std::istream& in) {
  char magic[4];
  in.read(magic, 4);
  const std::uint32_t version = get_u32_le(in);
  if (version != 1)
    throw parse_error("unsupported binary version " + std::to_string(version), 1, 5);
  const std::uint32_t rows = get_u32_le(in);
  const std::uint32_t cols = get_u32_le(in);
  if (rows == 0 || cols == 0) throw parse_error("binary header declares an empty cloud", 1, 9);

  point_cloud cloud;
  cloud.num_points = rows;
  cloud.dimension = cols;
  cloud.coords.resize(static_cast<std::size_t>(rows) * cols);
  for (std::size_t k = 0; k < cloud.coords.size(); ++k) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    if (!in) throw parse_error("truncated payload at value " + std::to_string(k), 1, 17 + 8 * k);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
    cloud.coords[k] = std::bit_cast<double>(bits);
  }
  return cloud;
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

point_cloud read_point_cloud_csv(std::istream& in) {
  point_cloud cloud;
  std::string line;
  std::size_t line_no = 0;
  bool has_labels = false;
  bool saw_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      // Only trailing blank lines are tolerated.
      std::string rest;
      while (std::getline(in, rest)) {
        ++line_no;
        if (!rest.empty() && rest != "\r")
          throw parse_error("blank line inside the data block", line_no - 1, 1);
      }
      break;
    }
    const std::vector<std::string> cells = split_csv_line(line);
    if (line_no == 1 && !cells.empty() && cells[0] == "label") {
      has_labels = true;
      saw_header = true;
      continue;
    }

    const std::size_t offset = has_labels ? 1 : 0;
    if (cells.size() <= offset) throw parse_error("row has no coordinates", line_no, 1);
    const std::size_t width = cells.size() - offset;
    if (cloud.num_points == 0) {
      cloud.dimension = width;
    } else if (width != cloud.dimension) {
      throw parse_error("row width " + std::to_string(width) + " differs from first row width " +
                            std::to_string(cloud.dimension),
                        line_no, 1);
    }
    if (has_labels) cloud.labels.push_back(cells[0]);
    for (std::size_t c = 0; c < width; ++c)
      cloud.coords.push_back(parse_double_cell(cells[offset + c], line_no, offset + c + 1));
    ++cloud.num_points;
  }

  if (cloud.num_points == 0)
    throw parse_error(saw_header ? "no data rows after header" : "empty file", line_no + 1, 1);
  return cloud;
}

point_cloud read_point_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw invalid_input("cannot open for reading: " + path);
  char magic[4] = {0, 0, 0, 0};
  in.read(magic, 4);
  in.clear();
  in.seekg(0);
  if (in.gcount() == 4 && magic[0] == 'T' && magic[1] == 'O' && magic[2] == 'P' && magic[3] == 'A')
    return read_point_cloud_topa(in);
  return read_point_cloud_csv(in);
}

void write_point_cloud_csv(const std::string& path, const point_cloud& cloud) {
  cloud.validate();
  std::ofstream out = open_for_write(path);
  const bool labeled = !cloud.labels.empty();
  if (labeled) {
    out << "label";
    for (std::size_t c = 0; c < cloud.dimension; ++c) out << ",x" << c;
    out << "\n";
  }
  for (std::size_t i = 0; i < cloud.num_points; ++i) {
    if (labeled) out << cloud.labels[i] << ",";
    for (std::size_t c = 0; c < cloud.dimension; ++c) {
      if (c) out << ",";
      out << format_double(cloud.coords[i * cloud.dimension + c]);
    }
    out << "\n";
  }
}

void write_point_cloud_topa(const std::string& path, const point_cloud& cloud) {
  cloud.validate();
  std::ofstream out = open_for_write(path);
  out.write("TOPA", 4);
  put_u32_le(out, 1);
  put_u32_le(out, static_cast<std::uint32_t>(cloud.num_points));
  put_u32_le(out, static_cast<std::uint32_t>(cloud.dimension));
  for (const double value : cloud.coords) {
    const std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
    char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(bytes, 8);
  }
}

persistence_diagram read_diagram_csv(const std::string& path, int dimension_filter) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot open for reading: " + path);
  std::string line;
  if (!std::getline(in, line)) throw parse_error("empty diagram file", 1, 1);
  {
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() != 3 || header[0] != "dimension" || header[1] != "birth" ||
        header[2] != "death")
      throw parse_error("expected header \"dimension,birth,death\"", 1, 1);
  }

  persistence_diagram diagram;
  bool dimension_set = false;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const std::vector<std::string> cells = split_csv_line(line);
    if (cells.size() != 3) throw parse_error("expected 3 cells", line_no, 1);
    const int dim = static_cast<int>(parse_int_cell(cells[0], line_no, 1));
    const double birth = parse_double_cell(cells[1], line_no, 2);
    const double death = parse_double_cell(cells[2], line_no, 3);
    if (dimension_filter >= 0 && dim != dimension_filter) continue;
    if (dimension_filter < 0) {
      if (dimension_set && dim != diagram.dimension)
        throw parse_error("mixed dimensions in diagram file; pass a dimension filter", line_no, 1);
      diagram.dimension = dim;
      dimension_set = true;
    } else {
      diagram.dimension = dimension_filter;
    }
    if (!(birth <= death))
      throw parse_error("birth " + cells[1] + " exceeds death " + cells[2], line_no, 2);
    diagram.points.push_back({birth, death});
    if (std::isinf(death)) diagram.includes_essential = true;
  }
  return diagram;
}

void write_diagram_csv(const std::string& path, const persistence_diagram& diagram) {
  std::ofstream out = open_for_write(path);
  out << "dimension,birth,death\n";
  for (const auto& pt : diagram.points)
    out << diagram.dimension << "," << format_double(pt.birth) << "," << format_double(pt.death)
        << "\n";
}

void write_graph_csv(const std::string& path, const weighted_graph& g) {
  std::ofstream out = open_for_write(path);
  out << "u,v,w\n";
  for (const auto& e : g.edges)
    out << e.u << "," << e.v << "," << format_double(e.w) << "\n";
}

void write_sweep_csv(const std::string& path, const sweep_report& report) {
  std::ofstream out = open_for_write(path);
  out << "distribution,N,lambda,mean_components,mean_sparsity,mean_seconds\n";
  for (const auto& cell : report.cells)
    out << distribution_name(cell.distribution) << "," << cell.num_points << ","
        << format_double(cell.lambda) << "," << format_double(cell.mean_components) << ","
        << format_double(cell.mean_sparsity) << "," << format_double(cell.mean_pd_time_seconds)
        << "\n";
}

}  // namespace topoalign
