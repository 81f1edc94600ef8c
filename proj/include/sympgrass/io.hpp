#pragma once

// Frame files, curve export and distance-report export.
//
// Frame file: first line "rows cols", then rows of whitespace-separated
// entries in row-major order, printed with 17 significant digits so a write
// followed by a read reproduces every double exactly.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "sympgrass/lagrangian.hpp"
#include "sympgrass/metrics.hpp"

namespace sympgrass {

using Json = nlohmann::json;

inline std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string format_matrix(const Matrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out += ' ';
      out += format_double(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  long rows = -1, cols = -1;
  require(static_cast<bool>(in >> rows >> cols) && rows >= 0 && cols >= 0, ErrorCode::InvalidInput,
          "parse_matrix: missing or invalid 'rows cols' header");
  Matrix m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      std::string token;
      require(static_cast<bool>(in >> token), ErrorCode::InvalidInput, "parse_matrix: too few entries");
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      require(used == token.size() && used > 0, ErrorCode::InvalidInput, "parse_matrix: bad entry '" + token + "'");
      m(i, j) = value;
    }
  }
  std::string extra;
  require(!(in >> extra), ErrorCode::InvalidInput, "parse_matrix: trailing data");
  return m;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorCode::IOError, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorCode::IOError, "cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  require(out.good(), ErrorCode::IOError, "write to '" + path + "' failed");
}

inline void write_frame(const std::string& path, const Matrix& frame) { write_text_file(path, format_matrix(frame)); }

inline Matrix read_frame(const std::string& path) { return parse_matrix(read_text_file(path)); }

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix matrix_from_json(const Json& j) {
  require(j.is_array() && !j.empty() && j[0].is_array(), ErrorCode::InvalidInput, "matrix_from_json: expected rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const Json& row = j[static_cast<std::size_t>(r)];
    require(row.is_array() && static_cast<Eigen::Index>(row.size()) == cols, ErrorCode::InvalidInput,
            "matrix_from_json: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) {
      const Json& v = row[static_cast<std::size_t>(c)];
      require(v.is_number(), ErrorCode::InvalidInput, "matrix_from_json: non-numeric entry");
      m(r, c) = v.get<double>();
    }
  }
  return m;
}

/// [{"t": ..., "frame": [[...], ...]}, ...]
inline Json curve_to_json(const OrbitCurve& c) {
  Json out = Json::array();
  for (std::size_t i = 0; i < c.points.size(); ++i)
    out.push_back({{"t", c.times[i]}, {"frame", matrix_to_json(c.points[i].frame())}});
  return out;
}

inline OrbitCurve curve_from_json(const Json& j) {
  require(j.is_array() && !j.empty(), ErrorCode::InvalidInput, "curve_from_json: expected a non-empty array");
  std::vector<double> t;
  std::vector<LagrangianSubspace> pts;
  for (const auto& rec : j) {
    require(rec.is_object() && rec.contains("t") && rec.contains("frame") && rec["t"].is_number(),
            ErrorCode::InvalidInput, "curve_from_json: records need numeric 't' and 'frame'");
    t.push_back(rec["t"].get<double>());
    pts.push_back(LagrangianSubspace::from_frame(matrix_from_json(rec["frame"])));
  }
  return OrbitCurve(std::move(t), std::move(pts));
}

/// Flat object; unavailable path lengths are null.
inline Json distance_report_to_json(const DistanceReport& r) {
  auto length = [](const PathEstimate& p) { return p.available ? Json(p.length) : Json(nullptr); };
  auto minimum = r.minimum();
  return {
      {"chart_path", length(r.chart_path)},
      {"geodesic_path", length(r.geodesic_path)},
      {"section_path", length(r.section_path)},
      {"minimum", std::isnan(minimum) ? Json(nullptr) : Json(minimum)},
      {"chart_available", r.chart_path.available ? 1.0 : 0.0},
      {"geodesic_available", r.geodesic_path.available ? 1.0 : 0.0},
      {"section_available", r.section_path.available ? 1.0 : 0.0},
  };
}

}  // namespace sympgrass
