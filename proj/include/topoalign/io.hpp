#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "topoalign/bench.hpp"
#include "topoalign/filtration.hpp"
#include "topoalign/geometry.hpp"

namespace topoalign {

// 17 significant digits, enough for lossless round-trips.
std::string format_double(double value);

// Embeddings. Two formats, auto-detected on read:
//  - CSV: one row per point; when the first header cell is exactly "label"
//    each row starts with a label column, the remaining cells are floats.
//  - binary: magic "TOPA", then u32 LE version(=1), rows, cols, then
//    rows*cols f64 LE values, row-major.
point_cloud read_point_cloud(const std::string& path);
point_cloud read_point_cloud_csv(std::istream& in);
void write_point_cloud_csv(const std::string& path, const point_cloud& cloud);
void write_point_cloud_topa(const std::string& path, const point_cloud& cloud);

// Diagram CSV: header "dimension,birth,death"; death is a float or "inf".
// With dimension_filter >= 0 only rows of that dimension are kept; with -1
// all rows must share one dimension.
persistence_diagram read_diagram_csv(const std::string& path, int dimension_filter = -1);
void write_diagram_csv(const std::string& path, const persistence_diagram& diagram);

// Debug graph dump: header "u,v,w".
void write_graph_csv(const std::string& path, const weighted_graph& g);

// One row per sweep cell:
// distribution,N,lambda,mean_components,mean_sparsity,mean_seconds
void write_sweep_csv(const std::string& path, const sweep_report& report);

}  // namespace topoalign
