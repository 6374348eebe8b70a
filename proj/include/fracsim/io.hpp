#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracsim/grid.hpp"

namespace fracsim {

// Shortest decimal string that round-trips the double exactly.
std::string format_double(double v);

// Snapshot persistence: <base>.f64 holds the raw samples as little-endian
// IEEE-754 binary64, row-major with axis 0 slowest; <base>.meta is a small
// "key = value" text sidecar (d, n, box_halfwidth, time, theta, model).
struct SnapshotMeta {
  GridSpec grid;
  double time = 0.0;
  double theta = 0.0;
  std::string model;
};

void write_snapshot(const std::string& base, const Field& f, const SnapshotMeta& meta);
std::pair<Field, SnapshotMeta> read_snapshot(const std::string& base);

// Minimal CSV-with-header reader for the report files emitted by this
// project. All cells must parse as doubles.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  int column_index(const std::string& name) const;
  std::vector<double> column(const std::string& name) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace fracsim
