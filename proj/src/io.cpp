#include "fracsim/io.hpp"

#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "fracsim/errors.hpp"

namespace fracsim {

std::string format_double(double v) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; byte swapping not implemented");

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": cannot parse number '" + s + "'");
  }
}

}  // namespace

void write_snapshot(const std::string& base, const Field& f, const SnapshotMeta& meta) {
  {
    std::ofstream bin(base + ".f64", std::ios::binary);
    if (!bin) throw ConfigError("cannot open '" + base + ".f64' for writing");
    bin.write(reinterpret_cast<const char*>(f.data()),
              static_cast<std::streamsize>(f.size() * sizeof(double)));
  }
  std::ofstream txt(base + ".meta");
  if (!txt) throw ConfigError("cannot open '" + base + ".meta' for writing");
  txt << "format = f64-le-rowmajor\n"
      << "d = " << f.grid.d << "\n"
      << "n = " << f.grid.n << "\n"
      << "box_halfwidth = " << format_double(f.grid.box) << "\n"
      << "time = " << format_double(meta.time) << "\n"
      << "theta = " << format_double(meta.theta) << "\n"
      << "model = " << meta.model << "\n";
}

std::pair<Field, SnapshotMeta> read_snapshot(const std::string& base) {
  std::ifstream txt(base + ".meta");
  if (!txt) throw ConfigError("cannot open '" + base + ".meta'");
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(txt, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  SnapshotMeta meta;
  meta.grid.d = static_cast<int>(parse_double(kv.at("d"), "snapshot meta"));
  meta.grid.n = static_cast<int>(parse_double(kv.at("n"), "snapshot meta"));
  meta.grid.box = parse_double(kv.at("box_halfwidth"), "snapshot meta");
  meta.time = parse_double(kv.at("time"), "snapshot meta");
  meta.theta = parse_double(kv.at("theta"), "snapshot meta");
  meta.model = kv.count("model") ? kv.at("model") : "";
  meta.grid.validate();

  Field f(meta.grid);
  std::ifstream bin(base + ".f64", std::ios::binary);
  if (!bin) throw ConfigError("cannot open '" + base + ".f64'");
  bin.read(reinterpret_cast<char*>(f.data()),
           static_cast<std::streamsize>(f.size() * sizeof(double)));
  if (static_cast<std::size_t>(bin.gcount()) != f.size() * sizeof(double))
    throw ConfigError("snapshot '" + base + ".f64' is truncated");
  return {std::move(f), meta};
}

int CsvTable::column_index(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  throw ConfigError("csv: no column named '" + name + "'");
}

std::vector<double> CsvTable::column(const std::string& name) const {
  const int idx = column_index(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[idx]);
  return out;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open csv '" + path + "'");
  CsvTable t;
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv '" + path + "' is empty");
  std::stringstream hs(line);
  std::string cell;
  while (std::getline(hs, cell, ',')) t.columns.push_back(trim(cell));
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::stringstream rs(line);
    std::vector<double> row;
    while (std::getline(rs, cell, ',')) row.push_back(parse_double(trim(cell), path));
    if (row.size() != t.columns.size())
      throw ConfigError("csv '" + path + "': ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace fracsim
