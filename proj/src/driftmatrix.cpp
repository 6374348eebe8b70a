#include "fracsim/driftmatrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fracsim/errors.hpp"
#include "fracsim/io.hpp"
#include "nlohmann/json.hpp"

namespace fracsim {

DriftMatrix::DriftMatrix(int dim, std::vector<double> e) : d(dim), entries(std::move(e)) {
  if (d < 1) throw ConfigError("drift matrix: dimension must be positive");
  if (entries.size() != static_cast<std::size_t>(d) * d)
    throw ConfigError("drift matrix: entry count does not match dimension");
  for (double x : entries)
    if (!std::isfinite(x)) throw ConfigError("drift matrix: non-finite entry");
}

DriftMatrix DriftMatrix::identity(int dim) {
  DriftMatrix m(dim, std::vector<double>(static_cast<std::size_t>(dim) * dim, 0.0));
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

DriftMatrix DriftMatrix::compose(double a, const DriftMatrix& skew) {
  DriftMatrix m = skew;
  for (int i = 0; i < m.d; ++i) m(i, i) += a;
  return m;
}

double DriftMatrix::trace() const {
  double t = 0.0;
  for (int i = 0; i < d; ++i) t += (*this)(i, i);
  return t;
}

double DriftMatrix::max_abs() const {
  double m = 0.0;
  for (double x : entries) m = std::max(m, std::abs(x));
  return m;
}

DriftMatrix DriftMatrix::transpose() const {
  DriftMatrix t(d, entries);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) t(i, j) = (*this)(j, i);
  return t;
}

DriftVerdict check_and_decompose(const DriftMatrix& D) {
  const int d = D.d;
  const double a = D.trace() / d;
  const double tol = 1e-10 * std::max(D.max_abs(), 1e-300);

  // Deviation of the symmetric part from a*I.
  Eigen::MatrixXd dev(d, d);
  double dev_max = 0.0;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      dev(i, j) = 0.5 * (D(i, j) + D(j, i)) - (i == j ? a : 0.0);
      dev_max = std::max(dev_max, std::abs(dev(i, j)));
    }
  }

  DriftVerdict v;
  if (dev_max <= tol) {
    if (D.trace() > 0.0) {
      v.status = DriftVerdict::Status::admissible;
      v.a = a;
      v.skew = DriftMatrix(d, std::vector<double>(static_cast<std::size_t>(d) * d, 0.0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) v.skew(i, j) = 0.5 * (D(i, j) - D(j, i));
    } else {
      v.status = DriftVerdict::Status::rejected_trace;
      v.a = a;
    }
    return v;
  }

  // Scalar test fails: the top eigendirection of the deviation violates the
  // quadratic condition.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dev);
  const auto& vals = es.eigenvalues();
  int top = 0;
  for (int i = 1; i < d; ++i)
    if (vals[i] > vals[top]) top = i;
  v.status = DriftVerdict::Status::rejected_direction;
  v.a = a;
  v.witness.resize(d);
  for (int i = 0; i < d; ++i) v.witness[i] = es.eigenvectors().col(top)[i];
  v.witness_excess = vals[top];
  return v;
}

DriftMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open matrix file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::stringstream ss(line);
    std::vector<double> row;
    double x;
    while (ss >> x) row.push_back(x);
    if (!ss.eof() && ss.fail())
      throw ConfigError("matrix file '" + path + "': cannot parse row '" + line + "'");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ConfigError("matrix file '" + path + "' is empty");
  const std::size_t d = rows.size();
  std::vector<double> entries;
  for (const auto& r : rows) {
    if (r.size() != d) throw ConfigError("matrix file '" + path + "': matrix is not square");
    entries.insert(entries.end(), r.begin(), r.end());
  }
  return DriftMatrix(static_cast<int>(d), std::move(entries));
}

std::string verdict_to_json(const DriftVerdict& v) {
  nlohmann::json j;
  switch (v.status) {
    case DriftVerdict::Status::admissible: {
      j["verdict"] = "admissible";
      j["a"] = v.a;
      std::vector<std::vector<double>> b(v.skew.d, std::vector<double>(v.skew.d));
      for (int r = 0; r < v.skew.d; ++r)
        for (int c = 0; c < v.skew.d; ++c) b[r][c] = v.skew(r, c);
      j["skew"] = b;
      break;
    }
    case DriftVerdict::Status::rejected_direction:
      j["verdict"] = "rejected";
      j["reason"] = "anisotropic symmetric part";
      j["witness"] = v.witness;
      j["witness_excess"] = v.witness_excess;
      break;
    case DriftVerdict::Status::rejected_trace:
      j["verdict"] = "rejected";
      j["reason"] = "trace not positive";
      j["a"] = v.a;
      break;
  }
  return j.dump(2);
}

}  // namespace fracsim
