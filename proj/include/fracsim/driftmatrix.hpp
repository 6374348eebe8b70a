#pragma once

#include <string>
#include <vector>

namespace fracsim {

// Dense d x d real matrix, row-major.
struct DriftMatrix {
  int d = 0;
  std::vector<double> entries;

  DriftMatrix() = default;
  DriftMatrix(int dim, std::vector<double> e);
  static DriftMatrix identity(int dim);
  static DriftMatrix compose(double a, const DriftMatrix& skew);  // a*I + B

  double operator()(int i, int j) const { return entries[i * d + j]; }
  double& operator()(int i, int j) { return entries[i * d + j]; }
  double trace() const;
  double max_abs() const;
  DriftMatrix transpose() const;
};

// Verdict of the quadratic-form test x.Dx <= tr(D)|x|^2/d. Admissible
// matrices split as D = a I + B with a = tr(D)/d > 0 and B skew-symmetric.
// Rejections carry either a unit witness direction with x.Dx > tr(D)/d, or
// the distinct boundary case where the symmetric part is scalar but the
// trace is not positive.
struct DriftVerdict {
  enum class Status { admissible, rejected_direction, rejected_trace };
  Status status = Status::rejected_trace;
  double a = 0.0;
  DriftMatrix skew;             // valid when admissible
  std::vector<double> witness;  // valid when rejected_direction
  double witness_excess = 0.0;  // x.Dx - tr(D)|x|^2/d at the witness

  bool admissible() const { return status == Status::admissible; }
};

DriftVerdict check_and_decompose(const DriftMatrix& D);

// Whitespace-separated rows, one matrix row per line.
DriftMatrix read_matrix_file(const std::string& path);

std::string verdict_to_json(const DriftVerdict& v);

}  // namespace fracsim
