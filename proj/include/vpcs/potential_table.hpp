#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Tabulated radial potential with a cubic interpolation contract in
// (ln r, ln|V|) space.  Uehling-type tables are strictly negative and decay
// monotonically past the last decade; an all-zero table is accepted as the
// trivial potential.  Outside the tabulated range the log-log interpolant
// is continued linearly with the endpoint slope (clamped to nonpositive on
// the large-r side so the magnitude keeps decaying).

namespace vpcs {

enum class TableInterpolation { cubic_log_log };

class PotentialTable {
public:
  PotentialTable(std::vector<double> radii, std::vector<double> values,
                 TableInterpolation interp = TableInterpolation::cubic_log_log);

  double value(double r) const;

  const std::vector<double>& radii() const { return radii_; }
  const std::vector<double>& values() const { return values_; }
  double r_min() const { return radii_.front(); }
  double r_max() const { return radii_.back(); }
  bool all_zero() const { return all_zero_; }
  TableInterpolation interpolation() const { return interp_; }

  // CSV with header "r,V", 17 significant digits, LF line endings.
  void write_csv(std::ostream& os) const;
  // JSON document with explicit unit metadata.
  void write_json(std::ostream& os, const std::string& length_unit,
                  const std::string& energy_unit) const;

private:
  std::vector<double> radii_, values_;
  TableInterpolation interp_;
  bool all_zero_ = false;
  // natural logs of r and -V, plus spline second derivatives
  std::vector<double> s_, w_, w2_;
  double slope_lo_ = 0.0, slope_hi_ = 0.0;
};

} // namespace vpcs
