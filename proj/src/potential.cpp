#include "depletion/potential.hpp"

#include "depletion/errors.hpp"
#include "depletion/format.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>

namespace depletion {

AOParameters::AOParameters(double r, double d, double rho, double kt)
    : R(r), delta(d), rho_p(rho), kT(kt) {
  if (!(R > 0.0) || !std::isfinite(R)) throw InputError("colloid radius must be positive");
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw InputError("depletion radius must be nonnegative");
  }
  if (!(rho_p >= 0.0) || !std::isfinite(rho_p)) {
    throw InputError("depletant density must be nonnegative");
  }
  if (!(kT > 0.0) || !std::isfinite(kT)) throw InputError("kT must be positive");
}

double v_dep(double r, const AOParameters& p) {
  const double a = p.R + p.delta;
  if (r < p.sigma_cc() || r >= 2.0 * a) return 0.0;
  const double gap = 2.0 * a - r;
  const double overlap = std::numbers::pi / 12.0 * gap * gap * (r + 4.0 * a);
  return -p.osmotic_pressure() * overlap;
}

double v_eff(double r, const AOParameters& p) {
  if (r < p.sigma_cc()) return std::numeric_limits<double>::infinity();
  return v_dep(r, p);
}

CriterionReport exactness_guard(const AOParameters& p) {
  CriterionReport r;
  r.threshold = kTripletFactor * p.R;
  r.satisfied = p.delta <= r.threshold;
  r.strict = p.delta < r.threshold;
  return r;
}

PotentialTable potential_table(const AOParameters& p, double r_min, double r_max,
                               std::size_t n_points) {
  if (n_points < 2) throw InputError("a potential table needs at least two points");
  if (!(r_min >= 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
    throw InputError("need 0 <= r_min < r_max");
  }
  PotentialTable t;
  t.params = p;
  const double step = (r_max - r_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) {
    const double r = i + 1 == n_points ? r_max : r_min + step * static_cast<double>(i);
    t.r_values.push_back(r);
    t.v_eff_values.push_back(v_eff(r, p));
    t.v_dep_values.push_back(v_dep(r, p));
  }
  return t;
}

void write_csv(std::ostream& out, const PotentialTable& table) {
  out << "r,v_eff,v_dep\n";
  for (std::size_t i = 0; i < table.r_values.size(); ++i) {
    out << format_double(table.r_values[i]) << ',' << format_double(table.v_eff_values[i]) << ','
        << format_double(table.v_dep_values[i]) << '\n';
  }
}

}  // namespace depletion
