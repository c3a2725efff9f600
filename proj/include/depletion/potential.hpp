#pragma once

// Effective pair potential between two hard spheres in a bath of ideal
// depletants (3D).

#include "depletion/criteria.hpp"

#include <iosfwd>
#include <vector>

namespace depletion {

struct AOParameters {
  double R = 1.0;      // colloid radius
  double delta = 0.1;  // depletion radius
  double rho_p = 1.0;  // depletant number density
  double kT = 1.0;     // thermal energy

  AOParameters() = default;
  AOParameters(double r, double d, double rho, double kt = 1.0);

  [[nodiscard]] double osmotic_pressure() const { return kT * rho_p; }
  [[nodiscard]] double sigma_cc() const { return 2.0 * R; }
  [[nodiscard]] double sigma_pc() const { return R + delta; }
  // End of the attractive well, 2 (R + delta).
  [[nodiscard]] double range() const { return 2.0 * (R + delta); }
};

// -P_p times the overlap volume of two balls of radius a = R + delta at
// center distance r, for 2R <= r <= 2a; 0 elsewhere. Evaluated as
// (pi/12) (2a - r)^2 (r + 4a), which has no cancellation near r = 2a.
double v_dep(double r, const AOParameters& p);

// +inf for r < 2R, v_dep(r) otherwise.
double v_eff(double r, const AOParameters& p);

// Whether the pair potential is exact for equal spheres: strict when no triple
// overlap can occur, satisfied (zero volume) at the threshold itself.
CriterionReport exactness_guard(const AOParameters& p);

struct PotentialTable {
  std::vector<double> r_values;
  std::vector<double> v_eff_values;
  std::vector<double> v_dep_values;
  AOParameters params;
};

// n_points >= 2 evenly spaced separations in [r_min, r_max].
PotentialTable potential_table(const AOParameters& p, double r_min, double r_max,
                               std::size_t n_points);

// Header "r,v_eff,v_dep", 17 significant digits, "inf" for infinities.
void write_csv(std::ostream& out, const PotentialTable& table);

}  // namespace depletion
