#pragma once

#include <Eigen/Dense>

#include "levysup/model.hpp"
#include "levysup/roots.hpp"

namespace levysup {

// One exponential family of the infimum density: the contribution
//   sum_j coef[j-1] * y^(j-1) / (j-1)! * exp(r y),   y < 0,
// where r is the positively-stored root, so every term decays as y -> -inf.
struct DensityTerm {
  cdouble r;
  std::vector<cdouble> coef;
};

// Companion-matrix representation of the same density: alpha e^{Ty} t_vec up
// to a scalar prefactor. T carries the superdiagonal -1 pattern with the
// denominator coefficients in its last row; its eigenvalues are the roots.
struct MatrixExpForm {
  Eigen::RowVectorXcd alpha;
  Eigen::MatrixXcd T;
  Eigen::VectorXcd t_vec;
};

// Law of the running infimum at an independent exponential kill time
// (density on y < 0 plus a possible atom at 0), or the s -> 0 limit object
// obtained by dividing the killed law by s. The limit is not a probability
// law: it keeps a constant level 1/|mean| plus decaying terms.
struct InfimumDensity {
  double s = 0.0;
  bool is_limit = false;
  double atom0 = 0.0;     // point mass at y = 0 (only when the process creeps up)
  double constant = 0.0;  // limit object: level approached as y -> -inf
  std::vector<DensityTerm> terms;

  // Matrix route: density = prefactor * Re(alpha e^{Ty} t_vec); the constant
  // level lives in the eigenvalue-0 mode of T.
  bool matrix_form = false;
  double prefactor = 0.0;
  MatrixExpForm mef;

  // Absolutely continuous part at y <= 0 (atom excluded; constant included).
  // Throws IllConditioned if the matrix evaluator cancels > 6 digits.
  double eval(double y) const;
};

// E exp(r inf X at kill time) in product form over roots and poles; s > 0.
cdouble infimum_mgf(const ModelSpec& m, const RootSet& roots, cdouble r);

// Partial-fraction (residue) form of the killed-infimum density.
InfimumDensity infimum_density_residue(const ModelSpec& m,
                                       const RootSet& roots);

// Same law through the companion matrix of the root polynomial; no residue
// extraction, so it stays meaningful when roots collide.
InfimumDensity infimum_density_matrix(const ModelSpec& m,
                                      const RootSet& roots);

// Limit object as s -> 0 (residue form). Requires negative mean. The second
// overload reuses a root set already computed at s = 0.
InfimumDensity limit_density(const ModelSpec& m);
InfimumDensity limit_density(const ModelSpec& m, const RootSet& roots0);
InfimumDensity limit_density_matrix(const ModelSpec& m);

// Drift coefficient of the supremum subordinator: A*(s) for s > 0, and its
// limit a* when the root set was computed at s = 0.
double a_star_killed(const ModelSpec& m, const RootSet& roots);

// atom + integral of the density; equals 1 for s > 0 laws.
double total_mass(const InfimumDensity& d);

// Real view of the density for reporting: conjugate pairs folded into
//   exp(v y) * (cos_coef[p] cos(w y) + sin_coef[p] sin(w y)) * y^p / p!.
struct FusedTerm {
  double v = 0.0, w = 0.0;
  std::vector<double> cos_coef, sin_coef;
};
std::vector<FusedTerm> fused_view(const InfimumDensity& d);

}  // namespace levysup
