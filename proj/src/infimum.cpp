#include "levysup/infimum.hpp"

#include <cmath>

#include "levysup/errors.hpp"
#include "levysup/matexp.hpp"

namespace levysup {

namespace {

// Derivatives H^(0..q) at x of a product H = prod (x + p_i)^{e_i} with
// integer (possibly negative) exponents, via the logarithmic derivative
//   L = H'/H = sum e_i / (x + p_i),
//   L^(m) = sum e_i (-1)^m m! / (x + p_i)^(m+1),
//   H^(q+1) = sum_{i<=q} C(q,i) H^(i) L^(q-i).
struct Factor {
  cdouble p;
  int e;
};

std::vector<cdouble> product_derivs(const std::vector<Factor>& fs, cdouble x,
                                    int q) {
  cdouble h0(1.0, 0.0);
  for (const Factor& f : fs) h0 *= cpow_int(x + f.p, f.e);
  std::vector<cdouble> H{h0};
  if (q == 0) return H;
  std::vector<cdouble> L(q);  // L[m] = L^(m)(x)
  for (int m = 0; m < q; ++m) {
    cdouble acc(0.0, 0.0);
    double sign_fact = (m % 2 == 0 ? 1.0 : -1.0) * factorial(m);
    for (const Factor& f : fs)
      acc += double(f.e) * sign_fact / cpow_int(x + f.p, m + 1);
    L[m] = acc;
  }
  for (int n = 0; n < q; ++n) {
    cdouble acc(0.0, 0.0);
    for (int i = 0; i <= n; ++i) acc += binomial(n, i) * H[i] * L[n - i];
    H.push_back(acc);
  }
  return H;
}

struct Shape {
  std::vector<PoleTerm> poles;
  double pole_prod;    // prod b_i^(k_i+1) (real by conjugate symmetry)
  bool creeping;       // case S: infimum keeps an atom at 0
};

Shape shape_of(const ModelSpec& m) {
  Shape sh;
  sh.poles = pole_form(m.neg);
  cdouble pp(1.0, 0.0);
  for (const PoleTerm& t : sh.poles) pp *= cpow_int(t.b, t.k + 1);
  sh.pole_prod = pp.real();
  sh.creeping = classify(m).tag == CaseTag::S;
  return sh;
}

// Residue-form assembly shared by the killed law and the limit object. For
// the limit the root set contains the zero root, which is skipped as a term
// but kept inside every H_k, and the overall scale carries 1/|mu|.
InfimumDensity residue_build(const ModelSpec& m, const RootSet& roots) {
  const bool limit = (roots.s == 0.0);
  Shape sh = shape_of(m);

  InfimumDensity out;
  out.s = roots.s;
  out.is_limit = limit;

  cdouble root_prod(1.0, 0.0);
  for (const RootInfo& r : roots.roots) {
    if (limit && std::abs(r.r) == 0.0) continue;
    root_prod *= cpow_int(r.r, r.multiplicity);
  }
  double scale = root_prod.real() / sh.pole_prod;
  if (limit) scale /= -mean(m);  // |mu|; mean < 0 enforced by find_roots
  require(std::isfinite(scale), Err::EvaluationError,
          "non-finite scale in residue assembly");

  out.atom0 = sh.creeping ? scale : 0.0;
  out.constant = limit ? -1.0 / mean(m) : 0.0;

  for (std::size_t k = 0; k < roots.roots.size(); ++k) {
    const RootInfo& rk = roots.roots[k];
    if (limit && std::abs(rk.r) == 0.0) continue;
    int nk = rk.multiplicity;
    std::vector<Factor> fs;
    for (const PoleTerm& t : sh.poles) fs.push_back({t.b, t.k + 1});
    for (std::size_t k2 = 0; k2 < roots.roots.size(); ++k2)
      if (k2 != k)
        fs.push_back({roots.roots[k2].r, -roots.roots[k2].multiplicity});
    // A_{k,j} = H_k^{(n_k - j)}(-r_k) / (n_k - j)! with
    // H_k = prod (r + b_i)^{k_i+1} prod_{k' != k} (r + r_k')^{-n_k'}.
    auto H = product_derivs(fs, -rk.r, nk - 1);
    DensityTerm term;
    term.r = rk.r;
    term.coef.resize(nk);
    for (int j = 1; j <= nk; ++j) {
      cdouble akj = H[nk - j] / factorial(nk - j);
      double fold = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^(j-1)
      term.coef[j - 1] = scale * akj * fold;
    }
    out.terms.push_back(term);
  }
  return out;
}

InfimumDensity matrix_build(const ModelSpec& m, const RootSet& roots) {
  const bool limit = (roots.s == 0.0);
  Shape sh = shape_of(m);

  InfimumDensity out;
  out.s = roots.s;
  out.is_limit = limit;
  out.matrix_form = true;

  std::vector<cdouble> all_roots;
  for (const RootInfo& r : roots.roots)
    for (int i = 0; i < r.multiplicity; ++i) all_roots.push_back(-r.r);
  // Q(r) = prod (r + r_i) over the full root list (zero root included).
  std::vector<cdouble> Q = poly_from_roots(all_roots);
  std::vector<cdouble> PG{cdouble(1.0, 0.0)};
  for (const PoleTerm& t : sh.poles)
    for (int i = 0; i < t.k + 1; ++i)
      PG = poly_mul(PG, {t.b, cdouble(1.0, 0.0)});

  int n = int(all_roots.size());
  std::vector<cdouble> P;
  if (sh.creeping) {
    // Degrees match; the numerator is PG - Q with the leading terms cancelling.
    P.assign(n, cdouble(0.0, 0.0));
    for (int i = 0; i < n; ++i) P[i] = PG[i] - Q[i];
  } else {
    require(int(PG.size()) == n, Err::EvaluationError,
            "numerator/denominator degree mismatch");
    P = PG;
  }

  out.mef.alpha = Eigen::RowVectorXcd::Zero(n);
  for (int k = 0; k < n; ++k) out.mef.alpha(k) = P[k];
  out.mef.T = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) out.mef.T(i, i + 1) = -1.0;
  for (int j = 0; j < n; ++j) out.mef.T(n - 1, j) = Q[j];
  out.mef.t_vec = Eigen::VectorXcd::Zero(n);
  out.mef.t_vec(n - 1) = 1.0;

  cdouble root_prod(1.0, 0.0);
  for (const RootInfo& r : roots.roots) {
    if (limit && std::abs(r.r) == 0.0) continue;
    root_prod *= cpow_int(r.r, r.multiplicity);
  }
  double scale = root_prod.real() / sh.pole_prod;
  if (limit) scale /= -mean(m);
  out.prefactor = scale;
  out.atom0 = sh.creeping ? scale : 0.0;
  out.constant = limit ? -1.0 / mean(m) : 0.0;
  return out;
}

}  // namespace

double InfimumDensity::eval(double y) const {
  require(y <= 0.0, Err::DomainError, "the infimum density lives on y <= 0");
  if (matrix_form) {
    ExpmResult e = expm(mef.T * y);
    require(e.digits_lost <= 6.0, Err::IllConditioned,
            "matrix exponential lost more than 6 digits");
    cdouble v = (mef.alpha * e.E * mef.t_vec)(0, 0);
    return prefactor * v.real();
  }
  cdouble acc(constant, 0.0);
  for (const DensityTerm& t : terms) {
    if (t.r.real() * y < -730.0) continue;  // fully decayed
    cdouble e = std::exp(t.r * y);
    double powfact = 1.0;  // y^(j-1) / (j-1)!
    for (std::size_t j = 0; j < t.coef.size(); ++j) {
      if (j > 0) powfact *= y / double(j);
      acc += t.coef[j] * powfact * e;
    }
  }
  return acc.real();
}

cdouble infimum_mgf(const ModelSpec& m, const RootSet& roots, cdouble r) {
  require(roots.s > 0.0, Err::DomainError,
          "the killed-infimum transform needs s > 0");
  Shape sh = shape_of(m);
  cdouble num(1.0, 0.0), den(1.0, 0.0);
  for (const RootInfo& ri : roots.roots) {
    num *= cpow_int(ri.r, ri.multiplicity);
    cdouble d = r + ri.r;
    require(std::abs(d) > 1e-12 * (1.0 + std::abs(ri.r)), Err::PoleHit,
            "transform evaluated at a pole");
    den *= cpow_int(d, ri.multiplicity);
  }
  cdouble acc = num / den;
  for (const PoleTerm& t : sh.poles)
    acc *= cpow_int((r + t.b) / t.b, t.k + 1);
  return acc;
}

InfimumDensity infimum_density_residue(const ModelSpec& m,
                                       const RootSet& roots) {
  require(roots.s > 0.0, Err::DomainError,
          "killed infimum density needs s > 0; use limit_density for s = 0");
  return residue_build(m, roots);
}

InfimumDensity infimum_density_matrix(const ModelSpec& m,
                                      const RootSet& roots) {
  require(roots.s > 0.0, Err::DomainError,
          "killed infimum density needs s > 0; use limit_density for s = 0");
  return matrix_build(m, roots);
}

InfimumDensity limit_density(const ModelSpec& m) {
  return residue_build(m, find_roots(m, 0.0));
}

InfimumDensity limit_density(const ModelSpec& m, const RootSet& roots0) {
  require(roots0.s == 0.0, Err::DomainError,
          "limit_density needs a root set computed at s = 0");
  return residue_build(m, roots0);
}

InfimumDensity limit_density_matrix(const ModelSpec& m) {
  return matrix_build(m, find_roots(m, 0.0));
}

double a_star_killed(const ModelSpec& m, const RootSet& roots) {
  InfimumDensity d = residue_build(m, roots);
  if (m.sigma > 0.0) {
    double at_zero = d.constant;
    for (const DensityTerm& t : d.terms) at_zero += t.coef[0].real();
    // Conjugate pairs make the imaginary parts cancel; the real part is the
    // boundary density value.
    double half_sig2 = 0.5 * m.sigma * m.sigma;
    return d.is_limit ? half_sig2 * at_zero : half_sig2 * at_zero / roots.s;
  }
  double updrift = std::max(0.0, m.drift_a);
  if (updrift == 0.0) return 0.0;
  return d.is_limit ? updrift * d.atom0 : updrift * d.atom0 / roots.s;
}

double total_mass(const InfimumDensity& d) {
  if (d.matrix_form) {
    require(!d.is_limit, Err::DomainError,
            "the limit object has infinite mass");
    Eigen::VectorXcd x = d.mef.T.partialPivLu().solve(d.mef.t_vec);
    return d.atom0 + d.prefactor * (d.mef.alpha * x)(0, 0).real();
  }
  require(!d.is_limit, Err::DomainError, "the limit object has infinite mass");
  cdouble acc(0.0, 0.0);
  // int_{-inf}^0 y^(j-1)/(j-1)! e^(r y) dy = (-1)^(j-1) / r^j
  for (const DensityTerm& t : d.terms)
    for (std::size_t j = 1; j <= t.coef.size(); ++j) {
      double sign = (j % 2 == 1) ? 1.0 : -1.0;
      acc += t.coef[j - 1] * sign / cpow_int(t.r, int(j));
    }
  return d.atom0 + acc.real();
}

std::vector<FusedTerm> fused_view(const InfimumDensity& d) {
  require(!d.matrix_form, Err::DomainError,
          "fused view needs the residue form");
  std::vector<FusedTerm> out;
  std::vector<bool> used(d.terms.size(), false);
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    if (used[i]) continue;
    const DensityTerm& t = d.terms[i];
    used[i] = true;
    if (std::abs(t.r.imag()) < 1e-12) {
      FusedTerm f;
      f.v = t.r.real();
      for (const cdouble& c : t.coef) {
        f.cos_coef.push_back(c.real());
        f.sin_coef.push_back(0.0);
      }
      out.push_back(f);
      continue;
    }
    if (t.r.imag() < 0.0) continue;  // handled with its partner
    for (std::size_t j = 0; j < d.terms.size(); ++j) {
      if (j == i || used[j]) continue;
      if (std::abs(d.terms[j].r - std::conj(t.r)) <
          1e-9 * (1.0 + std::abs(t.r))) {
        used[j] = true;
        break;
      }
    }
    // 2 Re[c e^{(v+iw)y}] = e^{vy} (2 Re c cos(wy) - 2 Im c sin(wy))
    FusedTerm f;
    f.v = t.r.real();
    f.w = t.r.imag();
    for (const cdouble& c : t.coef) {
      f.cos_coef.push_back(2.0 * c.real());
      f.sin_coef.push_back(-2.0 * c.imag());
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace levysup
