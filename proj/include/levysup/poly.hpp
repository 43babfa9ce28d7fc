#pragma once

#include <complex>
#include <vector>

namespace levysup {

using cdouble = std::complex<double>;

// Dense polynomials with ascending coefficients: p[k] multiplies z^k.

inline std::vector<cdouble> poly_mul(const std::vector<cdouble>& a,
                                     const std::vector<cdouble>& b) {
  std::vector<cdouble> out(a.size() + b.size() - 1, cdouble(0.0, 0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// prod over given roots of (z - root), monic.
inline std::vector<cdouble> poly_from_roots(const std::vector<cdouble>& roots) {
  std::vector<cdouble> p{cdouble(1.0, 0.0)};
  for (const cdouble& r : roots) p = poly_mul(p, {-r, cdouble(1.0, 0.0)});
  return p;
}

template <class T>
inline T poly_eval(const std::vector<T>& p, T z) {
  T acc = T(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

inline cdouble poly_eval_c(const std::vector<cdouble>& p, cdouble z) {
  cdouble acc(0.0, 0.0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * z + p[i];
  return acc;
}

inline std::vector<cdouble> poly_deriv(const std::vector<cdouble>& p) {
  if (p.size() <= 1) return {cdouble(0.0, 0.0)};
  std::vector<cdouble> d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * double(i);
  return d;
}

inline double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double acc = 1.0;
  for (int i = 0; i < k; ++i) acc = acc * double(n - i) / double(i + 1);
  return acc;
}

// Integer power of a complex number by repeated squaring; e may be negative.
inline cdouble cpow_int(cdouble z, int e) {
  if (e < 0) return 1.0 / cpow_int(z, -e);
  cdouble acc(1.0, 0.0), base = z;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline double factorial(int n) {
  double acc = 1.0;
  for (int i = 2; i <= n; ++i) acc *= double(i);
  return acc;
}

}  // namespace levysup
