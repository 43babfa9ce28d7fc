#include "levysup/matexp.hpp"

#include <cmath>

namespace levysup {

namespace {

// Pade(13) numerator coefficients for exp.
const double kB[14] = {64764752532480000.0, 32382376266240000.0,
                       7771770303897600.0,  1187353796428800.0,
                       129060195264000.0,   10559470521600.0,
                       670442572800.0,      33522128640.0,
                       1323241920.0,        40840800.0,
                       960960.0,            16380.0,
                       182.0,               1.0};

double norm1(const Eigen::MatrixXcd& A) {
  return A.cwiseAbs().colwise().sum().maxCoeff();
}

}  // namespace

ExpmResult expm(const Eigen::MatrixXcd& A) {
  const int n = int(A.rows());
  const double theta13 = 5.371920351148152;
  double nrm = norm1(A);
  int squarings = 0;
  if (nrm > theta13)
    squarings = int(std::ceil(std::log2(nrm / theta13)));
  Eigen::MatrixXcd As = A / std::pow(2.0, squarings);

  Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(n, n);
  Eigen::MatrixXcd A2 = As * As;
  Eigen::MatrixXcd A4 = A2 * A2;
  Eigen::MatrixXcd A6 = A4 * A2;
  Eigen::MatrixXcd U =
      As * (A6 * (kB[13] * A6 + kB[11] * A4 + kB[9] * A2) + kB[7] * A6 +
            kB[5] * A4 + kB[3] * A2 + kB[1] * I);
  Eigen::MatrixXcd V = A6 * (kB[12] * A6 + kB[10] * A4 + kB[8] * A2) +
                       kB[6] * A6 + kB[4] * A4 + kB[2] * A2 + kB[0] * I;
  Eigen::MatrixXcd E = (V - U).partialPivLu().solve(V + U);

  double hump = 1.0;
  for (int i = 0; i < squarings; ++i) {
    double before = norm1(E);
    E = E * E;
    double after = std::max(norm1(E), 1e-300);
    hump = std::max(hump, before * before / after);
  }
  ExpmResult out;
  out.E = std::move(E);
  out.digits_lost = std::log10(std::max(1.0, hump));
  return out;
}

}  // namespace levysup
