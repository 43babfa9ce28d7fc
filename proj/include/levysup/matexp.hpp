#pragma once

#include <Eigen/Dense>

namespace levysup {

struct ExpmResult {
  Eigen::MatrixXcd E;
  // Rough decimal digits cancelled during the squaring phase, estimated from
  // the norm hump max ||E_i||^2 / ||E_{i+1}||. Callers treat > 6 as unusable.
  double digits_lost = 0.0;
};

// Matrix exponential by Pade(13) with scaling and squaring.
ExpmResult expm(const Eigen::MatrixXcd& A);

}  // namespace levysup
