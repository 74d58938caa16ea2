#pragma once

#include "multifid/quantum.hpp"

namespace multifid {

// Order parameter of the z-fidelity family: a real z >= 1/2, or the flat
// (z -> infinity) limit.
struct ZParam {
  double z = 0.5;
  bool flat = false;

  static ZParam flat_limit() { return ZParam{0.0, true}; }
  static ZParam of(double z) { return ZParam{z, false}; }
};

// Decreasing sequence of regularization offsets used for the limit
// quantities (matrix logs of possibly singular states).
struct EpsSchedule {
  std::vector<double> eps;

  static EpsSchedule defaults() {
    return EpsSchedule{{1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8}};
  }
};

// Value of a regularized limit: the minimum over the schedule together with
// an Aitken-extrapolated estimate from the last three evaluations.
struct LimitValue {
  double value = 0.0;
  double extrapolated = 0.0;
  double eps_used = 0.0;
};

// Tr[(sigma^{1/4z} rho^{1/2z} sigma^{1/4z})^z]
double fid_z(const DensityMatrix& rho, const DensityMatrix& sigma, ZParam z);

// || sqrt(rho) sqrt(sigma) ||_1
double uhlmann(const DensityMatrix& rho, const DensityMatrix& sigma);

// Tr[sqrt(rho) sqrt(sigma)]
double holevo(const DensityMatrix& rho, const DensityMatrix& sigma);

// inf_eps Tr exp((ln rho(eps) + ln sigma(eps)) / 2) with rho(eps) = rho + eps I.
LimitValue log_euclidean_fid(const DensityMatrix& rho, const DensityMatrix& sigma,
                             const EpsSchedule& schedule = EpsSchedule::defaults());

// inf_eps Tr[rho(eps) # sigma(eps)] with # the matrix geometric mean.
LimitValue geometric_fid(const DensityMatrix& rho, const DensityMatrix& sigma,
                         const EpsSchedule& schedule = EpsSchedule::defaults());

// Matrix geometric mean A # B of positive definite matrices.
HermitianMatrix geometric_mean(const HermitianMatrix& a, const HermitianMatrix& b);

// sqrt(2 (1 - F)) with F the Uhlmann fidelity.
double bures_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// sqrt(2 (1 - F_H)) with F_H the Holevo fidelity.
double hellinger_distance_q(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace multifid
