#pragma once

#include "cpmlab/specfun.hpp"

namespace cpm {

struct Modulus {
    double k = 0.0;
    double k_prime = 1.0;

    // throws std::invalid_argument unless 0 <= k < 1
    static Modulus from_k(double k);
};

struct RapidityPoint {
    double k = 0.0;  // modulus the point was built on
    double lambda = 0.0;
    double gamma = 0.0;
    double theta = 0.0;
    double phi = 0.0;
    cplx mu_pow_N;  // (1 + k e^{i theta}) / k', independent of N
    cplx tilde_theta;
    cplx tilde_phi;
};

RapidityPoint rapidity_from_lambda(const Modulus& m, double lambda);
RapidityPoint rapidity_from_theta(const Modulus& m, double theta);

struct HomogeneousCoords {
    cplx x, y, mu;
};

HomogeneousCoords homogeneous_coords(const RapidityPoint& p, int N);

double curve_residual(const Modulus& m, cplx x, cplx y, cplx mu, int N);

long genus(int N);

}  // namespace cpm
