#include "cpmlab/rapidity.hpp"

#include <algorithm>
#include <cmath>

namespace cpm {

Modulus Modulus::from_k(double k) {
    if (!(k >= 0.0 && k < 1.0)) throw std::invalid_argument("modulus k must satisfy 0 <= k < 1");
    return Modulus{k, std::sqrt((1.0 - k) * (1.0 + k))};
}

RapidityPoint rapidity_from_lambda(const Modulus& m, double lambda) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw std::invalid_argument("lambda must lie in (0,1)");
    if (m.k_prime == 0.0) throw std::invalid_argument("modulus with k' = 0");
    const double s = std::sin(pi * lambda), c = std::cos(pi * lambda);
    const double shift = std::asin(m.k * s);
    RapidityPoint p;
    p.k = m.k;
    p.lambda = lambda;
    p.theta = pi * lambda + shift;
    p.phi = pi * lambda - shift;
    p.gamma = std::log((std::sqrt(1.0 - m.k * m.k * s * s) + m.k * c) / m.k_prime);
    p.mu_pow_N = (1.0 + m.k * std::exp(cplx(0.0, p.theta))) / m.k_prime;
    p.tilde_theta = cplx(pi * lambda, p.gamma);
    p.tilde_phi = cplx(pi * lambda, -p.gamma);
    return p;
}

RapidityPoint rapidity_from_theta(const Modulus& m, double theta) {
    if (!(theta > 0.0 && theta < pi)) throw std::invalid_argument("theta must lie in (0,pi)");
    // atan2 keeps lambda in (0,1) through cos(theta) + k = 0
    double lambda = std::atan2(std::sin(theta), std::cos(theta) + m.k) / pi;
    return rapidity_from_lambda(m, lambda);
}

HomogeneousCoords homogeneous_coords(const RapidityPoint& p, int N) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    HomogeneousCoords h;
    h.x = std::exp(cplx(0.0, p.phi / N));
    h.y = std::exp(cplx(0.0, (pi + p.theta) / N));
    cplx mu2N = std::exp(cplx(0.0, p.theta - p.phi)) * (std::sin(p.theta) / std::sin(p.phi));
    h.mu = std::pow(mu2N, 1.0 / (2.0 * N));
    return h;
}

double curve_residual(const Modulus& m, cplx x, cplx y, cplx mu, int N) {
    const cplx xN = std::pow(x, N), yN = std::pow(y, N), muN = std::pow(mu, N);
    double r1 = std::abs(muN - m.k_prime / (1.0 - m.k * xN));
    double r2 = std::abs(muN - (1.0 - m.k * yN) / m.k_prime);
    double r3 = std::abs(xN + yN - m.k * (1.0 + xN * yN));
    return std::max({r1, r2, r3});
}

long genus(int N) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
    return long(N) * N * (N - 2) + 1;
}

}  // namespace cpm
