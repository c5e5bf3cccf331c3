#pragma once

#include "cpmlab/random.hpp"
#include "cpmlab/weights.hpp"

namespace cpm {

// Three rapidities on one modulus with lambda_p < lambda_q < lambda_r < 1 + lambda_p,
// where all six weights are real and positive.
struct PrincipalTriple {
    Modulus modulus;
    RapidityPoint p, q, r;

    ExponentPair pair(WeightKind kind, char first, char second) const;
    bool valid() const;  // ordering plus 0 < Re(beta - alpha) < 1 for all six pairs

    // same lambdas on the k = 0 modulus (the nonchiral slice)
    PrincipalTriple nonchiral() const;
};

// throws std::invalid_argument when the lambdas are not a principal configuration
PrincipalTriple make_triple(double k, double lambda_p, double lambda_q, double lambda_r);
// k in [0, k_max], lambdas spaced at least 0.08 apart
PrincipalTriple random_triple(Rng& rng, double k_max = 0.8);

}  // namespace cpm
