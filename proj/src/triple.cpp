#include "cpmlab/triple.hpp"

#include <stdexcept>

namespace cpm {

namespace {
const RapidityPoint& pick(const PrincipalTriple& t, char c) {
    switch (c) {
        case 'p': return t.p;
        case 'q': return t.q;
        case 'r': return t.r;
    }
    throw std::invalid_argument("rapidity label must be p, q or r");
}
}  // namespace

ExponentPair PrincipalTriple::pair(WeightKind kind, char first, char second) const {
    return exponents(pick(*this, first), pick(*this, second), kind);
}

bool PrincipalTriple::valid() const {
    if (!(p.lambda < q.lambda && q.lambda < r.lambda && r.lambda < 1.0 + p.lambda)) return false;
    const char* pairs[3] = {"pq", "pr", "qr"};
    for (const char* s : pairs)
        for (WeightKind kind : {WeightKind::W, WeightKind::Wbar})
            if (!pair(kind, s[0], s[1]).principal()) return false;
    return true;
}

PrincipalTriple PrincipalTriple::nonchiral() const {
    return make_triple(0.0, p.lambda, q.lambda, r.lambda);
}

PrincipalTriple make_triple(double k, double lambda_p, double lambda_q, double lambda_r) {
    Modulus m = Modulus::from_k(k);
    PrincipalTriple t{m, rapidity_from_lambda(m, lambda_p), rapidity_from_lambda(m, lambda_q),
                      rapidity_from_lambda(m, lambda_r)};
    if (!t.valid()) throw std::invalid_argument("rapidities do not form a principal triple");
    return t;
}

PrincipalTriple random_triple(Rng& rng, double k_max) {
    for (;;) {
        double k = rng.uniform(0.0, k_max);
        double lp = rng.uniform(0.02, 0.4);
        double lq = rng.uniform(lp + 0.08, lp + 0.5);
        double lr = rng.uniform(lq + 0.08, 0.98);
        if (lr <= lq + 0.08 - 1e-12) continue;
        try {
            return make_triple(k, lp, lq, lr);
        } catch (const std::invalid_argument&) {
        }
    }
}

}  // namespace cpm
