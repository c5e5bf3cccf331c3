#pragma once

#include "cpmlab/bilateral.hpp"
#include "cpmlab/random.hpp"
#include "cpmlab/triple.hpp"

#include <array>
#include <string>
#include <vector>

namespace cpm {

using Triple3 = std::array<cplx, 3>;

// sum_n prod_j Gamma(x_j + m_j + n) / Gamma(y_j + m_j + n)
struct IdentityInstance {
    Triple3 x{}, y{};
    std::array<long, 3> m{};

    Triple3 shifted_x() const;
    Triple3 shifted_y() const;
    // m absorbed into x and y
    IdentityInstance absorbed() const;
};

struct singular_configuration : std::domain_error {
    using std::domain_error::domain_error;
};

struct ConditionResiduals {
    double linear = 0.0;    // |x1 + x2 + x3 + 2 - y1 - y2 - y3|
    double periodic = 0.0;  // |prod sin(pi x) - prod sin(pi y)|, relative to max(1, |prod sin(pi x)|)
    bool integer_x = false;
    bool hold(double tol = 1e-12) const { return linear <= tol && periodic <= tol && !integer_x; }
};

ConditionResiduals condition_residuals(const IdentityInstance& inst);

// x = (alpha_pr, abar_qr, 1 - bbar_pq), y = (beta_pr, bbar_qr, 1 - abar_pq), m = (a, b, c)
IdentityInstance instance_from_rapidities(const PrincipalTriple& t, long a, long b, long c);

struct UV {
    Triple3 u, v;
};
// the dependent variables as linear functions of x and y
UV uv_from_instance(const IdentityInstance& inst);
// the same variables read off the exponent pairs of the triple
UV uv_from_rapidities(const PrincipalTriple& t);

// x3, y3 from the two conditions; branch shifts both by an integer. m = 0.
IdentityInstance solve_conditions(cplx x1, cplx x2, cplx y1, cplx y2, long branch = 0);

// x1, x2 in (0.05, 0.95), y1, y2 in (0.3, 1.7), imaginary parts up to imag_width; redraws singular cases
IdentityInstance random_identity_instance(Rng& rng, double imag_width = 0.3);

struct LhsSum {
    BilateralSum sum;
    cplx decay;               // sum of (x - y)
    double fitted_decay = 0.0;  // worst side, over |n| in [10^3, 10^4]
    cplx value() const { return sum.total(); }
};

LhsSum lhs_sum(const IdentityInstance& inst, long cutoff);

enum class GForm { trigonometric, gamma_product, sigma_tau };
cplx g_function(const Triple3& x, const Triple3& y, GForm form = GForm::trigonometric);

// G / prod_{i,j} Gamma(y_i - x_j + m_i - m_j); throws pole_error when a Gamma in the denominator has a pole
cplx rhs_closed_form(const IdentityInstance& inst, GForm form = GForm::trigonometric);
// f2 f3 / f1 times the Pochhammer double product, rescaled to the Gamma normalization of the sum
cplx rhs_f_route(const IdentityInstance& inst);

struct IdentityResidual {
    cplx lhs, rhs;
    double rel_err = 0.0;
    double tail_bound = 0.0;  // relative to |rhs|
    double fitted_decay = 0.0;
    bool pass(double tol) const { return rel_err < tol; }
};

IdentityResidual identity_residual(const IdentityInstance& inst, long cutoff);

struct OrbitMember {
    std::string label;
    IdentityInstance instance;
};

struct Orbit {
    std::vector<OrbitMember> members;
    std::vector<std::string> dropped;  // labels removed for an integer x
};

// permutations of x and of y, the reflection, per-index translations and paired y shifts, all with m absorbed
Orbit symmetry_orbit(const IdentityInstance& inst);

struct GSymmetry {
    cplx sigma_product, sigma_sum;  // the product over y_i - x_1 and the symmetric exponential sum
    double sigma_deviation = 0.0;
    double g_deviation = 0.0;          // worst relative gap among the three G forms
    double reflection_deviation = 0.0; // sigma against sigma of the reflected instance
    double swap_deviation = 0.0;       // product form with x1 and x2 exchanged
    bool swap_bit_identical = false;   // symmetric form with x1 and x2 exchanged
};

GSymmetry g_symmetry_check(const IdentityInstance& inst);

struct DougallCheck {
    cplx lhs, rhs;
    double rel_err = 0.0;
    double tail_bound = 0.0;
    bool ramanujan_applies = false;  // a = 0 and Re(x1 + x2 + x3) < 1
    cplx ramanujan_rhs;
    double ramanujan_rel_err = 0.0;
    ConditionResiduals conditions;   // of the instance y = 1 + a - x
};

// normalized bilateral sum sum_n prod (x_i)_n / (1 + a - x_i)_n against its Gamma product
DougallCheck dougall_5h5_check(cplx x1, cplx x2, cplx x3, cplx a, long cutoff);

// Gamma(1/2) prod Gamma(x_i) / Gamma(x_i + 1/2), the balanced case y = 1 - x, sum x = 1/2
cplx dougall_ramanujan_value(const Triple3& x);

}  // namespace cpm
