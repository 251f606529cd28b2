#pragma once

#include <string>
#include <vector>

#include "cesaro/complex.hpp"
#include "cesaro/series.hpp"

namespace cesaro {

// One pole factor (1 - a z)^{-beta}. |a| <= 1; beta may be any real
// (negative integer beta means a plain polynomial factor).
struct PoleFactor {
    Cplx a;
    double beta;
};

// scale * z^p * prod_i (1 - a_i z)^{-beta_i} * log(1/(1-z))^q
struct Atom {
    Cplx scale{1.0};
    unsigned p = 0;
    std::vector<PoleFactor> factors;
    unsigned q = 0;
};

// A finite atom sum divided by z^z_shift. The shift keeps quotients like
// (f - f(0))/z inside the closed-form-evaluable algebra; the sum's first
// z_shift coefficients vanish by construction.
struct AtomSum {
    std::vector<Atom> atoms;
    unsigned z_shift = 0;
};

struct PoleError : DomainError {
    using DomainError::DomainError;
};
struct AlgebraError : DomainError {
    using DomainError::DomainError;
};

// Canonical form: factors sorted and merged per atom (equal a => betas add,
// beta == 0 dropped), like atoms merged (scales add), zero-scale atoms
// dropped. Throws PoleError if any factor has |a| > 1 (+1e-12 slack).
AtomSum normalize(AtomSum s);

Atom atom_product(const Atom& x, const Atom& y);
AtomSum atom_sum_product(const AtomSum& x, const AtomSum& y);
AtomSum atom_sum_scale(AtomSum s, Cplx c);
AtomSum atom_sum_add(const AtomSum& x, const AtomSum& y);

// pow with integer exponent (k >= 0 any sum; k < 0 single invertible atom).
AtomSum atom_sum_ipow(const AtomSum& s, long k);

// Recognize s == c + d z (pure polynomial atoms). Used to fold linear sums
// into (1 - a z) factors for products, powers and division.
bool linear_polynomial(const AtomSum& s, Cplx* c, Cplx* d);

// c + d z as a single factor atom c * (1 - (-d/c) z); requires c != 0 and
// | -d/c | <= 1.
Atom linear_to_factor_atom(Cplx c, Cplx d);

// Closed-form value at |z| < 1 (principal branches). Assumes normalized.
Cplx atom_evaluate(const Atom& a, Cplx z);
Cplx atom_sum_evaluate_no_shift(const AtomSum& s, Cplx z);

// Coefficient stream of the atom sum (shift included).
Series atom_sum_series(const AtomSum& s);

// Constant term of the model (exact for parse-produced sums).
Cplx atom_sum_constant_term(const AtomSum& s);

// Exact termwise derivative; the algebra is closed under d/dz.
AtomSum atom_sum_derivative(const AtomSum& s);

// Canonical expression string; parses back to the same normalized sum.
std::string atom_sum_print(const AtomSum& s);

}  // namespace cesaro
