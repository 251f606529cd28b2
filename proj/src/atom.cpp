#include "cesaro/atom.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cesaro {

namespace {

constexpr double kPoleSlack = 1e-12;

bool cplx_less(Cplx x, Cplx y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
}

bool is_poly_factor(const PoleFactor& f) {
    return f.beta <= 0.0 && f.beta == std::floor(f.beta);
}

void check_finite_atom(const Atom& a) {
    if (!is_finite(a.scale)) throw DomainError("non-finite atom scale");
    for (const auto& f : a.factors) {
        if (!is_finite(f.a) || !is_finite(f.beta)) throw DomainError("non-finite pole factor");
        if (std::abs(f.a) > 1.0 + kPoleSlack)
            throw PoleError("pole inside the closed unit disc: |a| = " + std::to_string(std::abs(f.a)));
    }
}

Atom normalize_atom(Atom a) {
    check_finite_atom(a);
    std::sort(a.factors.begin(), a.factors.end(),
              [](const PoleFactor& x, const PoleFactor& y) { return cplx_less(x.a, y.a); });
    std::vector<PoleFactor> merged;
    for (const auto& f : a.factors) {
        if (std::abs(f.a) == 0.0) continue;  // (1 - 0 z)^b == 1
        if (!merged.empty() && merged.back().a == f.a)
            merged.back().beta += f.beta;
        else
            merged.push_back(f);
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const PoleFactor& f) { return f.beta == 0.0; }),
                 merged.end());
    a.factors = std::move(merged);
    return a;
}

bool same_shape(const Atom& x, const Atom& y) {
    if (x.p != y.p || x.q != y.q || x.factors.size() != y.factors.size()) return false;
    for (std::size_t i = 0; i < x.factors.size(); ++i)
        if (x.factors[i].a != y.factors[i].a || x.factors[i].beta != y.factors[i].beta)
            return false;
    return true;
}

// Expand the purely polynomial part of an atom: z^p * prod of poly factors.
std::vector<Cplx> expand_polynomial_part(const Atom& a) {
    std::vector<Cplx> poly{a.scale};
    for (const auto& f : a.factors) {
        if (!is_poly_factor(f)) continue;
        const long k = static_cast<long>(-f.beta);  // (1 - a z)^k
        for (long i = 0; i < k; ++i) {
            std::vector<Cplx> next(poly.size() + 1, Cplx(0.0));
            for (std::size_t j = 0; j < poly.size(); ++j) {
                next[j] += poly[j];
                next[j + 1] -= f.a * poly[j];
            }
            poly = std::move(next);
        }
    }
    if (a.p > 0) poly.insert(poly.begin(), a.p, Cplx(0.0));
    return poly;
}

Series atom_series(const Atom& a) {
    std::vector<Series> infinite;
    for (const auto& f : a.factors)
        if (!is_poly_factor(f)) infinite.push_back(series_pole_factor(f.a, f.beta));
    for (unsigned i = 0; i < a.q; ++i) infinite.push_back(series_log_factor());

    const std::vector<Cplx> poly = expand_polynomial_part(a);  // includes scale and z^p
    if (infinite.empty()) return series_from_polynomial(poly);

    Series s = infinite[0];
    for (std::size_t i = 1; i < infinite.size(); ++i) s = series_product(s, infinite[i]);
    if (poly.size() == 1 && a.p == 0)
        return series_linear_combination({poly[0]}, {s});
    return series_polynomial_product(poly, s);
}

std::string fmt_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

// Complex constant as a grammar-conforming parenthesized expression.
// Negative components use the binary '-' ("0-2", "1-2i").
std::string fmt_scale(Cplx c) {
    const double re = c.real(), im = c.imag();
    if (im == 0.0) {
        if (re >= 0.0) return fmt_real(re);
        return "(0-" + fmt_real(-re) + ")";
    }
    std::string s = "(";
    if (re != 0.0)
        s += re > 0 ? fmt_real(re) : "0-" + fmt_real(-re);
    else if (im < 0)
        s += "0";
    if (im > 0.0)
        s += (re != 0.0 ? "+" : "") + fmt_real(im) + "i";
    else
        s += "-" + fmt_real(-im) + "i";
    return s + ")";
}

std::string fmt_factor(const PoleFactor& f) {
    // (1 - a*z)^(-beta), printed with the stored exponent negated.
    std::string inner = "1-";
    if (f.a == Cplx(1.0))
        inner += "z";
    else
        inner += fmt_scale(f.a) + "*z";
    const double e = -f.beta;
    if (e == 1.0) return "(" + inner + ")";
    return "(" + inner + ")^" + fmt_real(e);
}

}  // namespace

AtomSum normalize(AtomSum s) {
    std::vector<Atom> out;
    for (auto& a : s.atoms) {
        Atom n = normalize_atom(std::move(a));
        if (std::abs(n.scale) == 0.0) continue;
        bool merged = false;
        for (auto& e : out) {
            if (same_shape(e, n)) {
                e.scale += n.scale;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(std::move(n));
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const Atom& a) { return std::abs(a.scale) == 0.0; }),
              out.end());
    std::sort(out.begin(), out.end(), [](const Atom& x, const Atom& y) {
        if (x.p != y.p) return x.p < y.p;
        if (x.q != y.q) return x.q < y.q;
        if (x.factors.size() != y.factors.size()) return x.factors.size() < y.factors.size();
        for (std::size_t i = 0; i < x.factors.size(); ++i) {
            if (x.factors[i].a != y.factors[i].a) return cplx_less(x.factors[i].a, y.factors[i].a);
            if (x.factors[i].beta != y.factors[i].beta) return x.factors[i].beta < y.factors[i].beta;
        }
        return false;
    });
    s.atoms = std::move(out);
    return s;
}

Atom atom_product(const Atom& x, const Atom& y) {
    Atom r;
    r.scale = x.scale * y.scale;
    r.p = x.p + y.p;
    r.q = x.q + y.q;
    r.factors = x.factors;
    r.factors.insert(r.factors.end(), y.factors.begin(), y.factors.end());
    return normalize_atom(std::move(r));
}

bool linear_polynomial(const AtomSum& s, Cplx* c, Cplx* d) {
    if (s.z_shift != 0 || s.atoms.empty() || s.atoms.size() > 2) return false;
    Cplx cc(0.0), dd(0.0);
    for (const auto& a : s.atoms) {
        if (!a.factors.empty() || a.q != 0 || a.p > 1) return false;
        if (a.p == 0) {
            if (cc != Cplx(0.0)) return false;
            cc = a.scale;
        } else {
            if (dd != Cplx(0.0)) return false;
            dd = a.scale;
        }
    }
    *c = cc;
    *d = dd;
    return true;
}

Atom linear_to_factor_atom(Cplx c, Cplx d) {
    Atom a;
    a.scale = c;
    a.factors.push_back({-d / c, -1.0});
    return a;
}

namespace {

// Fold c + d z into a (1 - a z) factor when that keeps |a| <= 1.
AtomSum fold_linear(const AtomSum& s) {
    Cplx c, d;
    if (!linear_polynomial(s, &c, &d)) return s;
    if (c == Cplx(0.0) || d == Cplx(0.0)) return s;
    if (std::abs(-d / c) > 1.0 + kPoleSlack) return s;
    return AtomSum{{linear_to_factor_atom(c, d)}, 0};
}

}  // namespace

AtomSum atom_sum_product(const AtomSum& x_in, const AtomSum& y_in) {
    const AtomSum x = fold_linear(x_in);
    const AtomSum y = fold_linear(y_in);
    AtomSum r;
    r.z_shift = x.z_shift + y.z_shift;
    r.atoms.reserve(x.atoms.size() * y.atoms.size());
    for (const auto& ax : x.atoms)
        for (const auto& ay : y.atoms) r.atoms.push_back(atom_product(ax, ay));
    if (r.atoms.size() > 4096) throw AlgebraError("atom sum product too large");
    return normalize(std::move(r));
}

AtomSum atom_sum_scale(AtomSum s, Cplx c) {
    for (auto& a : s.atoms) a.scale *= c;
    return normalize(std::move(s));
}

AtomSum atom_sum_add(const AtomSum& x, const AtomSum& y) {
    AtomSum r;
    r.z_shift = std::max(x.z_shift, y.z_shift);
    auto lift = [&r](const AtomSum& s) {
        const unsigned d = r.z_shift - s.z_shift;
        for (Atom a : s.atoms) {
            a.p += d;
            r.atoms.push_back(std::move(a));
        }
    };
    lift(x);
    lift(y);
    return normalize(std::move(r));
}

AtomSum atom_sum_ipow(const AtomSum& s, long k) {
    if (k == 0) return normalize(AtomSum{{Atom{}}, 0});
    if (k > 0) {
        if (k > 64) throw AlgebraError("integer power too large");
        AtomSum r = s;
        for (long i = 1; i < k; ++i) r = atom_sum_product(r, s);
        return r;
    }
    // Negative power: the base must normalize to a single invertible atom.
    AtomSum n = normalize(s);
    Cplx c, d;
    if (n.atoms.size() != 1 && linear_polynomial(n, &c, &d) && c != Cplx(0.0) && d != Cplx(0.0)) {
        if (std::abs(-d / c) > 1.0 + kPoleSlack)
            throw PoleError("pole inside the closed unit disc");
        n = AtomSum{{linear_to_factor_atom(c, d)}, 0};
    }
    if (n.z_shift != 0 || n.atoms.size() != 1 || n.atoms[0].p != 0 || n.atoms[0].q != 0)
        throw AlgebraError("only a single pole-factor atom can be raised to a negative power");
    Atom inv = n.atoms[0];
    inv.scale = Cplx(1.0) / inv.scale;
    for (auto& f : inv.factors) f.beta = -f.beta;
    AtomSum r{{normalize_atom(std::move(inv))}, 0};
    return atom_sum_ipow(r, -k);
}

Cplx atom_evaluate(const Atom& a, Cplx z) {
    Cplx v = a.scale;
    for (unsigned i = 0; i < a.p; ++i) v *= z;
    for (const auto& f : a.factors) {
        const Cplx w = Cplx(1.0) - f.a * z;
        if (is_poly_factor(f)) {
            for (long i = 0; i < static_cast<long>(-f.beta); ++i) v *= w;
        } else {
            v *= std::pow(w, -f.beta);
        }
    }
    if (a.q > 0) {
        const Cplx lg = -std::log(Cplx(1.0) - z);
        for (unsigned i = 0; i < a.q; ++i) v *= lg;
    }
    return v;
}

Cplx atom_sum_evaluate_no_shift(const AtomSum& s, Cplx z) {
    CompensatedSum acc;
    for (const auto& a : s.atoms) acc.add(atom_evaluate(a, z));
    return acc.value();
}

Series atom_sum_series(const AtomSum& s) {
    if (s.atoms.empty()) return series_from_polynomial({Cplx(0.0)});
    std::vector<Series> terms;
    std::vector<Cplx> scales;
    terms.reserve(s.atoms.size());
    for (const auto& a : s.atoms) {
        terms.push_back(atom_series(a));
        scales.push_back(Cplx(1.0));  // scale is already inside the atom series
    }
    Series sum = terms.size() == 1 ? terms[0]
                                   : series_linear_combination(std::move(scales), std::move(terms));
    if (s.z_shift > 0) sum = series_shift(sum, -static_cast<long>(s.z_shift));
    return sum;
}

Cplx atom_sum_constant_term(const AtomSum& s) {
    if (s.z_shift == 0) {
        // Factors contribute 1 and log^q contributes 0 at z = 0, so the
        // constant term is exactly the sum of scales of the (p=0, q=0) atoms.
        CompensatedSum acc;
        for (const auto& a : s.atoms)
            if (a.p == 0 && a.q == 0) acc.add(a.scale);
        return acc.value();
    }
    // With a shift the constant term is a genuine series coefficient.
    return atom_sum_series(s).coeff(0);
}

namespace {

// d/dz of a single atom (no shift): product rule over the monomial, each
// pole factor, and the log factor (log' = (1-z)^{-1}).
std::vector<Atom> atom_derivative(const Atom& a) {
    std::vector<Atom> out;
    if (a.p > 0) {
        Atom t = a;
        t.scale *= static_cast<double>(a.p);
        t.p -= 1;
        out.push_back(std::move(t));
    }
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        Atom t = a;
        t.scale *= a.factors[i].beta * a.factors[i].a;
        t.factors[i].beta += 1.0;
        out.push_back(std::move(t));
    }
    if (a.q > 0) {
        Atom t = a;
        t.scale *= static_cast<double>(a.q);
        t.q -= 1;
        t.factors.push_back({Cplx(1.0), 1.0});
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

AtomSum atom_sum_derivative(const AtomSum& s) {
    AtomSum deriv;  // derivative of the unshifted sum
    for (const auto& a : s.atoms) {
        auto terms = atom_derivative(a);
        deriv.atoms.insert(deriv.atoms.end(), terms.begin(), terms.end());
    }
    if (s.z_shift == 0) return normalize(std::move(deriv));
    // (A / z^s)' = (z A' - s A) / z^{s+1}
    AtomSum out;
    out.z_shift = s.z_shift + 1;
    for (Atom a : deriv.atoms) {
        ++a.p;
        out.atoms.push_back(std::move(a));
    }
    for (Atom a : s.atoms) {
        a.scale *= -static_cast<double>(s.z_shift);
        out.atoms.push_back(std::move(a));
    }
    return normalize(std::move(out));
}

std::string atom_sum_print(const AtomSum& s) {
    const AtomSum n = normalize(s);
    if (n.atoms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& a : n.atoms) {
        Cplx sc = a.scale;
        std::string sign;
        if (first) {
            // Fold a real negative scale into a leading "0-".
            if (sc.imag() == 0.0 && sc.real() < 0.0) {
                out += "0-";
                sc = -sc;
            }
        } else {
            if (sc.imag() == 0.0 && sc.real() < 0.0) {
                sign = "-";
                sc = -sc;
            } else {
                sign = "+";
            }
            out += sign;
        }
        std::vector<std::string> parts;
        const bool unit_scale = (sc == Cplx(1.0));
        if (!unit_scale) parts.push_back(fmt_scale(sc));
        for (unsigned i = 0; i < a.p; ++i) parts.push_back("z");
        for (const auto& f : a.factors) parts.push_back(fmt_factor(f));
        for (unsigned i = 0; i < a.q; ++i) parts.push_back("log1z");
        if (parts.empty()) parts.push_back(fmt_real(1.0));
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) out += "*";
            out += parts[i];
        }
        first = false;
    }
    if (n.z_shift > 0)
        throw AlgebraError("a z-shifted model has no expression form; print the unshifted sum");
    return out;
}

}  // namespace cesaro
