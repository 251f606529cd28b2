#include "cesaro/model.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

FunctionModel::FunctionModel(AtomSum atoms)
    : rep_(AtomRep{normalize(std::move(atoms)), std::make_shared<SeriesBox>()}) {}

FunctionModel::FunctionModel(GeneratorSeries gen) : rep_(std::move(gen)) {}

const std::optional<double>& FunctionModel::growth_order() const {
    static const std::optional<double> none;
    if (auto* g = std::get_if<GeneratorSeries>(&rep_)) return g->growth_order;
    return none;
}

Series FunctionModel::stream() const {
    if (auto* g = std::get_if<GeneratorSeries>(&rep_)) return g->stream;
    const auto& rep = std::get<AtomRep>(rep_);
    std::call_once(rep.box->once, [&rep] { rep.box->series = atom_sum_series(rep.sum); });
    return rep.box->series;
}

FunctionModel model_constant(Cplx c) {
    Atom a;
    a.scale = c;
    return FunctionModel(AtomSum{{a}, 0});
}

FunctionModel model_monomial(unsigned k, Cplx scale) {
    Atom a;
    a.scale = scale;
    a.p = k;
    return FunctionModel(AtomSum{{a}, 0});
}

FunctionModel model_polynomial(std::vector<Cplx> coeffs) {
    AtomSum s;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (std::abs(coeffs[k]) == 0.0) continue;
        Atom a;
        a.scale = coeffs[k];
        a.p = static_cast<unsigned>(k);
        s.atoms.push_back(a);
    }
    return FunctionModel(std::move(s));
}

FunctionModel model_phi() { return model_pole(1.0); }

FunctionModel model_pole(double beta) {
    Atom a;
    a.factors.push_back({Cplx(1.0), beta});
    return FunctionModel(AtomSum{{a}, 0});
}

FunctionModel model_eigenfunction(unsigned m) {
    Atom a;
    a.p = m - 1;
    a.factors.push_back({Cplx(1.0), static_cast<double>(m)});
    return FunctionModel(AtomSum{{a}, 0});
}

FunctionModel model_from_generator(std::function<Cplx(std::size_t)> fn,
                                   std::optional<double> growth_order) {
    return FunctionModel(GeneratorSeries{series_from_generator(std::move(fn)), growth_order});
}

std::vector<Cplx> coefficients(const FunctionModel& f, std::size_t n_max) {
    return f.stream().coeffs(n_max);
}

namespace {

// Adaptive partial summation with the empirical-ratio tail bound: rho is the
// largest per-step magnitude ratio over the recent nonzero terms; when
// rho < 1 the tail is bounded by last * rho / (1 - rho).
EvalResult sum_series(const Series& s, Cplx z, double tol, const EvalOptions& opts) {
    EvalResult out;
    if (std::abs(z) == 0.0) {
        out.value = s.coeff(0);
        out.terms = 1;
        return out;
    }
    CompensatedSum acc;
    const double r = std::abs(z);
    const std::optional<std::size_t> fin = s.finite_degree();
    const std::size_t hard_stop = fin ? *fin : opts.coeff_budget;

    // Recent nonzero term magnitudes with their indices, newest last.
    constexpr int kWindow = 16;
    double mags[kWindow];
    std::size_t idxs[kWindow];
    int have = 0;
    std::size_t zero_run = 0;

    Cplx zn(1.0);
    std::size_t block = 64;
    std::size_t n = 0;
    std::vector<Cplx> buf;
    while (true) {
        const std::size_t hi = std::min(hard_stop, n + block - 1);
        if (hi >= n) {
            buf.resize(hi - n + 1);
            s.node()->copy_range(n, hi, buf.data());
            for (std::size_t k = n; k <= hi; ++k) {
                if ((k & 4095u) == 0 && k > 0)
                    zn = std::pow(r, double(k)) * std::polar(1.0, std::arg(z) * double(k));
                const Cplx term = buf[k - n] * zn;
                if (!is_finite(term)) throw EvaluationError("non-finite term in series evaluation");
                acc.add(term);
                const double m = std::abs(term);
                if (m > 0.0) {
                    if (have == kWindow) {
                        std::copy(mags + 1, mags + kWindow, mags);
                        std::copy(idxs + 1, idxs + kWindow, idxs);
                        --have;
                    }
                    mags[have] = m;
                    idxs[have] = k;
                    ++have;
                    zero_run = 0;
                } else {
                    ++zero_run;
                }
                zn *= z;
            }
            n = hi + 1;
        }
        out.terms = n;
        if (fin && n > *fin) {  // exhausted an exact polynomial
            out.value = acc.value();
            out.tail_bound = 0.0;
            return out;
        }
        if (zero_run >= 256 || (have == 0 && n >= 4096)) {
            // A long run of vanishing terms: the series underflowed (or is
            // identically zero); nothing left to sum at this radius.
            out.value = acc.value();
            out.tail_bound = 0.0;
            return out;
        }
        // Ratio estimate over the window (gap-adjusted geometric rate).
        if (have >= 4) {
            double rho = 0.0;
            for (int i = 0; i + 1 < have; ++i) {
                const double steps = static_cast<double>(idxs[i + 1] - idxs[i]);
                rho = std::max(rho, std::pow(mags[i + 1] / mags[i], 1.0 / steps));
            }
            if (rho < 1.0) {
                const double tail = mags[have - 1] * rho / (1.0 - rho);
                if (tail < tol) {
                    out.value = acc.value();
                    out.tail_bound = tail;
                    return out;
                }
            }
        }
        if (n >= opts.coeff_budget) {
            out.value = acc.value();
            out.tail_bound = have ? mags[have - 1] : 0.0;
            out.budget_exceeded = true;
            return out;
        }
        block = std::min<std::size_t>(block * 2, 65536);
    }
}

}  // namespace

EvalResult evaluate(const FunctionModel& f, Cplx z, double tol, const EvalOptions& opts) {
    if (!is_finite(z) || std::abs(z) >= 1.0)
        throw DomainError("evaluation point must lie in the open unit disc");
    if (f.is_atoms()) {
        const AtomSum& s = f.atoms();
        // Near the origin a shifted sum divides by a tiny z; use the series.
        if (s.z_shift > 0 && std::abs(z) < 1.0 / 256.0)
            return sum_series(f.stream(), z, tol, opts);
        EvalResult out;
        Cplx v = atom_sum_evaluate_no_shift(s, z);
        for (unsigned i = 0; i < s.z_shift; ++i) v /= z;
        out.value = v;
        out.tail_bound = 1e-15 * std::abs(v);
        return out;
    }
    if (std::abs(z) > opts.r_max)
        throw DomainError("generator-series evaluation beyond r_max");
    return sum_series(f.stream(), z, tol, opts);
}

namespace {

std::optional<double> combined_growth(const FunctionModel& f, const FunctionModel& g) {
    if (f.growth_order() && g.growth_order())
        return std::max(*f.growth_order(), *g.growth_order());
    return std::nullopt;
}

}  // namespace

FunctionModel add(const FunctionModel& f, const FunctionModel& g) {
    if (f.is_atoms() && g.is_atoms())
        return FunctionModel(atom_sum_add(f.atoms(), g.atoms()));
    Series s = series_linear_combination({Cplx(1.0), Cplx(1.0)}, {f.stream(), g.stream()});
    return FunctionModel(GeneratorSeries{s, combined_growth(f, g)});
}

FunctionModel scale(const FunctionModel& f, Cplx c) {
    if (f.is_atoms()) return FunctionModel(atom_sum_scale(f.atoms(), c));
    Series s = series_linear_combination({c}, {f.stream()});
    return FunctionModel(GeneratorSeries{s, f.growth_order()});
}

FunctionModel multiply_by_phi(const FunctionModel& f) {
    if (f.is_atoms()) {
        AtomSum s = f.atoms();
        for (auto& a : s.atoms) a.factors.push_back({Cplx(1.0), 1.0});
        return FunctionModel(normalize(std::move(s)));
    }
    return FunctionModel(GeneratorSeries{series_prefix_sum(f.stream()),
                                         f.growth_order() ? std::optional<double>(*f.growth_order() + 1.0)
                                                          : std::nullopt});
}

FunctionModel multiply_by_z(const FunctionModel& f) {
    if (f.is_atoms()) {
        AtomSum s = f.atoms();
        if (s.z_shift > 0)
            --s.z_shift;
        else
            for (auto& a : s.atoms) ++a.p;
        return FunctionModel(std::move(s));
    }
    return FunctionModel(GeneratorSeries{series_shift(f.stream(), +1), f.growth_order()});
}

FunctionModel divide_by_z(const FunctionModel& f) {
    if (f.is_atoms()) {
        const AtomSum& s = f.atoms();
        const Cplx c0 = atom_sum_constant_term(s);
        const double tol = s.z_shift == 0 ? 0.0 : 1e-12;
        if (std::abs(c0) > tol)
            throw DomainError("divide_by_z requires f(0) = 0");
        AtomSum r = s;
        ++r.z_shift;
        return FunctionModel(std::move(r));
    }
    const Cplx c0 = f.stream().coeff(0);
    if (std::abs(c0) > 1e-12) throw DomainError("divide_by_z requires f(0) = 0");
    return FunctionModel(GeneratorSeries{series_shift(f.stream(), -1), f.growth_order()});
}

}  // namespace cesaro
