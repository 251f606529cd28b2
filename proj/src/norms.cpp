#include "cesaro/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cesaro {

namespace {

constexpr double kPi = std::numbers::pi;

double golden_max(double lo, double hi, const std::function<double(double)>& fn, int iters = 48) {
    const double inv_phi = 0.6180339887498949;
    double a = lo, b = hi;
    double x1 = b - inv_phi * (b - a);
    double x2 = a + inv_phi * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    for (int i = 0; i < iters && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = fn(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = fn(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

enum class AngleStrategy { kAxis, kNegativeAxis, kHalfCircle, kFullCircle };

struct ProbePlan {
    AngleStrategy strategy;
    std::vector<double> mandatory;  // always-probed angles
};

ProbePlan make_plan(const FunctionModel& f) {
    ProbePlan plan;
    plan.mandatory = {0.0, kPi};
    if (f.is_atoms()) {
        for (const auto& atom : f.atoms().atoms)
            for (const auto& fac : atom.factors)
                if (std::abs(std::abs(fac.a) - 1.0) < 1e-9 && fac.beta > 0.0)
                    plan.mandatory.push_back(-std::arg(fac.a));
    }
    switch (f.stream().signature_upto(511)) {
        case CoeffSignature::kZero:
        case CoeffSignature::kNonNegative:
        case CoeffSignature::kNonPositive:
            plan.strategy = AngleStrategy::kAxis;
            break;
        case CoeffSignature::kAlternatingPos:
        case CoeffSignature::kAlternatingNeg:
            plan.strategy = AngleStrategy::kNegativeAxis;
            break;
        case CoeffSignature::kReal:
            plan.strategy = AngleStrategy::kHalfCircle;
            // real coefficients: the profile is conjugation-symmetric
            for (auto& t : plan.mandatory) t = std::abs(t);
            break;
        default:
            plan.strategy = AngleStrategy::kFullCircle;
            break;
    }
    return plan;
}

struct RadiusMax {
    double m = 0.0;        // weighted max (1-r)^gamma |f|
    double theta = 0.0;
    bool reliable = true;
    bool angle_converged = true;
    int angles_used = 1;
};

class NormProbe {
public:
    NormProbe(const FunctionModel& f, double gamma, const GridOptions& opts)
        : f_(f), gamma_(gamma), opts_(opts), plan_(make_plan(f)) {
        opts_.angles_init = std::max(4, opts_.angles_init);
        opts_.angles_max = std::max(opts_.angles_init, opts_.angles_max);
        eval_opts_.coeff_budget = opts.coeff_budget;
    }

    // |f| at r e^{i theta}, with the budget flag accumulated into *reliable.
    // Scouting evaluations only need to resolve the weighted value against
    // the running max; the final estimate is re-evaluated tightly.
    double modulus(double r, double theta, bool* reliable, bool tight = false) {
        eval_opts_.r_max = std::max(0.99995, r);
        const double weight = std::pow(1.0 - r, gamma_);
        double tol = opts_.eval_tol;
        if (!tight) tol = std::max(tol, 1e-4 * best_weighted_);
        tol /= std::max(weight, 1e-300);
        EvalResult e = evaluate(f_, std::polar(r, theta), tol, eval_opts_);
        if (e.budget_exceeded && reliable) *reliable = false;
        const double v = std::abs(e.value);
        best_weighted_ = std::max(best_weighted_, weight * v);
        return v;
    }

    RadiusMax weighted_max_on_circle(double r) {
        RadiusMax out;
        const double weight = std::pow(1.0 - r, gamma_);
        auto probe = [&](double theta) { return modulus(r, theta, &out.reliable); };

        double best = 0.0, best_theta = 0.0;
        auto consider = [&](double theta) {
            const double v = probe(theta);
            if (v > best) {
                best = v;
                best_theta = theta;
            }
        };

        if (plan_.strategy == AngleStrategy::kAxis) {
            consider(0.0);
        } else if (plan_.strategy == AngleStrategy::kNegativeAxis) {
            consider(kPi);
        } else {
            for (double t : plan_.mandatory) consider(t);
            // Nested levels: theta = pi k / n on [0, pi] (k = 0..n), or
            // 2 pi k / n on the full circle; doubling n only adds odd k.
            const bool half = plan_.strategy == AngleStrategy::kHalfCircle;
            const double span = half ? kPi : 2.0 * kPi;
            int n = opts_.angles_init;
            double prev = -1.0;
            bool first_level = true;
            while (true) {
                const int k_hi = half ? n : n - 1;
                for (int k = 0; k <= k_hi; ++k) {
                    if (!first_level && k % 2 == 0) continue;  // already probed
                    consider(span * k / n);
                }
                out.angles_used = n;
                if (prev >= 0.0 && best <= prev * (1.0 + opts_.rel_tol)) break;
                if (n >= opts_.angles_max) {
                    if (prev >= 0.0 && best > prev * (1.0 + opts_.rel_tol)) out.angle_converged = false;
                    break;
                }
                prev = best;
                n *= 2;
                first_level = false;
            }
            if (opts_.refine && best > 0.0) {
                const double step = span / out.angles_used;
                const double t = golden_max(best_theta - step, best_theta + step, probe);
                consider(t);
            }
        }
        out.m = weight * best;
        out.theta = best_theta;
        return out;
    }

    const ProbePlan& plan() const { return plan_; }

private:
    const FunctionModel& f_;
    double gamma_;
    GridOptions opts_;
    ProbePlan plan_;
    EvalOptions eval_opts_;
    double best_weighted_ = 0.0;
};

bool is_zero_model(const FunctionModel& f) {
    return f.is_atoms() && f.atoms().atoms.empty();
}

}  // namespace

std::vector<double> default_radii(int j_max) {
    std::vector<double> radii;
    radii.reserve(static_cast<std::size_t>(j_max) + 1);
    for (int j = 0; j <= j_max; ++j) radii.push_back(1.0 - std::exp2(-j / 4.0));
    return radii;
}

double monomial_norm(unsigned k, double gamma) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    if (k == 0) return 1.0;
    const double kk = static_cast<double>(k);
    // sup_r (1-r)^gamma r^k at r = k/(k+gamma)
    return std::exp(gamma * std::log(gamma) + kk * std::log(kk) -
                    (kk + gamma) * std::log(kk + gamma));
}

NormEstimate weighted_sup_norm(const FunctionModel& f, double gamma, const GridOptions& opts) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    NormEstimate est;
    if (is_zero_model(f)) {
        est.stable = true;
        est.radial_resolution = 1;
        est.angular_resolution = 1;
        return est;
    }

    NormProbe probe(f, gamma, opts);
    const std::vector<double> radii = default_radii(opts.j_max);

    double best = -1.0, best_r = 0.0, best_theta = 0.0;
    double best_early = -1.0;  // best over the ladder minus the last 4 rungs
    bool reliable_all = true, angles_ok = true;
    int max_angles = 1;
    for (std::size_t j = 0; j < radii.size(); ++j) {
        RadiusMax rm = probe.weighted_max_on_circle(radii[j]);
        reliable_all = reliable_all && rm.reliable;
        angles_ok = angles_ok && rm.angle_converged;
        max_angles = std::max(max_angles, rm.angles_used);
        if (rm.m > best) {
            best = rm.m;
            best_r = radii[j];
            best_theta = rm.theta;
        }
        if (j + 4 < radii.size() && rm.m > best_early) best_early = rm.m;
    }
    // Radial stability is a ladder property: did the last refinement of the
    // radius schedule still move the max? Local polish below only sharpens
    // the value at an already-located interior peak.
    const bool radially_settled = best_early > 0.0 && best <= best_early * (1.0 + 1e-3);

    if (opts.refine && best > 0.0) {
        // Radial polish around the best rung at the best angle.
        const std::size_t jb = static_cast<std::size_t>(
            std::find(radii.begin(), radii.end(), best_r) - radii.begin());
        const double lo = jb > 0 ? radii[jb - 1] : 0.0;
        const double hi = jb + 1 < radii.size() ? radii[jb + 1] : radii[jb];
        bool ok = true;
        auto weighted = [&](double r) {
            return std::pow(1.0 - r, gamma) * probe.modulus(r, best_theta, &ok);
        };
        const double r_star = golden_max(lo, hi, weighted);
        const double v = weighted(r_star);
        if (v > best) {
            best = v;
            best_r = r_star;
        }
        reliable_all = reliable_all && ok;
    }

    if (best > 0.0) {
        // The scouting passes may run at a relaxed tolerance; pin the reported
        // value by a tight evaluation at the located argmax.
        bool ok = true;
        best = std::pow(1.0 - best_r, gamma) * probe.modulus(best_r, best_theta, &ok, true);
        reliable_all = reliable_all && ok;
    }

    est.value = best;
    est.argmax_z = std::polar(best_r, best_theta);
    est.radial_resolution = static_cast<int>(radii.size());
    est.angular_resolution = max_angles;
    est.stable = reliable_all && angles_ok && radially_settled;
    return est;
}

std::vector<ProfileRow> boundary_profile(const FunctionModel& f, double gamma,
                                         const std::vector<double>& radii,
                                         const GridOptions& opts) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    std::vector<ProfileRow> rows;
    rows.reserve(radii.size());
    if (is_zero_model(f)) {
        for (double r : radii) rows.push_back({r, 0.0, true});
        return rows;
    }
    NormProbe probe(f, gamma, opts);
    for (double r : radii) {
        if (r < 0.0 || r >= 1.0) throw DomainError("profile radii must lie in [0,1)");
        RadiusMax rm = probe.weighted_max_on_circle(r);
        rows.push_back({r, rm.m, rm.reliable});
    }
    return rows;
}

bool GridOptions::set(const std::string& key, const std::string& value) {
    try {
        if (key == "j_max") j_max = std::stoi(value);
        else if (key == "angles_init") angles_init = std::stoi(value);
        else if (key == "angles_max") angles_max = std::stoi(value);
        else if (key == "rel_tol") rel_tol = std::stod(value);
        else if (key == "eval_tol") eval_tol = std::stod(value);
        else if (key == "coeff_budget") coeff_budget = static_cast<std::size_t>(std::stoull(value));
        else if (key == "refine") refine = value == "1" || value == "true";
        else if (key == "slope_dead_zone") slope_dead_zone = std::stod(value);
        else if (key == "trend_window") trend_window = std::stoi(value);
        else return false;
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

std::string GridOptions::echo() const {
    std::ostringstream os;
    os << "j_max=" << j_max << " angles_init=" << angles_init << " angles_max=" << angles_max
       << " rel_tol=" << rel_tol << " eval_tol=" << eval_tol << " coeff_budget=" << coeff_budget
       << " refine=" << (refine ? 1 : 0) << " slope_dead_zone=" << slope_dead_zone
       << " trend_window=" << trend_window;
    return os.str();
}

// --- membership ---------------------------------------------------------------

std::string SpaceRef::name() const {
    std::ostringstream g;
    g << gamma;
    switch (kind) {
        case SpaceKind::kGrowth: return "A^-" + g.str();
        case SpaceKind::kLittleGrowth: return "A0^-" + g.str();
        case SpaceKind::kOptimalDomain: return "[C,A^-" + g.str() + "]";
        case SpaceKind::kLittleOptimalDomain: return "[C,A0^-" + g.str() + "]";
    }
    return "?";
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::kIn: return "in";
        case Verdict::kOut: return "out";
        case Verdict::kIndeterminate: return "indeterminate";
    }
    return "?";
}

namespace {

// Dominant boundary growth of an atom sum: per boundary direction d the
// lexicographic max over atoms of (pole exponent beta, log power at d = 1),
// with the leading coefficients of tied atoms summed to detect cancellation.
struct DirectionGrowth {
    Cplx direction;
    double beta;
    int log_power;
};

std::optional<std::vector<DirectionGrowth>> analytic_growth(const AtomSum& s) {
    struct Record {
        Cplx d;
        double beta;
        int q;
        Cplx lead;
    };
    std::vector<Record> records;
    for (const auto& atom : s.atoms) {
        // Growth contributions of this atom: one per boundary pole factor,
        // plus the log singularity at d = 1.
        struct Local {
            Cplx d;
            double beta;
            int q;
        };
        std::vector<Local> locals;
        for (const auto& fac : atom.factors) {
            if (std::abs(std::abs(fac.a) - 1.0) > 1e-12 || fac.beta <= 0.0) continue;
            const Cplx d = std::conj(fac.a);
            const int q_here = (atom.q > 0 && std::abs(d - Cplx(1.0)) < 1e-12)
                                   ? static_cast<int>(atom.q)
                                   : 0;
            locals.push_back({d, fac.beta, q_here});
        }
        if (atom.q > 0) {
            bool has_pole_at_one = false;
            for (const auto& l : locals)
                if (std::abs(l.d - Cplx(1.0)) < 1e-12) has_pole_at_one = true;
            if (!has_pole_at_one) locals.push_back({Cplx(1.0), 0.0, static_cast<int>(atom.q)});
        }
        for (const auto& l : locals) {
            // Leading coefficient: the atom with its singular part at l.d removed,
            // evaluated at z = l.d.
            Cplx lead = atom.scale * std::pow(l.d, static_cast<double>(atom.p));
            for (const auto& fac : atom.factors) {
                if (std::abs(std::abs(fac.a) - 1.0) <= 1e-12 &&
                    std::abs(std::conj(fac.a) - l.d) < 1e-12)
                    continue;  // the singular factor itself
                lead *= std::pow(Cplx(1.0) - fac.a * l.d, -fac.beta);
            }
            if (atom.q > 0 && l.q == 0) {
                // log factor is regular at this direction (d != 1)
                lead *= std::pow(-std::log(Cplx(1.0) - l.d), static_cast<double>(atom.q));
            }
            records.push_back({l.d, l.beta, l.q, lead});
        }
    }

    // Group by direction.
    std::vector<DirectionGrowth> out;
    std::vector<bool> used(records.size(), false);
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (used[i]) continue;
        std::vector<std::size_t> group{i};
        used[i] = true;
        for (std::size_t j = i + 1; j < records.size(); ++j)
            if (!used[j] && std::abs(records[j].d - records[i].d) < 1e-9) {
                group.push_back(j);
                used[j] = true;
            }
        double beta_max = 0.0;
        int q_max = 0;
        for (std::size_t j : group) {
            if (records[j].beta > beta_max + 1e-12 ||
                (std::abs(records[j].beta - beta_max) <= 1e-12 && records[j].q > q_max)) {
                beta_max = records[j].beta;
                q_max = records[j].q;
            }
        }
        if (beta_max <= 1e-12 && q_max == 0) continue;
        // Cancellation test among the atoms achieving the max.
        Cplx lead_sum(0.0);
        double lead_abs = 0.0;
        for (std::size_t j : group) {
            if (std::abs(records[j].beta - beta_max) <= 1e-12 && records[j].q == q_max) {
                lead_sum += records[j].lead;
                lead_abs += std::abs(records[j].lead);
            }
        }
        if (std::abs(lead_sum) <= 1e-10 * lead_abs) return std::nullopt;  // cancels: go numeric
        if (beta_max <= 1e-12) continue;  // pure log growth never restricts gamma > 0
        out.push_back({records[i].d, beta_max, q_max});
    }
    return out;
}

MembershipVerdict make_analytic(SpaceKind kind, double gamma, Verdict v, double beta, int q,
                                const std::string& note) {
    MembershipVerdict mv;
    mv.space = {kind, gamma};
    mv.verdict = v;
    mv.method = Method::kAnalytic;
    mv.evidence.pole_exponent = beta;
    mv.evidence.log_power = q;
    mv.evidence.note = note;
    return mv;
}

}  // namespace

MembershipPair classify_membership_numeric(const FunctionModel& f, double gamma,
                                           const GridOptions& opts) {
    const std::vector<double> radii = default_radii(opts.j_max);
    const std::vector<ProfileRow> rows = boundary_profile(f, gamma, radii, opts);

    std::vector<const ProfileRow*> reliable;
    for (const auto& row : rows)
        if (row.reliable) reliable.push_back(&row);

    MembershipPair pair;
    pair.big.space = {SpaceKind::kGrowth, gamma};
    pair.little.space = {SpaceKind::kLittleGrowth, gamma};
    pair.big.method = pair.little.method = Method::kNumeric;

    double overall_max = 0.0;
    for (const auto& row : rows) overall_max = std::max(overall_max, row.m);
    if (overall_max == 0.0) {  // the zero function
        pair.big.verdict = pair.little.verdict = Verdict::kIn;
        pair.big.evidence.note = pair.little.evidence.note = "profile identically zero";
        return pair;
    }

    const std::size_t window = static_cast<std::size_t>(std::max(3, opts.trend_window));
    if (reliable.size() < 5) {
        pair.big.verdict = pair.little.verdict = Verdict::kIndeterminate;
        pair.big.evidence.note = pair.little.evidence.note = "insufficient reliable radii";
        return pair;
    }
    const std::size_t lo = reliable.size() > window ? reliable.size() - window : 0;

    // Least-squares slope of log m against log(1/(1-r)).
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    std::vector<double> wr, wm;
    for (std::size_t i = lo; i < reliable.size(); ++i) {
        const double x = std::log(1.0 / (1.0 - reliable[i]->r));
        const double y = std::log(std::max(reliable[i]->m, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
        wr.push_back(reliable[i]->r);
        wm.push_back(reliable[i]->m);
    }
    const double denom = static_cast<double>(n) * sxx - sx * sx;
    const double slope = denom != 0.0 ? (static_cast<double>(n) * sxy - sx * sy) / denom : 0.0;

    bool inc = true, dec = true;
    for (std::size_t i = 1; i < wm.size(); ++i) {
        if (wm[i] < wm[i - 1] * 0.99) inc = false;
        if (wm[i] > wm[i - 1] * 1.01) dec = false;
    }
    const bool monotone = inc || dec;

    auto fill = [&](MembershipVerdict& mv, Verdict v) {
        mv.verdict = v;
        mv.evidence.slope = slope;
        mv.evidence.radii = wr;
    };
    if (slope < -opts.slope_dead_zone) {
        fill(pair.big, Verdict::kIn);
        fill(pair.little, Verdict::kIn);
    } else if (slope > opts.slope_dead_zone) {
        fill(pair.big, Verdict::kOut);
        fill(pair.little, Verdict::kOut);
    } else if (monotone) {
        fill(pair.big, Verdict::kIn);
        fill(pair.little, Verdict::kOut);
        pair.big.evidence.note = pair.little.evidence.note = "bounded, non-vanishing profile";
    } else {
        fill(pair.big, Verdict::kIndeterminate);
        fill(pair.little, Verdict::kIndeterminate);
        pair.big.evidence.note = pair.little.evidence.note = "slope in dead zone, profile non-monotone";
    }
    return pair;
}

MembershipPair classify_membership(const FunctionModel& f, double gamma, const GridOptions& opts) {
    if (gamma <= 0.0) throw DomainError("gamma must be positive");
    if (f.is_atoms()) {
        const auto growth = analytic_growth(f.atoms());
        if (growth) {
            const double tol = 1e-12 * std::max(1.0, gamma);
            double beta_w = 0.0;  // worst growth
            int q_w = 0;
            bool big_in = true, little_in = true;
            for (const auto& g : *growth) {
                const bool eq = std::abs(g.beta - gamma) <= tol;
                if (g.beta > gamma + tol || (eq && g.log_power > 0)) big_in = false;
                if (!(g.beta < gamma - tol)) little_in = false;
                if (g.beta > beta_w || (g.beta == beta_w && g.log_power > q_w)) {
                    beta_w = g.beta;
                    q_w = g.log_power;
                }
            }
            MembershipPair pair;
            std::ostringstream note;
            note << "dominant boundary exponent " << beta_w
                 << (q_w > 0 ? " with log power " + std::to_string(q_w) : "") << " vs gamma "
                 << gamma;
            pair.big = make_analytic(SpaceKind::kGrowth, gamma,
                                     big_in ? Verdict::kIn : Verdict::kOut, beta_w, q_w, note.str());
            pair.little = make_analytic(SpaceKind::kLittleGrowth, gamma,
                                        little_in ? Verdict::kIn : Verdict::kOut, beta_w, q_w,
                                        note.str());
            return pair;
        }
    }
    return classify_membership_numeric(f, gamma, opts);
}

}  // namespace cesaro
