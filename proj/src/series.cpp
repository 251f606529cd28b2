#include "cesaro/series.hpp"

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

// Tiny values are sign-neutral: compensated prefix sums leave residue of
// order eps * running-magnitude on coefficients that are exactly zero in
// exact arithmetic.
constexpr double kSignNeutralRel = 1e-13;

}  // namespace

Cplx SeriesNode::coeff(std::size_t n) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (memo_.size() <= n) extend(n);
    return memo_[n];
}

void SeriesNode::ensure(std::size_t n) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (memo_.size() <= n) extend(n);
}

void SeriesNode::copy_range(std::size_t from, std::size_t to, Cplx* out) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (memo_.size() <= to) extend(to);
    std::copy(memo_.begin() + static_cast<std::ptrdiff_t>(from),
              memo_.begin() + static_cast<std::ptrdiff_t>(to) + 1, out);
}

void SeriesNode::push(Cplx c) const {
    const std::size_t n = memo_.size();
    memo_.push_back(c);
    const double a = std::abs(c);
    if (a > max_abs_) max_abs_ = a;
    if (a == 0.0 || a <= kSignNeutralRel * max_abs_) return;  // sign-neutral
    if (c.imag() != 0.0 && std::abs(c.imag()) > kSignNeutralRel * a) {
        all_real_ = false;
        can_nonneg_ = can_nonpos_ = can_altpos_ = can_altneg_ = false;
        return;
    }
    const bool pos = c.real() > 0.0;
    if (pos) {
        can_nonpos_ = false;
        if (n % 2 == 0) can_altneg_ = false; else can_altpos_ = false;
    } else {
        can_nonneg_ = false;
        if (n % 2 == 0) can_altpos_ = false; else can_altneg_ = false;
    }
}

CoeffSignature SeriesNode::signature_upto(std::size_t n) const {
    std::lock_guard<std::mutex> lk(mu_);
    if (memo_.size() <= n) extend(n);
    if (max_abs_ == 0.0) return CoeffSignature::kZero;
    if (can_nonneg_) return CoeffSignature::kNonNegative;
    if (can_nonpos_) return CoeffSignature::kNonPositive;
    if (can_altpos_) return CoeffSignature::kAlternatingPos;
    if (can_altneg_) return CoeffSignature::kAlternatingNeg;
    if (all_real_) return CoeffSignature::kReal;
    return CoeffSignature::kComplex;
}

std::vector<Cplx> Series::coeffs(std::size_t n_max) const {
    std::vector<Cplx> out(n_max + 1);
    node_->copy_range(0, n_max, out.data());
    return out;
}

namespace {

class GeneratorNode final : public SeriesNode {
public:
    explicit GeneratorNode(std::function<Cplx(std::size_t)> fn) : fn_(std::move(fn)) {}

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            Cplx c = fn_(k);
            if (!is_finite(c)) throw EvaluationError("generator produced a non-finite coefficient");
            push(c);
        }
    }
    std::function<Cplx(std::size_t)> fn_;
};

class PolynomialNode final : public SeriesNode {
public:
    explicit PolynomialNode(std::vector<Cplx> c) : coeffs_(std::move(c)) {
        std::size_t deg = 0;
        for (std::size_t k = 0; k < coeffs_.size(); ++k)
            if (std::abs(coeffs_[k]) != 0.0) deg = k;
        finite_degree_ = deg;
    }

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k)
            push(k < coeffs_.size() ? coeffs_[k] : Cplx(0.0));
    }
    std::vector<Cplx> coeffs_;
};

class LinCombNode final : public SeriesNode {
public:
    LinCombNode(std::vector<Cplx> scales, std::vector<Series> terms)
        : scales_(std::move(scales)), terms_(std::move(terms)) {
        bool finite = true;
        std::size_t deg = 0;
        for (const auto& t : terms_) {
            if (auto d = t.finite_degree()) deg = std::max(deg, *d);
            else { finite = false; break; }
        }
        if (finite) finite_degree_ = deg;
    }

private:
    void extend(std::size_t n) const override {
        const std::size_t from = memo_.size();
        std::vector<std::vector<Cplx>> blocks(terms_.size(), std::vector<Cplx>(n - from + 1));
        for (std::size_t i = 0; i < terms_.size(); ++i)
            terms_[i].node()->copy_range(from, n, blocks[i].data());
        for (std::size_t k = from; k <= n; ++k) {
            CompensatedSum acc;
            for (std::size_t i = 0; i < terms_.size(); ++i)
                acc.add(scales_[i] * blocks[i][k - from]);
            push(acc.value());
        }
    }
    std::vector<Cplx> scales_;
    std::vector<Series> terms_;
};

class PoleFactorNode final : public SeriesNode {
public:
    PoleFactorNode(Cplx a, double beta) : a_(a), beta_(beta) {}

private:
    void extend(std::size_t n) const override {
        if (memo_.empty()) { push(Cplx(1.0)); state_ = Cplx(1.0); }
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            const double m = static_cast<double>(k - 1);
            // multiply before dividing: keeps integer-coefficient factors
            // (integer beta, a = +-1) exact up to 2^53
            state_ = state_ * a_ * (m + beta_) / (m + 1.0);
            push(state_);
        }
    }
    Cplx a_;
    double beta_;
    mutable Cplx state_{1.0};
};

class ProductNode final : public SeriesNode {
public:
    ProductNode(Series f, Series g) : f_(std::move(f)), g_(std::move(g)) {}

private:
    void extend(std::size_t n) const override {
        f_.node()->copy_range(0, n, grow(fbuf_, n));
        g_.node()->copy_range(0, n, grow(gbuf_, n));
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            CompensatedSum acc;
            for (std::size_t j = 0; j <= k; ++j) acc.add(fbuf_[j] * gbuf_[k - j]);
            push(acc.value());
        }
    }
    static Cplx* grow(std::vector<Cplx>& buf, std::size_t n) {
        buf.resize(n + 1);
        return buf.data();
    }
    Series f_, g_;
    mutable std::vector<Cplx> fbuf_, gbuf_;
};

class PolyProductNode final : public SeriesNode {
public:
    PolyProductNode(std::vector<Cplx> poly, Series f) : poly_(std::move(poly)), f_(std::move(f)) {
        if (auto d = f_.finite_degree()) finite_degree_ = *d + (poly_.empty() ? 0 : poly_.size() - 1);
    }

private:
    void extend(std::size_t n) const override {
        fbuf_.resize(n + 1);
        f_.node()->copy_range(0, n, fbuf_.data());
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            CompensatedSum acc;
            const std::size_t jmax = std::min(k, poly_.size() - 1);
            for (std::size_t j = 0; j <= jmax; ++j) acc.add(poly_[j] * fbuf_[k - j]);
            push(acc.value());
        }
    }
    std::vector<Cplx> poly_;
    Series f_;
    mutable std::vector<Cplx> fbuf_;
};

class ShiftNode final : public SeriesNode {
public:
    ShiftNode(Series f, long delta) : f_(std::move(f)), delta_(delta) {
        if (auto d = f_.finite_degree()) {
            const long nd = static_cast<long>(*d) + delta;
            finite_degree_ = nd >= 0 ? static_cast<std::size_t>(nd) : 0;
        }
    }

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            const long src = static_cast<long>(k) - delta_;
            push(src < 0 ? Cplx(0.0) : f_.coeff(static_cast<std::size_t>(src)));
        }
    }
    Series f_;
    long delta_;
};

class PrefixAverageNode final : public SeriesNode {
public:
    explicit PrefixAverageNode(Series f) : f_(std::move(f)) {}

private:
    void extend(std::size_t n) const override {
        const std::size_t from = memo_.size();
        buf_.resize(n - from + 1);
        f_.node()->copy_range(from, n, buf_.data());
        for (std::size_t k = from; k <= n; ++k) {
            sum_.add(buf_[k - from]);
            push(sum_.value() / static_cast<double>(k + 1));
        }
    }
    Series f_;
    mutable CompensatedSum sum_;
    mutable std::vector<Cplx> buf_;
};

class PrefixSumNode final : public SeriesNode {
public:
    explicit PrefixSumNode(Series f) : f_(std::move(f)) {}

private:
    void extend(std::size_t n) const override {
        const std::size_t from = memo_.size();
        buf_.resize(n - from + 1);
        f_.node()->copy_range(from, n, buf_.data());
        for (std::size_t k = from; k <= n; ++k) {
            sum_.add(buf_[k - from]);
            push(sum_.value());
        }
    }
    Series f_;
    mutable CompensatedSum sum_;
    mutable std::vector<Cplx> buf_;
};

class InversePrefixAverageNode final : public SeriesNode {
public:
    explicit InversePrefixAverageNode(Series g) : g_(std::move(g)) {}

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            const Cplx gk = g_.coeff(k);
            const Cplx gm = k == 0 ? Cplx(0.0) : g_.coeff(k - 1);
            push(static_cast<double>(k + 1) * gk - static_cast<double>(k) * gm);
        }
    }
    Series g_;
};

class DerivativeNode final : public SeriesNode {
public:
    explicit DerivativeNode(Series f) : f_(std::move(f)) {
        if (auto d = f_.finite_degree()) finite_degree_ = *d > 0 ? *d - 1 : 0;
    }
    const Series& child() const { return f_; }

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k)
            push(static_cast<double>(k + 1) * f_.coeff(k + 1));
    }
    Series f_;
};

class AntiderivativeNode final : public SeriesNode {
public:
    explicit AntiderivativeNode(Series f) : f_(std::move(f)) {
        if (auto d = f_.finite_degree()) finite_degree_ = *d + 1;
    }
    const Series& child() const { return f_; }

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k)
            push(k == 0 ? Cplx(0.0) : f_.coeff(k - 1) / static_cast<double>(k));
    }
    Series f_;
};

// f with the constant term dropped: J(D(f)) = f - f(0), exactly.
class DropConstantNode final : public SeriesNode {
public:
    explicit DropConstantNode(Series f) : f_(std::move(f)) {
        if (auto d = f_.finite_degree()) finite_degree_ = *d;
    }

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k)
            push(k == 0 ? Cplx(0.0) : f_.coeff(k));
    }
    Series f_;
};

class ResolventNode final : public SeriesNode {
public:
    ResolventNode(Series h, Cplx lambda) : h_(std::move(h)), lambda_(lambda) {}

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k) {
            const double inv = 1.0 / static_cast<double>(k + 1);
            const Cplx diag = lambda_ - inv;
            if (std::abs(diag) <= 1e-13 * std::max(1.0, std::abs(lambda_)))
                throw SingularDiagonal(k);
            const Cplx fk = (h_.coeff(k) + prefix_.value() * inv) / diag;
            push(fk);
            prefix_.add(fk);
        }
    }
    Series h_;
    Cplx lambda_;
    mutable CompensatedSum prefix_;
};

class TruncateNode final : public SeriesNode {
public:
    TruncateNode(Series f, std::size_t deg) : f_(std::move(f)), deg_(deg) { finite_degree_ = deg; }

private:
    void extend(std::size_t n) const override {
        for (std::size_t k = memo_.size(); k <= n; ++k)
            push(k <= deg_ ? f_.coeff(k) : Cplx(0.0));
    }
    Series f_;
    std::size_t deg_;
};

class BulkNode final : public SeriesNode {
public:
    explicit BulkNode(std::function<void(std::vector<Cplx>&, std::size_t)> fill)
        : fill_(std::move(fill)) {}

private:
    void extend(std::size_t n) const override {
        // Recompute the whole prefix; geometric growth amortizes recomputation.
        const std::size_t upto = std::max<std::size_t>(n, memo_.size() * 2 + 63);
        std::vector<Cplx> full;
        fill_(full, upto);
        // Re-push through the signature tracker from the current position;
        // earlier entries are unchanged (same fill, same prefix order).
        for (std::size_t k = memo_.size(); k <= n; ++k) push(full[k]);
        if (n < upto) {
            for (std::size_t k = n + 1; k <= upto; ++k) push(full[k]);
            // keep everything we paid for
        }
    }
    std::function<void(std::vector<Cplx>&, std::size_t)> fill_;
};

}  // namespace

SingularDiagonal::SingularDiagonal(std::size_t m_idx)
    : std::runtime_error("lambda equals the diagonal value 1/(m+1) at m = " + std::to_string(m_idx)),
      m(m_idx) {}

Series series_from_generator(std::function<Cplx(std::size_t)> fn) {
    return Series(std::make_shared<GeneratorNode>(std::move(fn)));
}
Series series_from_polynomial(std::vector<Cplx> coeffs) {
    return Series(std::make_shared<PolynomialNode>(std::move(coeffs)));
}
Series series_linear_combination(std::vector<Cplx> scales, std::vector<Series> terms) {
    return Series(std::make_shared<LinCombNode>(std::move(scales), std::move(terms)));
}
Series series_pole_factor(Cplx a, double beta) {
    return Series(std::make_shared<PoleFactorNode>(a, beta));
}
Series series_log_factor() {
    return series_from_generator(
        [](std::size_t n) { return n == 0 ? Cplx(0.0) : Cplx(1.0 / static_cast<double>(n)); });
}
Series series_product(Series f, Series g) {
    return Series(std::make_shared<ProductNode>(std::move(f), std::move(g)));
}
Series series_polynomial_product(std::vector<Cplx> poly, Series f) {
    return Series(std::make_shared<PolyProductNode>(std::move(poly), std::move(f)));
}
Series series_shift(Series f, long delta) {
    if (delta == 0) return f;
    return Series(std::make_shared<ShiftNode>(std::move(f), delta));
}
Series series_prefix_average(Series f) {
    return Series(std::make_shared<PrefixAverageNode>(std::move(f)));
}
Series series_prefix_sum(Series f) {
    return Series(std::make_shared<PrefixSumNode>(std::move(f)));
}
Series series_inverse_prefix_average(Series g) {
    return Series(std::make_shared<InversePrefixAverageNode>(std::move(g)));
}
Series series_derivative(Series f) {
    // D(J(g)) = g exactly: cancel symbolically instead of multiplying the
    // division back out (which would cost an ulp per coefficient).
    if (auto* anti = dynamic_cast<const AntiderivativeNode*>(f.node().get()))
        return anti->child();
    return Series(std::make_shared<DerivativeNode>(std::move(f)));
}
Series series_antiderivative(Series f) {
    // J(D(g)) = g - g(0) exactly.
    if (auto* deriv = dynamic_cast<const DerivativeNode*>(f.node().get()))
        return Series(std::make_shared<DropConstantNode>(deriv->child()));
    return Series(std::make_shared<AntiderivativeNode>(std::move(f)));
}
Series series_resolvent(Series h, Cplx lambda) {
    return Series(std::make_shared<ResolventNode>(std::move(h), lambda));
}
Series series_truncate(Series f, std::size_t deg) {
    return Series(std::make_shared<TruncateNode>(std::move(f), deg));
}
Series series_bulk(std::function<void(std::vector<Cplx>&, std::size_t)> fill) {
    return Series(std::make_shared<BulkNode>(std::move(fill)));
}

}  // namespace cesaro
