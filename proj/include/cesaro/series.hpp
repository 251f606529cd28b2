#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "cesaro/complex.hpp"

namespace cesaro {

// Sign pattern of the coefficients computed so far. One-signed and
// alternating patterns pin the angle of maximum modulus on each circle
// (|f(re^{it})| <= sum |c_n| r^n with equality at t = 0, resp. t = pi).
enum class CoeffSignature {
    kZero,
    kNonNegative,
    kNonPositive,
    kAlternatingPos,  // (-1)^n c_n >= 0
    kAlternatingNeg,
    kReal,
    kComplex,
};

// A lazily extended, memoized Taylor coefficient stream. Nodes form a DAG;
// extension takes the node's own lock, then (strictly below) its children's,
// so concurrent readers are safe. Coefficients are deterministic: they are
// produced in ascending index order regardless of how requests are chunked.
class SeriesNode {
public:
    virtual ~SeriesNode() = default;

    Cplx coeff(std::size_t n) const;
    void ensure(std::size_t n) const;
    // Copies coefficients [from, to] into out under a single lock.
    void copy_range(std::size_t from, std::size_t to, Cplx* out) const;
    CoeffSignature signature_upto(std::size_t n) const;
    std::optional<std::size_t> finite_degree() const { return finite_degree_; }

protected:
    // Append memo_ up to index n inclusive; called with mu_ held.
    virtual void extend(std::size_t n) const = 0;

    void push(Cplx c) const;  // append + signature bookkeeping

    std::optional<std::size_t> finite_degree_;
    mutable std::vector<Cplx> memo_;
    mutable std::mutex mu_;

private:
    // Signature flags, falsified as coefficients appear.
    mutable bool can_nonneg_ = true, can_nonpos_ = true;
    mutable bool can_altpos_ = true, can_altneg_ = true;
    mutable bool all_real_ = true;
    mutable double max_abs_ = 0.0;
};

using SeriesPtr = std::shared_ptr<const SeriesNode>;

// Value-semantic handle on a coefficient stream.
class Series {
public:
    Series() = default;
    explicit Series(SeriesPtr node) : node_(std::move(node)) {}

    bool valid() const { return node_ != nullptr; }
    Cplx coeff(std::size_t n) const { return node_->coeff(n); }
    void ensure(std::size_t n) const { node_->ensure(n); }
    std::vector<Cplx> coeffs(std::size_t n_max) const;
    CoeffSignature signature_upto(std::size_t n) const { return node_->signature_upto(n); }
    std::optional<std::size_t> finite_degree() const { return node_->finite_degree(); }
    const SeriesPtr& node() const { return node_; }

private:
    SeriesPtr node_;
};

// --- constructors -----------------------------------------------------------

// Arbitrary deterministic generator f(n).
Series series_from_generator(std::function<Cplx(std::size_t)> fn);

// Finite coefficient vector (zeros beyond).
Series series_from_polynomial(std::vector<Cplx> coeffs);

// sum_i scale[i] * f[i]
Series series_linear_combination(std::vector<Cplx> scales, std::vector<Series> terms);

// Coefficients of (1 - a z)^{-beta}: c_0 = 1, c_{n+1} = c_n * a * (n + beta) / (n + 1).
Series series_pole_factor(Cplx a, double beta);

// log(1/(1-z)): (0, 1, 1/2, 1/3, ...)
Series series_log_factor();

// Cauchy product f * g (O(n) per coefficient).
Series series_product(Series f, Series g);

// Product with a fixed polynomial (O(deg) per coefficient).
Series series_polynomial_product(std::vector<Cplx> poly, Series f);

// z^k f for k > 0; f / z^{-k} for k < 0 (caller guarantees the dropped
// coefficients vanish).
Series series_shift(Series f, long delta);

// g(n) = (1/(n+1)) sum_{k<=n} f(k)    (the averaging operator)
Series series_prefix_average(Series f);

// g(n) = sum_{k<=n} f(k)              (multiplication by 1/(1-z))
Series series_prefix_sum(Series f);

// f(n) = (n+1) g(n) - n g(n-1)        (inverse of the averaging operator)
Series series_inverse_prefix_average(Series g);

// termwise derivative / antiderivative
Series series_derivative(Series f);
Series series_antiderivative(Series f);

// Forward substitution for (lambda I - C) f = h on coefficients. Throws
// SingularDiagonal when lambda hits a diagonal value 1/(m+1).
struct SingularDiagonal : std::runtime_error {
    explicit SingularDiagonal(std::size_t m_idx);
    std::size_t m;
};
Series series_resolvent(Series h, Cplx lambda);

// f truncated to degree N (exact finite polynomial).
Series series_truncate(Series f, std::size_t deg);

// Stream whose whole prefix is recomputed from scratch by `fill(out, upto)`
// whenever it must grow; used where a bulk pass is cheaper than a lazy chain
// (operator powers and their averages).
Series series_bulk(std::function<void(std::vector<Cplx>&, std::size_t)> fill);

}  // namespace cesaro
