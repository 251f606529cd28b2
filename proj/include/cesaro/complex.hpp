#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace cesaro {

using Cplx = std::complex<double>;

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(Cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Neumaier-compensated accumulator, componentwise on re/im. Addition order
// is part of the observable result: callers must accumulate in a fixed order.
class CompensatedSum {
public:
    void add(Cplx v) {
        add_part(sum_re_, comp_re_, v.real());
        add_part(sum_im_, comp_im_, v.imag());
    }
    Cplx value() const { return {sum_re_ + comp_re_, sum_im_ + comp_im_}; }
    void reset() { sum_re_ = comp_re_ = sum_im_ = comp_im_ = 0.0; }

private:
    static void add_part(double& s, double& c, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    double sum_re_ = 0.0, comp_re_ = 0.0;
    double sum_im_ = 0.0, comp_im_ = 0.0;
};

struct EvaluationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cesaro
