#include "cesaro/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace cesaro {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    AtomSum run() {
        AtomSum e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected input");
        return normalize(std::move(e));
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    AtomSum expr() {
        AtomSum acc = term();
        while (true) {
            skip_ws();
            if (eat('+'))
                acc = atom_sum_add(acc, term());
            else if (eat('-'))
                acc = atom_sum_add(acc, atom_sum_scale(term(), Cplx(-1.0)));
            else
                return acc;
        }
    }

    AtomSum term() {
        AtomSum acc = factor();
        while (true) {
            skip_ws();
            if (eat('*'))
                acc = atom_sum_product(acc, factor());
            else if (eat('/'))
                acc = atom_sum_product(acc, invert(factor()));
            else
                return acc;
        }
    }

    AtomSum invert(const AtomSum& denom) {
        const std::size_t where = pos_;
        try {
            return atom_sum_ipow(denom, -1);
        } catch (const PoleError&) {
            throw;
        } catch (const AlgebraError& e) {
            throw ParseError(e.what(), where);
        }
    }

    AtomSum factor() {
        AtomSum b = base();
        skip_ws();
        if (!eat('^')) return b;
        const std::size_t where = pos_;
        const double e = signed_real();
        if (e == std::floor(e) && std::abs(e) <= 1e9) {
            try {
                return atom_sum_ipow(b, static_cast<long>(e));
            } catch (const PoleError&) {
                throw;
            } catch (const AlgebraError& err) {
                throw ParseError(err.what(), where);
            }
        }
        return fractional_power(b, e, where);
    }

    // Non-integer exponent: base must normalize to scale * (1 - a z)^b with
    // real positive scale.
    AtomSum fractional_power(const AtomSum& b, double e, std::size_t where) {
        AtomSum n = normalize(b);
        Cplx c, d;
        if (n.atoms.size() != 1 && linear_polynomial(n, &c, &d) && c != Cplx(0.0) && d != Cplx(0.0)) {
            if (std::abs(-d / c) > 1.0 + 1e-12)
                throw PoleError("pole inside the closed unit disc");
            n = AtomSum{{linear_to_factor_atom(c, d)}, 0};
        }
        if (n.z_shift != 0 || n.atoms.size() != 1)
            throw ParseError("non-integer power of a sum is outside the algebra", where);
        const Atom& a = n.atoms[0];
        if (a.p != 0 || a.q != 0 || a.factors.size() != 1)
            throw ParseError("non-integer power applies only to a single factor (1 - a*z)", where);
        if (a.scale.imag() != 0.0 || a.scale.real() <= 0.0)
            throw ParseError("non-integer power requires a real positive scale", where);
        Atom r;
        r.scale = std::pow(a.scale.real(), e);
        r.factors.push_back({a.factors[0].a, a.factors[0].beta * e});
        return normalize(AtomSum{{r}, 0});
    }

    AtomSum base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            AtomSum inner = expr();
            if (!eat(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double v = real_number();
            if (pos_ < text_.size() && text_[pos_] == 'i') {
                ++pos_;
                return constant(Cplx(0.0, v));
            }
            return constant(Cplx(v, 0.0));
        }
        if (text_.compare(pos_, 5, "log1z") == 0) {
            pos_ += 5;
            Atom a;
            a.q = 1;
            return AtomSum{{a}, 0};
        }
        if (c == 'z') {
            ++pos_;
            Atom a;
            a.p = 1;
            return AtomSum{{a}, 0};
        }
        if (c == 'i') {
            ++pos_;
            return constant(Cplx(0.0, 1.0));
        }
        fail("expected a value");
    }

    static AtomSum constant(Cplx v) {
        Atom a;
        a.scale = v;
        return AtomSum{{a}, 0};
    }

    double signed_real() {
        skip_ws();
        double sign = 1.0;
        if (eat('-'))
            sign = -1.0;
        else
            eat('+');
        return sign * real_number();
    }

    double real_number() {
        skip_ws();
        const std::size_t start = pos_;
        std::size_t i = pos_;
        while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        if (i < text_.size() && text_[i] == '.') {
            ++i;
            while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) ++i;
        }
        if (i == start || (i == start + 1 && text_[start] == '.')) fail("expected a number");
        if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
            std::size_t j = i + 1;
            if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
            std::size_t k = j;
            while (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) ++k;
            if (k > j) i = k;
        }
        const std::string num(text_.substr(start, i - start));
        char* end = nullptr;
        const double v = std::strtod(num.c_str(), &end);
        if (end != num.c_str() + num.size() || !std::isfinite(v)) fail("malformed number");
        pos_ = i;
        return v;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace

FunctionModel parse_expression(std::string_view text) {
    return FunctionModel(Parser(text).run());
}

std::string print_expression(const FunctionModel& f) {
    if (!f.is_atoms()) throw AlgebraError("only atom-sum models have an expression form");
    return atom_sum_print(f.atoms());
}

}  // namespace cesaro
