#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "interlevel/rational.hpp"

namespace interlevel {

// Increasing homeomorphism phi: [-inf, inf] -> [-Lambda, Lambda]; odd by construction.
// Arctan is the default; Linear treats phi as the identity near 0 with clamping at
// +-Lambda and is intended for tests that stay strictly inside the interval.
struct Phi {
    enum class Kind { Arctan, Linear };
    Kind kind = Kind::Arctan;
    Rational lambda = 2;

    static Phi arctan(Rational lam) { return Phi{Kind::Arctan, std::move(lam)}; }
    static Phi linear(Rational lam) { return Phi{Kind::Linear, std::move(lam)}; }
};

// A filtration value phi(shift + phi^{-1}(base)) with base in [-Lambda, Lambda].
// Unflowed levels have shift == 0; flows translate shift in xi = phi^{-1} space.
// base == +-Lambda marks the ends (xi = +-inf); such levels never carry a shift.
struct Level {
    Rational base;
    Rational shift;

    Level() : base(0), shift(0) {}
    explicit Level(Rational b, Rational s = Rational(0)) : base(std::move(b)), shift(std::move(s)) {}

    bool is_exactly(long long v) const { return shift == 0 && base == v; }
    Level negated() const { return Level(-base, -shift); }
    Level flowed(const Rational& eps) const { return Level(base, shift + eps); }

    bool operator==(const Level& o) const { return base == o.base && shift == o.shift; }
    bool operator!=(const Level& o) const { return !(*this == o); }

    std::string to_string() const {
        if (shift == 0) return rat_to_string(base);
        return rat_to_string(base) + "@" + rat_to_string(shift);
    }
};

namespace detail {

template <unsigned Digits>
using BigFloat = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<Digits>>;

template <typename F>
F xi_numeric(const Phi& phi, const Level& l) {
    const F b = static_cast<F>(l.base.convert_to<Rational>());
    const F s = static_cast<F>(l.shift.convert_to<Rational>());
    if (phi.kind == Phi::Kind::Linear) return b + s;
    const F lam = static_cast<F>(phi.lambda);
    static const F pi = atan(F(1)) * 4;
    return tan(pi * b / (2 * lam)) + s;
}

inline double xi_double(const Phi& phi, const Level& l) {
    const double b = rat_to_double(l.base);
    const double s = rat_to_double(l.shift);
    if (phi.kind == Phi::Kind::Linear) return b + s;
    const double lam = rat_to_double(phi.lambda);
    return std::tan(M_PI * b / (2.0 * lam)) + s;
}

}  // namespace detail

class LevelOps {
  public:
    explicit LevelOps(Phi phi) : phi_(std::move(phi)) {}

    const Phi& phi() const { return phi_; }
    const Rational& lambda() const { return phi_.lambda; }

    bool at_pos_end(const Level& l) const { return l.shift == 0 && l.base == phi_.lambda; }
    bool at_neg_end(const Level& l) const { return l.shift == 0 && l.base == -phi_.lambda; }
    bool strictly_inside(const Level& l) const {
        return -phi_.lambda < l.base && l.base < phi_.lambda;
    }

    // xi = phi^{-1}(base) + shift when it is an exact rational.
    std::optional<Rational> xi_exact(const Level& l) const {
        if (phi_.kind == Phi::Kind::Linear) return l.base + l.shift;
        if (l.base == 0) return l.shift;
        if (2 * l.base == phi_.lambda) return l.shift + 1;
        if (2 * l.base == -phi_.lambda) return l.shift - 1;
        return std::nullopt;
    }

    double xi(const Level& l) const {
        if (at_pos_end(l)) return std::numeric_limits<double>::infinity();
        if (at_neg_end(l)) return -std::numeric_limits<double>::infinity();
        return detail::xi_double(phi_, l);
    }

    // Total order on level values. Ends compare as +-infinity. Exact whenever the
    // symbolic forms allow; otherwise evaluated numerically at escalating precision
    // (values agreeing to ~200 digits are declared equal).
    int compare(const Level& a, const Level& b) const {
        if (a.base == b.base) return cmp_rat(a.shift, b.shift);
        const bool ap = at_pos_end(a), an = at_neg_end(a);
        const bool bp = at_pos_end(b), bn = at_neg_end(b);
        if (ap || an || bp || bn) {
            if (ap) return bp ? 0 : 1;
            if (an) return bn ? 0 : -1;
            if (bp) return -1;
            return 1;
        }
        const auto ea = xi_exact(a), eb = xi_exact(b);
        if (ea && eb) return cmp_rat(*ea, *eb);

        const double da = detail::xi_double(phi_, a), db = detail::xi_double(phi_, b);
        const double scale = std::max({1.0, std::fabs(da), std::fabs(db)});
        if (std::fabs(da - db) > 1e-12 * scale) return da < db ? -1 : 1;
        if (int c = compare_prec<detail::BigFloat<60>>(a, b, 45); c != 9) return c;
        if (int c = compare_prec<detail::BigFloat<120>>(a, b, 100); c != 9) return c;
        if (int c = compare_prec<detail::BigFloat<240>>(a, b, 200); c != 9) return c;
        return 0;
    }

    bool less(const Level& a, const Level& b) const { return compare(a, b) < 0; }
    bool leq(const Level& a, const Level& b) const { return compare(a, b) <= 0; }
    bool equal(const Level& a, const Level& b) const { return compare(a, b) == 0; }

    const Level& max(const Level& a, const Level& b) const { return compare(a, b) >= 0 ? a : b; }
    const Level& min(const Level& a, const Level& b) const { return compare(a, b) <= 0 ? a : b; }

    // rho_s in level space: translation by s in xi coordinates.
    Level rho(const Rational& s, const Level& l) const {
        if (at_pos_end(l) || at_neg_end(l)) return l;  // phi(+-inf + s) = +-Lambda
        return l.flowed(s);
    }

  private:
    static int cmp_rat(const Rational& a, const Rational& b) { return a < b ? -1 : (a == b ? 0 : 1); }

    template <typename F>
    int compare_prec(const Level& a, const Level& b, int guard_digits) const {
        const F xa = detail::xi_numeric<F>(phi_, a);
        const F xb = detail::xi_numeric<F>(phi_, b);
        const F diff = xa - xb;
        const F tol = pow(F(10), -guard_digits) * std::max<F>({F(1), abs(xa), abs(xb)});
        if (diff > tol) return 1;
        if (diff < -tol) return -1;
        return 9;  // undecided at this precision
    }

    Phi phi_;
};

}  // namespace interlevel
