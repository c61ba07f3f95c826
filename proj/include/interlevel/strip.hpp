#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "interlevel/level.hpp"

namespace interlevel {

// Cells of the fundamental domain D = S | L | A and the finer region list used
// for metric separation. Every point is stored in chart coordinates:
//   S-cell: (x, y)            with -L <  x <= L,  -L <= y <  L
//   L-cell: (u, eta)          with -L <= u <= eta < L, ambient (-2L-u, eta)
//   A-cell: (x, w)            with -L <  x <= w <= L, ambient (x, 2L-w)
// The strip boundary appears as u == eta (L side) and x == w (A side).
enum class Cell { S, L, A };

enum class Region {
    SInterior,
    LInterior,
    AInterior,
    EdgeBottom,
    EdgeTop,
    EdgeLeft,
    EdgeRight,
    Corner,
    Boundary
};

inline const char* region_name(Region r) {
    switch (r) {
        case Region::SInterior: return "S_interior";
        case Region::LInterior: return "L_interior";
        case Region::AInterior: return "A_interior";
        case Region::EdgeBottom: return "edge_bottom";
        case Region::EdgeTop: return "edge_top";
        case Region::EdgeLeft: return "edge_left";
        case Region::EdgeRight: return "edge_right";
        case Region::Corner: return "corner";
        case Region::Boundary: return "boundary";
    }
    return "?";
}

struct StripPoint {
    int k = 0;
    Cell cell = Cell::S;
    Level c1, c2;

    bool operator==(const StripPoint& o) const {
        return k == o.k && cell == o.cell && c1 == o.c1 && c2 == o.c2;
    }
};

// One ambient coordinate written as off * Lambda + sign * t with t in [-L, L].
struct AmbientCoord {
    int off = 0;
    int sign = 1;
    Level t;
};

constexpr double kInf = std::numeric_limits<double>::infinity();

class Strip {
  public:
    explicit Strip(Phi phi) : ops_(std::move(phi)) {}
    explicit Strip(const LevelOps& ops) : ops_(ops) {}

    const LevelOps& ops() const { return ops_; }
    const Rational& lambda() const { return ops_.lambda(); }

    // ----- construction -----

    StripPoint from_chart(int k, Cell cell, Level c1, Level c2) const {
        StripPoint p{k, cell, std::move(c1), std::move(c2)};
        check(p);
        return p;
    }

    // Exact classification of a rational ambient point into T^k(S|L|A).
    StripPoint from_ambient(const Rational& x, const Rational& y) const {
        const Rational lam = lambda();
        if (x + y < -2 * lam || x + y > 2 * lam) throw std::invalid_argument("point outside the strip");
        // T shifts y - x by exactly 4*Lambda, so the T-power is nearly determined.
        const Rational band = (y - x + 2 * lam) / (4 * lam);
        BigInt j0 = numerator(band) / denominator(band);
        if (band < 0 && j0 * denominator(band) != numerator(band)) j0 -= 1;  // floor
        for (long long dj = -1; dj <= 1; ++dj) {
            const long long j = j0.convert_to<long long>() + dj;
            auto [bx, by] = apply_T_ambient(x, y, -j);
            auto cell = fundamental_cell(bx, by);
            if (!cell) continue;
            switch (*cell) {
                case Cell::S: return from_chart(static_cast<int>(j), Cell::S, Level(bx), Level(by));
                case Cell::L: return from_chart(static_cast<int>(j), Cell::L, Level(-2 * lam - bx), Level(by));
                case Cell::A: return from_chart(static_cast<int>(j), Cell::A, Level(bx), Level(2 * lam - by));
            }
        }
        throw std::logic_error("strip point escaped the fundamental domain search");
    }

    // ----- structure maps -----

    StripPoint T(const StripPoint& p, int n = 1) const {
        StripPoint out = p;
        out.k += n;
        return out;
    }

    std::pair<int, Region> classify(const StripPoint& p) const { return {p.k, region(p)}; }

    Region region(const StripPoint& p) const {
        const Rational lam = lambda();
        switch (p.cell) {
            case Cell::S: {
                const bool right = ops_.at_pos_end(p.c1);
                const bool bottom = ops_.at_neg_end(p.c2);
                if (right && bottom) return Region::Corner;
                if (right) return Region::EdgeRight;
                if (bottom) return Region::EdgeBottom;
                return Region::SInterior;
            }
            case Cell::L:
                if (ops_.equal(p.c1, p.c2)) return Region::Boundary;
                if (ops_.at_neg_end(p.c1)) return Region::EdgeLeft;
                return Region::LInterior;
            case Cell::A:
                if (ops_.equal(p.c1, p.c2)) return Region::Boundary;
                if (ops_.at_pos_end(p.c2)) return Region::EdgeTop;
                return Region::AInterior;
        }
        return Region::Boundary;
    }

    bool on_boundary(const StripPoint& p) const { return region(p) == Region::Boundary; }

    // The strip flow: exact translations of the chart coordinates in xi space.
    // eps may be negative (used inside metric computations).
    StripPoint flow(const StripPoint& p, const Rational& eps) const {
        StripPoint out = p;
        switch (p.cell) {
            case Cell::S:
                out.c1 = ops_.rho(-eps, p.c1);
                out.c2 = ops_.rho(eps, p.c2);
                break;
            case Cell::L:
                out.c1 = ops_.rho(eps, p.c1);
                out.c2 = ops_.rho(eps, p.c2);
                break;
            case Cell::A:
                out.c1 = ops_.rho(-eps, p.c1);
                out.c2 = ops_.rho(-eps, p.c2);
                break;
        }
        return out;
    }

    // Ambient coordinates (x, y) of the point, in off/sign/level form.
    std::pair<AmbientCoord, AmbientCoord> ambient(const StripPoint& p) const {
        AmbientCoord x, y;
        switch (p.cell) {
            case Cell::S:
                x = {0, 1, p.c1};
                y = {0, 1, p.c2};
                break;
            case Cell::L:
                x = {-2, -1, p.c1};
                y = {0, 1, p.c2};
                break;
            case Cell::A:
                x = {0, 1, p.c1};
                y = {2, -1, p.c2};
                break;
        }
        int k = p.k;
        const int m2 = (k >= 0 ? k / 2 : -((-k + 1) / 2));  // floor(k/2)
        if (k % 2 != 0) {
            AmbientCoord nx{-2 - y.off, -y.sign, y.t};
            AmbientCoord ny{2 - x.off, -x.sign, x.t};
            x = nx;
            y = ny;
        }
        x.off -= 4 * m2;
        y.off += 4 * m2;
        return {x, y};
    }

    // The partial order on the strip: (x,y) <= (x',y') iff x >= x' and y <= y'.
    bool leq(const StripPoint& v, const StripPoint& w) const {
        auto [vx, vy] = ambient(v);
        auto [wx, wy] = ambient(w);
        return cmp_ambient(vx, wx) >= 0 && cmp_ambient(vy, wy) <= 0;
    }

    // Strict inequality in both coordinates (the "<<" relation of block supports).
    bool strictly_less(const StripPoint& v, const StripPoint& w) const {
        auto [vx, vy] = ambient(v);
        auto [wx, wy] = ambient(w);
        return cmp_ambient(vx, wx) > 0 && cmp_ambient(vy, wy) < 0;
    }

    int cmp_ambient(const AmbientCoord& a, const AmbientCoord& b) const {
        auto signed_level = [&](const AmbientCoord& c) { return c.sign > 0 ? c.t : c.t.negated(); };
        const int d = a.off - b.off;
        if (d == 0) return ops_.compare(signed_level(a), signed_level(b));
        const Level la = signed_level(a), lb = signed_level(b);
        if (d >= 2) {
            if (d == 2 && ops_.at_neg_end(la) && ops_.at_pos_end(lb)) return 0;
            return 1;
        }
        if (d <= -2) {
            if (d == -2 && ops_.at_pos_end(la) && ops_.at_neg_end(lb)) return 0;
            return -1;
        }
        // |d| == 1: difference is d*Lambda + (val(la) - val(lb)) with both values in
        // [-Lambda, Lambda]; equality needs val(la) - val(lb) = -d*Lambda.
        auto exact_a = value_exact(la), exact_b = value_exact(lb);
        if (exact_a && exact_b) {
            const Rational diff = Rational(d) * lambda() + *exact_a - *exact_b;
            return diff < 0 ? -1 : (diff == 0 ? 0 : 1);
        }
        const double diff = d * rat_to_double(lambda()) + value_double(la) - value_double(lb);
        if (std::fabs(diff) > 1e-12) return diff < 0 ? -1 : 1;
        return 0;  // values agree to high accuracy across one Lambda step
    }

    // ----- metric -----

    double xi(const Level& l) const { return ops_.xi(l); }

    double d_int(const StripPoint& v, const StripPoint& w) const {
        const Region rv = region(v), rw = region(w);
        if (v.k == w.k && rv == rw && v.cell == w.cell) return same_region_distance(v, w, rv);
        if (v.k == w.k && v.cell == w.cell) {
            // interior point against its own boundary component
            if (rv == Region::LInterior && rw == Region::Boundary) return to_boundary(v, w);
            if (rw == Region::LInterior && rv == Region::Boundary) return to_boundary(w, v);
            if (rv == Region::AInterior && rw == Region::Boundary) return to_boundary(v, w);
            if (rw == Region::AInterior && rv == Region::Boundary) return to_boundary(w, v);
        }
        return kInf;
    }

    double d_boundary(const StripPoint& v) const {
        switch (region(v)) {
            case Region::Boundary: return 0.0;
            case Region::LInterior: return (xi(v.c2) - xi(v.c1)) / 2.0;
            case Region::AInterior: return (xi(v.c2) - xi(v.c1)) / 2.0;
            default: return kInf;
        }
    }

    std::string to_string(const StripPoint& p) const {
        auto [x, y] = ambient(p);
        auto coord = [&](const AmbientCoord& c) {
            if (auto v = value_exact(c.sign > 0 ? c.t : c.t.negated()))
                return rat_to_string(Rational(c.off) * lambda() + *v);
            char buf[40];
            std::snprintf(buf, sizeof(buf), "~%.12g", c.off * rat_to_double(lambda()) + value_double(c.sign > 0 ? c.t : c.t.negated()));
            return std::string(buf);
        };
        return "(" + coord(x) + ", " + coord(y) + ") [T^" + std::to_string(p.k) + " " +
               region_name(region(p)) + "]";
    }

    // exact t-space value when available (rational base with no shift, or a shift
    // landing on an exactly representable xi)
    std::optional<Rational> value_exact(const Level& l) const {
        if (l.shift == 0) return l.base;
        if (auto q = ops_.xi_exact(l)) {
            if (*q == 0) return Rational(0);
            if (*q == 1) return lambda() / 2;
            if (*q == -1) return -lambda() / 2;
            if (ops_.phi().kind == Phi::Kind::Linear) {
                const Rational clamped = *q < -lambda() ? -lambda() : (*q > lambda() ? lambda() : *q);
                return clamped;
            }
        }
        return std::nullopt;
    }

    double value_double(const Level& l) const {
        if (auto q = value_exact(l)) return rat_to_double(*q);
        const double x = ops_.xi(l);
        if (ops_.phi().kind == Phi::Kind::Linear) {
            const double lam = rat_to_double(lambda());
            return std::max(-lam, std::min(lam, x));
        }
        return rat_to_double(lambda()) * (2.0 / M_PI) * std::atan(x);
    }

  private:
    double same_region_distance(const StripPoint& v, const StripPoint& w, Region r) const {
        auto d1 = std::fabs(xi(v.c1) - xi(w.c1));
        auto d2 = std::fabs(xi(v.c2) - xi(w.c2));
        switch (r) {
            case Region::SInterior:
            case Region::LInterior:
            case Region::AInterior: return std::max(d1, d2);
            case Region::EdgeRight: return d2;   // x pinned at +Lambda
            case Region::EdgeBottom: return d1;  // y pinned at -Lambda
            case Region::EdgeLeft: return d2;    // u pinned at -Lambda
            case Region::EdgeTop: return d1;     // w pinned at +Lambda
            case Region::Corner: return 0.0;
            case Region::Boundary: return d1;    // one-dimensional boundary chart
        }
        return kInf;
    }

    double to_boundary(const StripPoint& interior, const StripPoint& bdry) const {
        const double c = xi(bdry.c1);
        return std::max(std::fabs(xi(interior.c1) - c), std::fabs(xi(interior.c2) - c));
    }

    std::optional<Cell> fundamental_cell(const Rational& x, const Rational& y) const {
        const Rational lam = lambda();
        if (-lam < x && x <= lam && -lam <= y && y < lam) return Cell::S;
        if (x <= -lam && y < lam && x + y >= -2 * lam) return Cell::L;
        if (x > -lam && y >= lam && x + y <= 2 * lam) return Cell::A;
        return std::nullopt;
    }

    std::pair<Rational, Rational> apply_T_ambient(Rational x, Rational y, long long n) const {
        const Rational lam = lambda();
        while (n > 0) {
            auto nx = -2 * lam - y;
            y = 2 * lam - x;
            x = nx;
            --n;
        }
        while (n < 0) {
            auto nx = 2 * lam - y;
            y = -2 * lam - x;
            x = nx;
            ++n;
        }
        return {x, y};
    }

    void check(const StripPoint& p) const {
        const Rational lam = lambda();
        auto inside_closed = [&](const Level& l) {
            return ops_.compare(Level(-lam), l) <= 0 && ops_.compare(l, Level(lam)) <= 0;
        };
        if (!inside_closed(p.c1) || !inside_closed(p.c2))
            throw std::invalid_argument("chart coordinate outside [-Lambda, Lambda]");
        switch (p.cell) {
            case Cell::S:
                if (ops_.at_neg_end(p.c1) || ops_.at_pos_end(p.c2))
                    throw std::invalid_argument("S-chart coordinate on the wrong closed side");
                break;
            case Cell::L:
                if (ops_.compare(p.c1, p.c2) > 0) throw std::invalid_argument("L-chart needs u <= eta");
                if (ops_.at_pos_end(p.c1) || ops_.at_pos_end(p.c2))
                    throw std::invalid_argument("L-chart coordinates must be < Lambda");
                break;
            case Cell::A:
                if (ops_.compare(p.c1, p.c2) > 0) throw std::invalid_argument("A-chart needs x <= w");
                if (ops_.at_neg_end(p.c1) || ops_.at_neg_end(p.c2))
                    throw std::invalid_argument("A-chart coordinates must be > -Lambda");
                break;
        }
    }

    LevelOps ops_;
};

}  // namespace interlevel
