#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "interlevel/filtered_complex.hpp"

namespace interlevel {

// The eight standard elementary summand kinds. Level slots per kind:
//   Up(a,b)_k          a = level of the boundary, b = level of the chain, a < b
//   Down(a,b)_k        a = level of the boundary, b = level of the chain, a > b
//   UpInf(a)_k         essential ascending class at level a
//   DownNegInf(a)_k    essential descending class at level a
//   NE(a)_k            ascending essential whose mid image is nontrivial
//   SE(a)_k            descending essential whose mid image is nontrivial
//   GT(a,b)_k          a = ascending (up) level, b = descending (down) level
//   Box_k              one mid class, no levels
enum class SummandKind { Up, Down, UpInf, DownNegInf, NE, SE, GT, Box };

inline const char* summand_kind_name(SummandKind k) {
    switch (k) {
        case SummandKind::Up: return "Up";
        case SummandKind::Down: return "Down";
        case SummandKind::UpInf: return "UpInf";
        case SummandKind::DownNegInf: return "DownNegInf";
        case SummandKind::NE: return "NE";
        case SummandKind::SE: return "SE";
        case SummandKind::GT: return "GT";
        case SummandKind::Box: return "Box";
    }
    return "?";
}

struct Summand {
    SummandKind kind;
    int degree;
    std::optional<Level> a, b;

    static Summand up(int k, Level birth, Level death) { return {SummandKind::Up, k, birth, death}; }
    static Summand down(int k, Level birth, Level death) { return {SummandKind::Down, k, birth, death}; }
    static Summand up_inf(int k, Level a) { return {SummandKind::UpInf, k, a, std::nullopt}; }
    static Summand down_neg_inf(int k, Level a) { return {SummandKind::DownNegInf, k, a, std::nullopt}; }
    static Summand ne(int k, Level a) { return {SummandKind::NE, k, a, std::nullopt}; }
    static Summand se(int k, Level a) { return {SummandKind::SE, k, a, std::nullopt}; }
    static Summand gt(int k, Level up_level, Level down_level) {
        return {SummandKind::GT, k, up_level, down_level};
    }
    static Summand box(int k) { return {SummandKind::Box, k, std::nullopt, std::nullopt}; }

    // Display notation follows the arrow glyphs with the up level printed first.
    std::string display() const {
        const std::string deg = std::to_string(degree);
        switch (kind) {
            case SummandKind::Up: return "(^_{" + a->to_string() + "}^{" + b->to_string() + "})_" + deg;
            case SummandKind::Down: return "(v^{" + a->to_string() + "}_{" + b->to_string() + "})_" + deg;
            case SummandKind::UpInf: return "(^_{" + a->to_string() + "}^{inf})_" + deg;
            case SummandKind::DownNegInf: return "(v^{" + a->to_string() + "}_{-inf})_" + deg;
            case SummandKind::NE: return "(ne_{" + a->to_string() + "})_" + deg;
            case SummandKind::SE: return "(se^{" + a->to_string() + "})_" + deg;
            case SummandKind::GT: return "(>_{" + a->to_string() + "}^{" + b->to_string() + "})_" + deg;
            case SummandKind::Box: return "(box)_" + deg;
        }
        return "?";
    }

    std::string line() const {
        std::string out = std::string(summand_kind_name(kind)) + " k=" + std::to_string(degree);
        switch (kind) {
            case SummandKind::Up:
            case SummandKind::Down:
                out += " birth=" + a->to_string() + " death=" + b->to_string();
                break;
            case SummandKind::GT:
                out += " up=" + a->to_string() + " down=" + b->to_string();
                break;
            case SummandKind::Box:
                break;
            default:
                out += " level=" + a->to_string();
        }
        return out;
    }
};

// (C_up, C_down, D, psi_up, psi_down) with a shared Lambda bound.
class FilteredCospan {
  public:
    FilteredCospan() : FilteredCospan(FieldId::rationals(), rat(2)) {}
    FilteredCospan(FieldId f, Rational lambda)
        : field_(f),
          lambda_(lambda),
          up_(Flavor::Ascending, f, lambda),
          down_(Flavor::Descending, f, lambda),
          mid_(Flavor::Unfiltered, f, lambda) {}

    const FieldId& field() const { return field_; }
    const Rational& lambda() const { return lambda_; }
    FilteredComplex& up() { return up_; }
    FilteredComplex& down() { return down_; }
    FilteredComplex& mid() { return mid_; }
    const FilteredComplex& up() const { return up_; }
    const FilteredComplex& down() const { return down_; }
    const FilteredComplex& mid() const { return mid_; }

    const SparseMatrix& psi_up(int k) const { return psi(psi_up_, up_, k); }
    const SparseMatrix& psi_down(int k) const { return psi(psi_down_, down_, k); }
    void set_psi_up(int k, SparseMatrix m) { store_psi(psi_up_, up_, k, std::move(m)); }
    void set_psi_down(int k, SparseMatrix m) { store_psi(psi_down_, down_, k, std::move(m)); }
    void set_psi_up_entry(int k, int mid_row, int up_col, const Scalar& v) {
        auto m = psi_up(k);
        m.set(mid_row, up_col, v);
        set_psi_up(k, std::move(m));
    }
    void set_psi_down_entry(int k, int mid_row, int down_col, const Scalar& v) {
        auto m = psi_down(k);
        m.set(mid_row, down_col, v);
        set_psi_down(k, std::move(m));
    }

    std::vector<int> degrees() const {
        std::vector<int> out;
        int lo = 1, hi = 0;
        for (const FilteredComplex* c : {&up_, &down_, &mid_}) {
            if (c->empty()) continue;
            if (lo > hi) {
                lo = c->degree_min();
                hi = c->degree_max();
            } else {
                lo = std::min(lo, c->degree_min());
                hi = std::max(hi, c->degree_max());
            }
        }
        std::vector<int> v;
        for (int k = lo; k <= hi; ++k) v.push_back(k);
        return v;
    }

    int total_generators() const {
        return up_.total_generators() + down_.total_generators() + mid_.total_generators();
    }

    // Every violated invariant, one message each; empty means valid.
    std::vector<std::string> validate(const LevelOps& ops) const {
        std::vector<std::string> report;
        auto append = [&](const std::vector<std::string>& part, const std::string& tag) {
            for (const auto& msg : part) report.push_back(tag + ": " + msg);
        };
        append(up_.validate(ops), "up");
        append(down_.validate(ops), "down");
        append(mid_.validate(ops), "mid");
        if (up_.lambda() != lambda_ || down_.lambda() != lambda_)
            report.push_back("lambda mismatch between cospan and complexes");
        for (int k : degrees()) {
            // chain map condition d_D psi = psi d
            auto upside = mid_.boundary(k) * psi_up(k) - psi_up(k - 1) * up_.boundary(k);
            if (!upside.is_zero()) report.push_back("psi_up fails the chain map condition in degree " + std::to_string(k));
            auto downside = mid_.boundary(k) * psi_down(k) - psi_down(k - 1) * down_.boundary(k);
            if (!downside.is_zero())
                report.push_back("psi_down fails the chain map condition in degree " + std::to_string(k));
        }
        return report;
    }

  private:
    const SparseMatrix& psi(std::map<int, SparseMatrix>& store, const FilteredComplex& src, int k) const {
        auto it = store.find(k);
        const int rows = mid_.count(k), cols = src.count(k);
        if (it != store.end()) {
            if (it->second.rows() != rows || it->second.cols() != cols) {
                if (it->second.rows() > rows || it->second.cols() > cols)
                    throw ShapeError("psi larger than generator count in degree " + std::to_string(k));
                SparseMatrix bigger(field_, rows, cols);
                for (int j = 0; j < it->second.cols(); ++j)
                    for (const auto& [r, v] : it->second.column(j)) bigger.set(r, j, v);
                it->second = std::move(bigger);
            }
            return it->second;
        }
        auto [jt, _] = store.try_emplace(k, SparseMatrix(field_, rows, cols));
        return jt->second;
    }
    void store_psi(std::map<int, SparseMatrix>& store, const FilteredComplex& src, int k, SparseMatrix m) {
        if (m.rows() != mid_.count(k) || m.cols() != src.count(k))
            throw ShapeError("psi shape mismatch in degree " + std::to_string(k));
        store[k] = std::move(m);
    }

    FieldId field_;
    Rational lambda_;
    FilteredComplex up_, down_, mid_;
    mutable std::map<int, SparseMatrix> psi_up_, psi_down_;
};

// The literal cospans of the eight standard building blocks.
inline FilteredCospan standard_summand(const Summand& s, FieldId f, const Rational& lambda,
                                       const LevelOps& ops) {
    FilteredCospan c(f, lambda);
    const int k = s.degree;
    auto inside = [&](const Level& l) {
        if (!ops.strictly_inside(l))
            throw std::invalid_argument("summand level " + l.to_string() + " not strictly inside (-Lambda, Lambda)");
    };
    const Scalar one = Scalar::one(f);
    switch (s.kind) {
        case SummandKind::Up: {
            inside(*s.a);
            inside(*s.b);
            if (!ops.less(*s.a, *s.b)) throw std::invalid_argument("Up summand needs birth < death");
            int x = c.up().add_generator(k, "x", *s.a);
            int y = c.up().add_generator(k + 1, "y", *s.b);
            c.up().set_boundary_entry(k + 1, x, y, one);
            break;
        }
        case SummandKind::Down: {
            inside(*s.a);
            inside(*s.b);
            if (!ops.less(*s.b, *s.a)) throw std::invalid_argument("Down summand needs birth > death");
            int x = c.down().add_generator(k, "x", *s.a);
            int y = c.down().add_generator(k + 1, "y", *s.b);
            c.down().set_boundary_entry(k + 1, x, y, one);
            break;
        }
        case SummandKind::UpInf:
            inside(*s.a);
            c.up().add_generator(k, "x", *s.a);
            break;
        case SummandKind::DownNegInf:
            inside(*s.a);
            c.down().add_generator(k, "x", *s.a);
            break;
        case SummandKind::NE: {
            inside(*s.a);
            c.up().add_generator(k, "x", *s.a);
            c.mid().add_generator(k, "m");
            c.set_psi_up_entry(k, 0, 0, one);
            break;
        }
        case SummandKind::SE: {
            inside(*s.a);
            c.down().add_generator(k, "x", *s.a);
            c.mid().add_generator(k, "m");
            c.set_psi_down_entry(k, 0, 0, one);
            break;
        }
        case SummandKind::GT: {
            inside(*s.a);
            inside(*s.b);
            c.up().add_generator(k, "x", *s.a);
            c.down().add_generator(k, "y", *s.b);
            c.mid().add_generator(k, "m");
            c.set_psi_up_entry(k, 0, 0, one);
            c.set_psi_down_entry(k, 0, 0, one);
            break;
        }
        case SummandKind::Box:
            c.mid().add_generator(k, "m");
            break;
    }
    return c;
}

// Block-diagonal direct sum; generator order is concatenation order.
inline FilteredCospan direct_sum(const std::vector<FilteredCospan>& parts, FieldId f, const Rational& lambda) {
    FilteredCospan out(f, lambda);
    for (const auto& part : parts) {
        if (part.field() != f) throw FieldMismatchError("direct sum field mismatch");
        if (part.lambda() != lambda) throw std::invalid_argument("direct sum lambda mismatch");
    }
    struct Offsets {
        std::map<int, int> up, down, mid;
    };
    auto copy_complex = [](const FilteredComplex& src, FilteredComplex& dst, std::map<int, int>& off,
                           const std::string& tag) {
        std::map<int, int> base;
        for (int k : src.degrees()) base[k] = dst.count(k);
        for (int k : src.degrees())
            for (int i = 0; i < src.count(k); ++i)
                dst.add_generator(k, tag + src.generator(k, i).name, src.level_of(k, i));
        off = base;
    };
    int part_idx = 0;
    for (const auto& part : parts) {
        const std::string tag = "p" + std::to_string(part_idx++) + ".";
        Offsets off;
        copy_complex(part.up(), out.up(), off.up, tag);
        copy_complex(part.down(), out.down(), off.down, tag);
        copy_complex(part.mid(), out.mid(), off.mid, tag);
        auto place = [&](const SparseMatrix& m, int row_off, int col_off, auto setter) {
            for (int j = 0; j < m.cols(); ++j)
                for (const auto& [r, v] : m.column(j)) setter(row_off + r, col_off + j, v);
        };
        for (int k : part.degrees()) {
            auto at = [](const std::map<int, int>& m, int k) {
                auto it = m.find(k);
                return it == m.end() ? 0 : it->second;
            };
            place(part.up().boundary(k), at(off.up, k - 1), at(off.up, k),
                  [&](int r, int cidx, const Scalar& v) { out.up().set_boundary_entry(k, r, cidx, v); });
            place(part.down().boundary(k), at(off.down, k - 1), at(off.down, k),
                  [&](int r, int cidx, const Scalar& v) { out.down().set_boundary_entry(k, r, cidx, v); });
            place(part.mid().boundary(k), at(off.mid, k - 1), at(off.mid, k),
                  [&](int r, int cidx, const Scalar& v) { out.mid().set_boundary_entry(k, r, cidx, v); });
            place(part.psi_up(k), at(off.mid, k), at(off.up, k),
                  [&](int r, int cidx, const Scalar& v) { out.set_psi_up_entry(k, r, cidx, v); });
            place(part.psi_down(k), at(off.mid, k), at(off.down, k),
                  [&](int r, int cidx, const Scalar& v) { out.set_psi_down_entry(k, r, cidx, v); });
        }
    }
    return out;
}

// The flow on cospans: ascending levels move by -eps, descending by +eps, both as
// exact translations in xi coordinates; complexes and maps are untouched.
inline FilteredCospan flow_shift(const FilteredCospan& c, const Rational& eps, const LevelOps& ops) {
    FilteredCospan out(c.field(), c.lambda());
    auto move = [&](const FilteredComplex& src, FilteredComplex& dst, const Rational& delta) {
        for (int k : src.degrees())
            for (int i = 0; i < src.count(k); ++i) {
                const auto& g = src.generator(k, i);
                dst.add_generator(k, g.name, ops.rho(delta, g.level));
            }
        for (int k : src.degrees()) dst.set_boundary(k, src.boundary(k));
    };
    move(c.up(), out.up(), -eps);
    move(c.down(), out.down(), eps);
    move(c.mid(), out.mid(), Rational(0));
    for (int k : c.degrees()) {
        out.set_psi_up(k, c.psi_up(k));
        out.set_psi_down(k, c.psi_down(k));
    }
    return out;
}

}  // namespace interlevel
