#pragma once

#include <map>
#include <string>
#include <vector>

#include "interlevel/cospan.hpp"

namespace interlevel {

// Degree-m morphism (alpha_down, alpha_up, alpha, K_down, K_up): the alpha maps
// lower grading by m into the target complexes, the K maps land in the target mid
// complex with grading shift 1 - m. Matrices are stored per source degree.
struct CospanMorphism {
    int degree = 0;
    std::map<int, SparseMatrix> alpha_down, alpha_up, alpha, K_down, K_up;

    bool is_zero() const {
        for (const auto* fam : {&alpha_down, &alpha_up, &alpha, &K_down, &K_up})
            for (const auto& [k, m] : *fam)
                if (!m.is_zero()) return false;
        return true;
    }
};

namespace detail {

inline SparseMatrix get_block(const std::map<int, SparseMatrix>& fam, int k, FieldId f, int rows, int cols) {
    auto it = fam.find(k);
    if (it == fam.end()) return SparseMatrix(f, rows, cols);
    if (it->second.rows() != rows || it->second.cols() != cols)
        throw ShapeError("morphism block shape mismatch in degree " + std::to_string(k));
    return it->second;
}

inline void put_block(std::map<int, SparseMatrix>& fam, int k, SparseMatrix m) {
    if (!m.is_zero()) fam[k] = std::move(m);
}

inline std::vector<int> degree_window(const FilteredCospan& a, const FilteredCospan& b, int pad = 2) {
    int lo = 0, hi = -1;
    for (const FilteredCospan* c : {&a, &b}) {
        auto d = c->degrees();
        if (d.empty()) continue;
        if (lo > hi) {
            lo = d.front();
            hi = d.back();
        } else {
            lo = std::min(lo, d.front());
            hi = std::max(hi, d.back());
        }
    }
    std::vector<int> out;
    for (int k = lo - pad; k <= hi + pad; ++k) out.push_back(k);
    return out;
}

}  // namespace detail

// Convenient block accessors sized against explicit source/target cospans.
struct MorphismView {
    const CospanMorphism& m;
    const FilteredCospan& src;
    const FilteredCospan& dst;

    SparseMatrix a_down(int k) const {
        return detail::get_block(m.alpha_down, k, src.field(), dst.down().count(k - m.degree), src.down().count(k));
    }
    SparseMatrix a_up(int k) const {
        return detail::get_block(m.alpha_up, k, src.field(), dst.up().count(k - m.degree), src.up().count(k));
    }
    SparseMatrix a_mid(int k) const {
        return detail::get_block(m.alpha, k, src.field(), dst.mid().count(k - m.degree), src.mid().count(k));
    }
    SparseMatrix k_down(int k) const {
        return detail::get_block(m.K_down, k, src.field(), dst.mid().count(k - m.degree + 1), src.down().count(k));
    }
    SparseMatrix k_up(int k) const {
        return detail::get_block(m.K_up, k, src.field(), dst.mid().count(k - m.degree + 1), src.up().count(k));
    }
};

inline CospanMorphism identity_morphism(const FilteredCospan& c) {
    CospanMorphism id;
    for (int k : c.degrees()) {
        detail::put_block(id.alpha_down, k, SparseMatrix::identity(c.field(), c.down().count(k)));
        detail::put_block(id.alpha_up, k, SparseMatrix::identity(c.field(), c.up().count(k)));
        detail::put_block(id.alpha, k, SparseMatrix::identity(c.field(), c.mid().count(k)));
    }
    return id;
}

inline CospanMorphism morphism_difference(const CospanMorphism& x, const CospanMorphism& y,
                                          const FilteredCospan& src, const FilteredCospan& dst) {
    if (x.degree != y.degree) throw ShapeError("morphism difference degree mismatch");
    CospanMorphism out;
    out.degree = x.degree;
    MorphismView vx{x, src, dst}, vy{y, src, dst};
    for (int k : detail::degree_window(src, dst)) {
        detail::put_block(out.alpha_down, k, vx.a_down(k) - vy.a_down(k));
        detail::put_block(out.alpha_up, k, vx.a_up(k) - vy.a_up(k));
        detail::put_block(out.alpha, k, vx.a_mid(k) - vy.a_mid(k));
        detail::put_block(out.K_down, k, vx.k_down(k) - vy.k_down(k));
        detail::put_block(out.K_up, k, vx.k_up(k) - vy.k_up(k));
    }
    return out;
}

// Composition of b : mid -> dst after a : src -> mid; the K parts compose as
// L o alpha + beta o K.
inline CospanMorphism compose(const CospanMorphism& b, const CospanMorphism& a, const FilteredCospan& src,
                              const FilteredCospan& mid, const FilteredCospan& dst) {
    CospanMorphism out;
    out.degree = a.degree + b.degree;
    MorphismView va{a, src, mid}, vb{b, mid, dst};
    for (int k : detail::degree_window(src, dst)) {
        const int j = k - a.degree;
        detail::put_block(out.alpha_down, k, vb.a_down(j) * va.a_down(k));
        detail::put_block(out.alpha_up, k, vb.a_up(j) * va.a_up(k));
        detail::put_block(out.alpha, k, vb.a_mid(j) * va.a_mid(k));
        detail::put_block(out.K_down, k, vb.k_down(j) * va.a_down(k) + vb.a_mid(j + 1) * va.k_down(k));
        detail::put_block(out.K_up, k, vb.k_up(j) * va.a_up(k) + vb.a_mid(j + 1) * va.k_up(k));
    }
    return out;
}

// The dg differential, with the printed (-1)^m signs.
inline CospanMorphism differential(const CospanMorphism& m, const FilteredCospan& src,
                                   const FilteredCospan& dst) {
    CospanMorphism out;
    out.degree = m.degree + 1;
    MorphismView v{m, src, dst};
    const bool odd = (m.degree % 2) != 0;
    auto sgn = [&](SparseMatrix mat) { return odd ? mat.scaled(-Scalar::one(src.field())) : mat; };
    for (int k : detail::degree_window(src, dst)) {
        const int j = k - m.degree;
        // -d o alpha + (-1)^m alpha o d on the filtered sides
        detail::put_block(out.alpha_down, k,
                          sgn(v.a_down(k - 1) * src.down().boundary(k)) - dst.down().boundary(j) * v.a_down(k));
        detail::put_block(out.alpha_up, k,
                          sgn(v.a_up(k - 1) * src.up().boundary(k)) - dst.up().boundary(j) * v.a_up(k));
        // d o alpha - (-1)^m alpha o d on the mid complex
        detail::put_block(out.alpha, k,
                          dst.mid().boundary(j) * v.a_mid(k) - sgn(v.a_mid(k - 1) * src.mid().boundary(k)));
        // phi o alpha - (-1)^m alpha o psi + d o K + (-1)^m K o d
        detail::put_block(out.K_down, k,
                          dst.psi_down(j) * v.a_down(k) - sgn(v.a_mid(k) * src.psi_down(k)) +
                              dst.mid().boundary(j + 1) * v.k_down(k) + sgn(v.k_down(k - 1) * src.down().boundary(k)));
        detail::put_block(out.K_up, k,
                          dst.psi_up(j) * v.a_up(k) - sgn(v.a_mid(k) * src.psi_up(k)) +
                              dst.mid().boundary(j + 1) * v.k_up(k) + sgn(v.k_up(k - 1) * src.up().boundary(k)));
    }
    return out;
}

namespace detail {

// Flat enumeration of the matrix entries of a degree-d morphism space between two
// fixed cospans, used to pose "is this tuple a coboundary" as a linear system.
struct EntryIndexer {
    struct Block {
        int family;  // 0 a_down, 1 a_up, 2 a_mid, 3 K_down, 4 K_up
        int k, rows, cols, offset;
    };
    std::vector<Block> blocks;
    int total = 0;

    EntryIndexer(const FilteredCospan& src, const FilteredCospan& dst, int d) {
        for (int k : degree_window(src, dst)) {
            add(0, k, dst.down().count(k - d), src.down().count(k));
            add(1, k, dst.up().count(k - d), src.up().count(k));
            add(2, k, dst.mid().count(k - d), src.mid().count(k));
            add(3, k, dst.mid().count(k - d + 1), src.down().count(k));
            add(4, k, dst.mid().count(k - d + 1), src.up().count(k));
        }
    }
    void add(int family, int k, int rows, int cols) {
        if (rows == 0 || cols == 0) return;
        blocks.push_back({family, k, rows, cols, total});
        total += rows * cols;
    }

    std::vector<Scalar> flatten(const CospanMorphism& m, const FilteredCospan& src,
                                const FilteredCospan& dst, FieldId f) const {
        std::vector<Scalar> out(total, Scalar::zero(f));
        MorphismView v{m, src, dst};
        for (const auto& b : blocks) {
            SparseMatrix mat = b.family == 0   ? v.a_down(b.k)
                               : b.family == 1 ? v.a_up(b.k)
                               : b.family == 2 ? v.a_mid(b.k)
                               : b.family == 3 ? v.k_down(b.k)
                                               : v.k_up(b.k);
            for (int j = 0; j < b.cols; ++j)
                for (const auto& [r, val] : mat.column(j)) out[b.offset + j * b.rows + r] = val;
        }
        return out;
    }
};

inline void set_morphism_entry(CospanMorphism& m, const FilteredCospan& src, const FilteredCospan& dst,
                               int family, int k, int i, int j, const Scalar& v) {
    const int d = m.degree;
    auto ensure = [&](std::map<int, SparseMatrix>& fam, int rows, int cols) -> SparseMatrix& {
        auto it = fam.find(k);
        if (it == fam.end()) it = fam.emplace(k, SparseMatrix(v.field(), rows, cols)).first;
        return it->second;
    };
    switch (family) {
        case 0: ensure(m.alpha_down, dst.down().count(k - d), src.down().count(k)).set(i, j, v); break;
        case 1: ensure(m.alpha_up, dst.up().count(k - d), src.up().count(k)).set(i, j, v); break;
        case 2: ensure(m.alpha, dst.mid().count(k - d), src.mid().count(k)).set(i, j, v); break;
        case 3: ensure(m.K_down, dst.mid().count(k - d + 1), src.down().count(k)).set(i, j, v); break;
        case 4: ensure(m.K_up, dst.mid().count(k - d + 1), src.up().count(k)).set(i, j, v); break;
    }
}

}  // namespace detail

// Decides whether diff = delta(h) for some filtration-respecting morphism h of
// degree diff.degree - 1, by a linear solve over the field.
inline bool is_coboundary(const CospanMorphism& diff, const FilteredCospan& src, const FilteredCospan& dst,
                          const LevelOps& ops) {
    const FieldId f = src.field();
    const int hd = diff.degree - 1;
    detail::EntryIndexer unknowns(src, dst, hd);
    detail::EntryIndexer rows(src, dst, diff.degree);

    // Keep only unknown entries compatible with the filtration constraints.
    std::vector<std::tuple<int, int, int, int>> allowed;  // family, k, i, j
    for (const auto& b : unknowns.blocks) {
        for (int j = 0; j < b.cols; ++j)
            for (int i = 0; i < b.rows; ++i) {
                if (b.family == 1 && !ops.leq(dst.up().level_of(b.k - hd, i), src.up().level_of(b.k, j)))
                    continue;
                if (b.family == 0 && !ops.leq(src.down().level_of(b.k, j), dst.down().level_of(b.k - hd, i)))
                    continue;
                allowed.push_back({b.family, b.k, i, j});
            }
    }

    SparseMatrix system(f, rows.total, static_cast<int>(allowed.size()));
    for (int u = 0; u < static_cast<int>(allowed.size()); ++u) {
        auto [family, k, i, j] = allowed[u];
        CospanMorphism unit;
        unit.degree = hd;
        detail::set_morphism_entry(unit, src, dst, family, k, i, j, Scalar::one(f));
        auto col = rows.flatten(differential(unit, src, dst), src, dst, f);
        for (int r = 0; r < rows.total; ++r)
            if (!col[r].is_zero()) system.set(r, u, col[r]);
    }
    return system.solve_in_span(rows.flatten(diff, src, dst, f)).has_value();
}

// Filtration preservation (the condition for a tuple to be a morphism at all):
// alpha_up may only lower ascending levels and alpha_down may only raise
// descending ones, checked entrywise on the orthogonal generator bases.
inline bool respects_filtration(const CospanMorphism& m, const FilteredCospan& src,
                                const FilteredCospan& dst, const LevelOps& ops, std::string* why = nullptr) {
    MorphismView v{m, src, dst};
    for (int k : detail::degree_window(src, dst)) {
        const int j = k - m.degree;
        auto au = v.a_up(k);
        for (int col = 0; col < au.cols(); ++col)
            for (const auto& [row, val] : au.column(col))
                if (!ops.leq(dst.up().level_of(j, row), src.up().level_of(k, col))) {
                    if (why)
                        *why = "alpha_up raises the level of " + src.up().generator(k, col).name +
                               " in degree " + std::to_string(k);
                    return false;
                }
        auto ad = v.a_down(k);
        for (int col = 0; col < ad.cols(); ++col)
            for (const auto& [row, val] : ad.column(col))
                if (!ops.leq(src.down().level_of(k, col), dst.down().level_of(j, row))) {
                    if (why)
                        *why = "alpha_down lowers the level of " + src.down().generator(k, col).name +
                               " in degree " + std::to_string(k);
                    return false;
                }
    }
    return true;
}

// Checks that (fwd, bwd) witnesses an eps-interleaving between C and X: both maps
// are filtration-respecting chain-level morphisms into the flowed targets, and both
// round trips agree with the flow comparison morphism (1,1,1,0,0) up to coboundary.
inline bool verify_interleaving(const FilteredCospan& C, const FilteredCospan& X, const Rational& eps,
                                const LevelOps& ops, const CospanMorphism& fwd, const CospanMorphism& bwd,
                                std::string* why = nullptr) {
    if (eps < 0) throw std::invalid_argument("verify_interleaving needs eps >= 0");
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (fwd.degree != 0 || bwd.degree != 0) return fail("interleaving maps must have degree 0");
    const FilteredCospan TX = flow_shift(X, eps, ops);
    const FilteredCospan TC = flow_shift(C, eps, ops);
    const FilteredCospan T2X = flow_shift(X, 2 * eps, ops);
    const FilteredCospan T2C = flow_shift(C, 2 * eps, ops);

    std::string sub;
    if (!respects_filtration(fwd, C, TX, ops, &sub)) return fail("fwd: " + sub);
    if (!respects_filtration(bwd, X, TC, ops, &sub)) return fail("bwd: " + sub);
    if (!differential(fwd, C, TX).is_zero()) return fail("fwd is not closed (delta != 0)");
    if (!differential(bwd, X, TC).is_zero()) return fail("bwd is not closed (delta != 0)");

    // The flow acts as the identity on morphism tuples, so bwd also represents
    // T_eps(bwd) : TX -> T2C, and similarly for fwd.
    auto round_c = compose(bwd, fwd, C, TX, T2C);
    auto diff_c = morphism_difference(round_c, identity_morphism(C), C, T2C);
    if (!is_coboundary(diff_c, C, T2C, ops))
        return fail("bwd o fwd is not homotopic to the flow comparison map on C");
    auto round_x = compose(fwd, bwd, X, TC, T2X);
    auto diff_x = morphism_difference(round_x, identity_morphism(X), X, T2X);
    if (!is_coboundary(diff_x, X, T2X, ops))
        return fail("fwd o bwd is not homotopic to the flow comparison map on X");
    return true;
}

}  // namespace interlevel
