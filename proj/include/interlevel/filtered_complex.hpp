#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "interlevel/level.hpp"
#include "interlevel/sparse_matrix.hpp"

namespace interlevel {

struct DecompositionError : std::runtime_error {
    explicit DecompositionError(const std::string& what) : std::runtime_error(what) {}
};

enum class Flavor { Ascending, Descending, Unfiltered };

struct Generator {
    std::string name;
    Level level;
};

// Finitely generated graded chain complex with per-generator filtration levels.
// Generator bases are orthogonal by construction. Degrees are stored sparsely;
// any degree outside the populated range is zero.
class FilteredComplex {
  public:
    FilteredComplex() : flavor_(Flavor::Unfiltered), lambda_(2) {}
    FilteredComplex(Flavor flavor, FieldId field, Rational lambda)
        : flavor_(flavor), field_(field), lambda_(std::move(lambda)) {}

    Flavor flavor() const { return flavor_; }
    const FieldId& field() const { return field_; }
    const Rational& lambda() const { return lambda_; }

    int add_generator(int degree, std::string name, Level level = Level(0)) {
        scratch_.clear();
        auto& g = gens_[degree];
        g.push_back({std::move(name), std::move(level)});
        return static_cast<int>(g.size()) - 1;
    }

    int count(int degree) const {
        auto it = gens_.find(degree);
        return it == gens_.end() ? 0 : static_cast<int>(it->second.size());
    }
    const Generator& generator(int degree, int i) const { return gens_.at(degree).at(i); }
    const Level& level_of(int degree, int i) const { return gens_.at(degree).at(i).level; }

    int degree_min() const { return gens_.empty() ? 0 : gens_.begin()->first; }
    int degree_max() const { return gens_.empty() ? -1 : gens_.rbegin()->first; }
    bool empty() const {
        for (const auto& [k, g] : gens_)
            if (!g.empty()) return false;
        return true;
    }
    std::vector<int> degrees() const {
        std::vector<int> out;
        for (const auto& [k, g] : gens_)
            if (!g.empty()) out.push_back(k);
        return out;
    }
    int total_generators() const {
        int n = 0;
        for (const auto& [k, g] : gens_) n += static_cast<int>(g.size());
        return n;
    }

    // Boundary from degree k to degree k-1; zero matrix when unset. Stored matrices
    // are padded on access if generators were added after entries were set.
    const SparseMatrix& boundary(int degree) const {
        auto it = bnd_.find(degree);
        if (it != bnd_.end()) {
            sync(it->second, degree);
            return it->second;
        }
        auto [jt, inserted] = scratch_.try_emplace(degree, SparseMatrix(field_, count(degree - 1), count(degree)));
        if (!inserted) sync(jt->second, degree);
        return jt->second;
    }
    void set_boundary(int degree, SparseMatrix m) {
        if (m.rows() != count(degree - 1) || m.cols() != count(degree))
            throw ShapeError("boundary shape mismatch in degree " + std::to_string(degree));
        bnd_[degree] = std::move(m);
    }
    void set_boundary_entry(int degree, int row, int col, const Scalar& v) {
        auto it = bnd_.find(degree);
        if (it == bnd_.end())
            it = bnd_.emplace(degree, SparseMatrix(field_, count(degree - 1), count(degree))).first;
        sync(it->second, degree);
        it->second.set(row, col, v);
    }

    // Filtration value of a chain vector: max generator level over the support for
    // ascending complexes, min for descending. Returns nullopt for the zero vector
    // (representing -inf ascending / +inf descending).
    std::optional<Level> filtration_of(int degree, const std::vector<Scalar>& v, const LevelOps& ops) const {
        if (static_cast<int>(v.size()) != count(degree)) throw ShapeError("chain vector degree mismatch");
        std::optional<Level> best;
        for (int i = 0; i < count(degree); ++i) {
            if (v[i].is_zero()) continue;
            const Level& l = level_of(degree, i);
            if (!best)
                best = l;
            else
                best = (flavor_ == Flavor::Descending) ? ops.min(*best, l) : ops.max(*best, l);
        }
        return best;
    }

    // Orthogonality test after Proposition-style level counting: a linearly
    // independent family is orthogonal iff for every level value t the number of
    // members at level t equals dim(span^{<=t}) - dim(span^{<t}) inside the span.
    bool is_orthogonal_basis(int degree, const std::vector<std::vector<Scalar>>& vectors,
                             const LevelOps& ops) const {
        if (vectors.empty()) return true;
        const int n = count(degree);
        const int m = static_cast<int>(vectors.size());
        SparseMatrix M(field_, n, m);
        for (int j = 0; j < m; ++j) {
            if (static_cast<int>(vectors[j].size()) != n) throw ShapeError("mixed degrees in orthogonality test");
            for (int i = 0; i < n; ++i)
                if (!vectors[j][i].is_zero()) M.set(i, j, vectors[j][i]);
        }
        if (M.rank() != m) return false;

        const bool desc = flavor_ == Flavor::Descending;
        auto key = [&](const Level& l) { return desc ? l.negated() : l; };

        std::vector<Level> member_levels;
        for (const auto& v : vectors) {
            auto l = filtration_of(degree, v, ops);
            if (!l) return false;
            member_levels.push_back(key(*l));
        }
        std::vector<int> idx(m);
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return ops.less(member_levels[a], member_levels[b]); });

        // dim of {v in span : level(v) <= t} = m - rank of rows with generator level > t.
        auto dim_le = [&](const Level& t, bool strict) {
            std::vector<int> row_map(n, -1);
            int kept = 0;
            for (int i = 0; i < n; ++i) {
                const Level gl = key(level_of(degree, i));
                const int c = ops.compare(gl, t);
                if (c > 0 || (strict && c == 0)) row_map[i] = kept++;
            }
            std::vector<int> col_map(m);
            std::iota(col_map.begin(), col_map.end(), 0);
            return m - M.submatrix(row_map, kept, col_map, m).rank();
        };

        for (int s = 0; s < m;) {
            int e = s;
            while (e < m && ops.equal(member_levels[idx[e]], member_levels[idx[s]])) ++e;
            const Level& t = member_levels[idx[s]];
            if (dim_le(t, false) - dim_le(t, true) != e - s) return false;
            s = e;
        }
        return true;
    }

    FilteredComplex conjugated() const {
        FilteredComplex out(flavor_ == Flavor::Ascending ? Flavor::Descending : Flavor::Ascending, field_, lambda_);
        for (const auto& [k, g] : gens_)
            for (const auto& gen : g) out.add_generator(k, gen.name, gen.level.negated());
        for (const auto& [k, b] : bnd_) out.set_boundary(k, b);
        return out;
    }

    // Sub-quotient restriction to a generator subset (per degree boolean masks).
    FilteredComplex restricted(const std::map<int, std::vector<bool>>& keep) const {
        FilteredComplex out(flavor_, field_, lambda_);
        std::map<int, std::vector<int>> maps;
        for (const auto& [k, g] : gens_) {
            auto it = keep.find(k);
            std::vector<int> m(g.size(), -1);
            int cnt = 0;
            for (size_t i = 0; i < g.size(); ++i) {
                const bool on = it != keep.end() && it->second.at(i);
                if (on) {
                    m[i] = cnt++;
                    out.add_generator(k, g[i].name, g[i].level);
                }
            }
            maps[k] = std::move(m);
        }
        for (const auto& [k, b] : bnd_) {
            auto rm = maps.count(k - 1) ? maps[k - 1] : std::vector<int>(count(k - 1), -1);
            auto cm = maps.count(k) ? maps[k] : std::vector<int>(count(k), -1);
            out.set_boundary(k, b.submatrix(rm, out.count(k - 1), cm, out.count(k)));
        }
        return out;
    }

    std::vector<std::string> validate(const LevelOps& ops) const {
        std::vector<std::string> report;
        for (const auto& [k, b] : bnd_) {
            const auto& lower = boundary(k - 1);
            if (!(lower * b).is_zero())
                report.push_back("d o d != 0 between degrees " + std::to_string(k) + " and " +
                                 std::to_string(k - 2));
        }
        if (flavor_ != Flavor::Unfiltered) {
            for (const auto& [k, g] : gens_) {
                for (size_t i = 0; i < g.size(); ++i)
                    if (!ops.strictly_inside(g[i].level))
                        report.push_back("generator " + g[i].name + " violates the Lambda bound");
                const auto& b = boundary(k);
                for (int j = 0; j < b.cols(); ++j) {
                    auto img = filtration_of(k - 1, b.column_dense(j), ops);
                    if (!img) continue;
                    const Level& src = level_of(k, j);
                    const bool ok = flavor_ == Flavor::Ascending ? ops.leq(*img, src) : ops.leq(src, *img);
                    if (!ok)
                        report.push_back("boundary of " + g[j].name + " violates filtration monotonicity");
                }
            }
        }
        return report;
    }

  private:
    void sync(SparseMatrix& m, int degree) const {
        const int r = count(degree - 1), c = count(degree);
        if (m.rows() == r && m.cols() == c) return;
        if (m.rows() > r || m.cols() > c) throw ShapeError("boundary larger than generator count");
        SparseMatrix bigger(field_, r, c);
        for (int j = 0; j < m.cols(); ++j)
            for (const auto& [row, v] : m.column(j)) bigger.set(row, j, v);
        m = std::move(bigger);
    }

    Flavor flavor_;
    FieldId field_;
    Rational lambda_;
    mutable std::map<int, SparseMatrix> bnd_;
    std::map<int, std::vector<Generator>> gens_;
    mutable std::map<int, SparseMatrix> scratch_;
};

// One standard interval summand of a filtered complex: a pair (birth, death) in
// a fixed degree, or an essential class when death is absent.
struct IntervalModule {
    int degree;
    Level birth;
    std::optional<Level> death;
    bool degenerate = false;  // birth == death; dropped at summand emission
};

struct DegreeBases {
    std::vector<std::vector<Scalar>> A;  // mapped bijectively onto B one degree down
    std::vector<std::vector<Scalar>> B;  // boundary part of the kernel
    std::vector<std::vector<Scalar>> H;  // essential cycles at spectral-invariant level
};

struct FiltrationDecomposition {
    std::vector<IntervalModule> pairs;       // finite death, birth <= death (asc) resp. >= (desc)
    std::vector<IntervalModule> essentials;  // no death
    std::map<int, DegreeBases> bases;
};

namespace detail {

// Order positions for one degree: ascending level, ties by insertion index; for
// descending complexes the level order is reversed.
inline std::vector<int> level_order(const FilteredComplex& c, int degree, const LevelOps& ops) {
    const int n = c.count(degree);
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    const bool desc = c.flavor() == Flavor::Descending;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        const Level la = desc ? c.level_of(degree, a).negated() : c.level_of(degree, a);
        const Level lb = desc ? c.level_of(degree, b).negated() : c.level_of(degree, b);
        return ops.less(la, lb);
    });
    return idx;
}

}  // namespace detail

// Persistence decomposition of a single filtered complex via column reduction with
// columns and pivot rows ordered by (level, insertion index). The resulting
// A/B/H bases are orthogonal in every degree; this is asserted, not assumed.
inline FiltrationDecomposition decompose_filtered(const FilteredComplex& c, const LevelOps& ops) {
    if (c.flavor() == Flavor::Unfiltered)
        throw std::invalid_argument("decompose_filtered needs an ascending or descending complex");
    {
        auto report = c.validate(ops);
        if (!report.empty()) throw std::invalid_argument("invalid complex: " + report.front());
    }

    FiltrationDecomposition out;
    std::map<int, Reduction> red;
    for (int k : c.degrees()) {
        red.emplace(k, c.boundary(k).column_reduce(detail::level_order(c, k, ops),
                                                   detail::level_order(c, k - 1, ops)));
        if (!red.count(k + 1))
            red.emplace(k + 1, c.boundary(k + 1).column_reduce(detail::level_order(c, k + 1, ops),
                                                               detail::level_order(c, k, ops)));
    }

    for (int k : c.degrees()) {
        auto& bases = out.bases[k];
        const auto& own = red.at(k);
        // A_k: columns with a surviving boundary, in pivot order so that the i-th
        // element maps to the i-th element of B_{k-1}; the pair lives one degree down.
        for (const auto& [row, col] : own.pivots) {
            bases.A.push_back(own.basis.column_dense(col));
            auto birth = c.filtration_of(k - 1, own.reduced.column_dense(col), ops);
            const Level death = *c.filtration_of(k, bases.A.back(), ops);
            IntervalModule iv{k - 1, *birth, death, ops.equal(*birth, death)};
            out.pairs.push_back(std::move(iv));
        }
        // B_k and the pivot rows they occupy come from the reduction one degree up.
        std::vector<bool> is_pivot(c.count(k), false);
        if (red.count(k + 1)) {
            const auto& up = red.at(k + 1);
            for (const auto& [row, col] : up.pivots) {
                is_pivot[row] = true;
                bases.B.push_back(up.reduced.column_dense(col));
            }
        }
        // H_k: cycle columns whose index is not a pivot row above.
        for (int j = 0; j < c.count(k); ++j) {
            if (!own.reduced.column(j).empty() || is_pivot[j]) continue;
            bases.H.push_back(own.basis.column_dense(j));
            out.essentials.push_back({k, *c.filtration_of(k, bases.H.back(), ops), std::nullopt, false});
        }

        std::vector<std::vector<Scalar>> all;
        all.insert(all.end(), bases.A.begin(), bases.A.end());
        all.insert(all.end(), bases.B.begin(), bases.B.end());
        all.insert(all.end(), bases.H.begin(), bases.H.end());
        if (static_cast<int>(all.size()) != c.count(k))
            throw DecompositionError("basis count mismatch in degree " + std::to_string(k));
        if (!c.is_orthogonal_basis(k, all, ops))
            throw DecompositionError("constructed basis failed orthogonality in degree " + std::to_string(k));
    }
    return out;
}

}  // namespace interlevel
