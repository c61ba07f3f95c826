#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.

#include <random>
#include <vector>

#include "interlevel/filtered_complex.hpp"

namespace testsupport {

using namespace interlevel;

// 0-horn of the standard 3-simplex with vertex values (1, 0, 0, -1): vertices
// v0..v3, all six edges, and the three triangles through v0.
inline FilteredComplex horn_complex(Flavor flavor, FieldId f, const Rational& lambda) {
    FilteredComplex c(flavor, f, lambda);
    const long long vf[4] = {1, 0, 0, -1};
    // edge endpoints in lexicographic order
    const int ev[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const int tri[3][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}};

    auto lvl = [&](std::initializer_list<int> vs) {
        long long mx = -100, mn = 100;
        for (int v : vs) {
            mx = std::max(mx, vf[v]);
            mn = std::min(mn, vf[v]);
        }
        return Level(rat(flavor == Flavor::Descending ? mn : mx));
    };

    for (int v = 0; v < 4; ++v) c.add_generator(0, "v" + std::to_string(v), Level(rat(vf[v])));
    for (int e = 0; e < 6; ++e)
        c.add_generator(1, "e" + std::to_string(e + 1), lvl({ev[e][0], ev[e][1]}));
    for (int t = 0; t < 3; ++t)
        c.add_generator(2, "s" + std::to_string(t + 1), lvl({tri[t][0], tri[t][1], tri[t][2]}));

    SparseMatrix d1(f, 4, 6);
    for (int e = 0; e < 6; ++e) {
        d1.set(ev[e][1], e, Scalar::one(f));
        d1.set(ev[e][0], e, -Scalar::one(f));
    }
    c.set_boundary(1, d1);

    auto edge_index = [&](int a, int b) {
        for (int e = 0; e < 6; ++e)
            if (ev[e][0] == a && ev[e][1] == b) return e;
        return -1;
    };
    SparseMatrix d2(f, 6, 3);
    for (int t = 0; t < 3; ++t) {
        const int* s = tri[t];
        d2.set(edge_index(s[1], s[2]), t, Scalar::one(f));
        d2.set(edge_index(s[0], s[2]), t, -Scalar::one(f));
        d2.set(edge_index(s[0], s[1]), t, Scalar::one(f));
    }
    c.set_boundary(2, d2);
    return c;
}

// dim H_k of the sublevel (ascending) or superlevel (descending) restriction at
// threshold t, by direct rank arithmetic. Independent of decompose_filtered.
inline int homology_dim_at(const FilteredComplex& c, int k, const Level& t, const LevelOps& ops) {
    auto keep = [&](int deg) {
        std::vector<int> map(c.count(deg), -1);
        int n = 0;
        for (int i = 0; i < c.count(deg); ++i) {
            const Level& l = c.level_of(deg, i);
            const bool in = c.flavor() == Flavor::Descending ? ops.leq(t, l) : ops.leq(l, t);
            if (in) map[i] = n++;
        }
        return std::pair{map, n};
    };
    auto [mk, nk] = keep(k);
    auto [mkm, nkm] = keep(k - 1);
    auto [mkp, nkp] = keep(k + 1);
    auto dk = c.boundary(k).submatrix(mkm, nkm, mk, nk);
    auto dk1 = c.boundary(k + 1).submatrix(mk, nk, mkp, nkp);
    return (nk - dk.rank()) - dk1.rank();
}

inline int homology_dim(const FilteredComplex& c, int k) {
    const int nk = c.count(k);
    return (nk - c.boundary(k).rank()) - c.boundary(k + 1).rank();
}

// Replaces the degree-k basis by the columns of P (invertible, filtered):
// boundary matrices become d_k * P and P^{-1} * d_{k+1}.
inline void basis_change(FilteredComplex& c, int k, const SparseMatrix& P) {
    const int n = c.count(k);
    SparseMatrix Pinv(P.field(), n, n);
    for (int i = 0; i < n; ++i) {
        std::vector<Scalar> e(n, Scalar::zero(P.field()));
        e[i] = Scalar::one(P.field());
        auto x = P.solve_in_span(e);
        if (!x) throw std::invalid_argument("basis_change: singular matrix");
        for (int r = 0; r < n; ++r)
            if (!(*x)[r].is_zero()) Pinv.set(r, i, (*x)[r]);
    }
    c.set_boundary(k, c.boundary(k) * P);
    c.set_boundary(k + 1, Pinv * c.boundary(k + 1));
}

// Random valid ascending/descending complex: a random filtered change of basis
// applied to a random direct sum of interval pieces and essential generators.
inline FilteredComplex random_filtered_complex(Flavor flavor, FieldId f, const Rational& lambda,
                                               int max_gens, std::mt19937_64& rng, const LevelOps& ops) {
    FilteredComplex c(flavor, f, lambda);
    std::uniform_int_distribution<int> deg(0, 2), num(-9, 9), coin(0, 1);
    auto rand_level = [&]() { return Level(lambda * rat(num(rng), 10)); };
    int made = 0, idx = 0;
    const bool desc = flavor == Flavor::Descending;
    while (made + 1 < max_gens) {
        int k = deg(rng);
        if (coin(rng)) {  // interval piece: x in degree k, y in degree k+1, dy = x
            Level lx = rand_level(), ly = rand_level();
            if (desc ? ops.less(lx, ly) : ops.less(ly, lx)) std::swap(lx, ly);
            int xi = c.add_generator(k, "g" + std::to_string(idx++), lx);
            int yi = c.add_generator(k + 1, "g" + std::to_string(idx++), ly);
            c.set_boundary_entry(k + 1, xi, yi, Scalar::one(f));
            made += 2;
        } else {
            c.add_generator(k, "g" + std::to_string(idx++), rand_level());
            made += 1;
        }
    }
    for (int k : c.degrees()) {
        const int n = c.count(k);
        SparseMatrix P = SparseMatrix::identity(f, n);
        for (int rep = 0; rep < 2 * n; ++rep) {
            int i = static_cast<int>(rng() % n), j = static_cast<int>(rng() % n);
            if (i == j) continue;
            const Level &li = c.level_of(k, i), &lj = c.level_of(k, j);
            const bool ok = desc ? ops.leq(lj, li) : ops.leq(li, lj);
            if (!ok) continue;
            SparseMatrix E = SparseMatrix::identity(f, n);
            E.set(i, j, Scalar(f, 1 + static_cast<long long>(rng() % 2)));
            P = P * E;
        }
        basis_change(c, k, P);
    }
    return c;
}

}  // namespace testsupport
