#include "syncorr/polytope.hpp"

#include <algorithm>
#include <cstdint>

namespace syncorr {

const char* bell_name(BellInequality b) {
    switch (b) {
        case BellInequality::None: return "none";
        case BellInequality::J0: return "J0";
        case BellInequality::J1: return "J1";
        case BellInequality::J2: return "J2";
        case BellInequality::J3: return "J3";
    }
    return "none";
}

HPolytope::HPolytope(std::size_t dim_, std::vector<std::pair<RatVec, Rational>> ineqs,
                     std::vector<std::pair<RatVec, Rational>> eqs)
    : dim(dim_), inequalities(std::move(ineqs)), equations(std::move(eqs)) {
    auto all_zero = [](const RatVec& a) {
        for (const Rational& x : a)
            if (x != 0) return false;
        return true;
    };
    for (const auto& [a, b] : inequalities) {
        if (a.size() != dim) throw DimensionMismatch("inequality width");
        if (all_zero(a) && b < 0) throw Infeasible("constraint 0 <= negative");
    }
    for (const auto& [c, e] : equations) {
        if (c.size() != dim) throw DimensionMismatch("equation width");
        if (all_zero(c) && e != 0) throw Infeasible("constraint 0 = nonzero");
    }
}

namespace {

/// Incremental double description state over the homogenization cone in
/// R^{dim+1}: generators = lineality basis + extreme rays, with per-ray
/// bitmasks of which processed rows are active (tight).
class DoubleDescription {
public:
    explicit DoubleDescription(std::size_t ambient) : ambient_(ambient) {
        for (std::size_t i = 0; i < ambient_; ++i) {
            RatVec e(ambient_, Rational(0));
            e[i] = 1;
            lineality_.push_back(std::move(e));
        }
    }

    void add_row(const RatVec& row, bool is_equality) {
        // 1) A lineality vector off the hyperplane absorbs the constraint.
        std::size_t hit = lineality_.size();
        for (std::size_t i = 0; i < lineality_.size(); ++i)
            if (rat_dot(row, lineality_[i]) != 0) {
                hit = i;
                break;
            }
        if (hit != lineality_.size()) {
            RatVec pivot = std::move(lineality_[hit]);
            lineality_.erase(lineality_.begin() + static_cast<std::ptrdiff_t>(hit));
            const Rational hp = rat_dot(row, pivot);
            auto flatten = [&](RatVec& v) {
                const Rational hv = rat_dot(row, v);
                if (hv == 0) return;
                const Rational f = hv / hp;
                for (std::size_t j = 0; j < ambient_; ++j) v[j] -= f * pivot[j];
            };
            for (RatVec& l : lineality_) flatten(l);
            for (Ray& r : rays_) {
                flatten(r.vec);
                r.active.push_back(true);
            }
            if (!is_equality) {
                if (hp < 0)
                    for (Rational& x : pivot) x = -x;
                scale_to_coprime_integers(pivot);
                Ray nr;
                nr.vec = std::move(pivot);
                nr.active = make_mask(nr.vec);
                nr.active.push_back(false);
                rays_.push_back(std::move(nr));
            }
            processed_.push_back(row);
            return;
        }

        // 2) Standard double-description step on the rays.
        std::vector<std::size_t> plus, zero, minus;
        std::vector<Rational> dots(rays_.size());
        for (std::size_t i = 0; i < rays_.size(); ++i) {
            dots[i] = rat_dot(row, rays_[i].vec);
            if (dots[i] > 0)
                plus.push_back(i);
            else if (dots[i] < 0)
                minus.push_back(i);
            else
                zero.push_back(i);
        }

        // Combine adjacent (+,-) pairs into rays on the hyperplane.
        const std::size_t target =
            ambient_ - lineality_.size() - 2;  // rank of an edge's tight rows
        std::vector<Ray> combos;
        for (std::size_t ip : plus)
            for (std::size_t im : minus) {
                if (!adjacent(rays_[ip], rays_[im], target)) continue;
                RatVec combo(ambient_);
                const Rational a = dots[ip], b = dots[im];  // a > 0 > b
                for (std::size_t j = 0; j < ambient_; ++j)
                    combo[j] = a * rays_[im].vec[j] - b * rays_[ip].vec[j];
                bool zerovec = true;
                for (const Rational& x : combo)
                    if (x != 0) {
                        zerovec = false;
                        break;
                    }
                if (zerovec) continue;
                scale_to_coprime_integers(combo);
                Ray nr;
                nr.vec = std::move(combo);
                nr.active = make_mask(nr.vec);
                nr.active.push_back(true);
                combos.push_back(std::move(nr));
            }

        std::vector<Ray> next;
        auto keep = [&](std::size_t i, bool tight) {
            Ray r = std::move(rays_[i]);
            r.active.push_back(tight);
            next.push_back(std::move(r));
        };
        for (std::size_t i : zero) keep(i, true);
        if (!is_equality)
            for (std::size_t i : plus) keep(i, false);
        for (Ray& c : combos) next.push_back(std::move(c));
        rays_ = std::move(next);
        processed_.push_back(row);
    }

    const RatMat& lineality() const { return lineality_; }
    RatMat ray_vectors() const {
        RatMat out;
        out.reserve(rays_.size());
        for (const Ray& r : rays_) out.push_back(r.vec);
        return out;
    }

private:
    struct Ray {
        RatVec vec;
        std::vector<bool> active;  // one flag per processed row
    };

    std::size_t ambient_;
    RatMat lineality_;
    std::vector<Ray> rays_;
    RatMat processed_;

    std::vector<bool> make_mask(const RatVec& v) const {
        std::vector<bool> mask(processed_.size());
        for (std::size_t i = 0; i < processed_.size(); ++i)
            mask[i] = rat_dot(processed_[i], v) == 0;
        return mask;
    }

    bool adjacent(const Ray& p, const Ray& m, std::size_t target) const {
        RatMat common;
        for (std::size_t i = 0; i < processed_.size(); ++i)
            if (p.active[i] && m.active[i]) common.push_back(processed_[i]);
        if (common.size() < target) return false;
        return rat_rank(std::move(common)) == target;
    }
};

RatVec homogenize_inequality(const RatVec& a, const Rational& b) {
    // a.x <= b  becomes  b*x0 - a.x >= 0.
    RatVec row(a.size() + 1);
    row[0] = b;
    for (std::size_t i = 0; i < a.size(); ++i) row[i + 1] = -a[i];
    return row;
}

RatVec homogenize_equation(const RatVec& c, const Rational& e) {
    // c.x = e  becomes  c.x - e*x0 = 0.
    RatVec row(c.size() + 1);
    row[0] = -e;
    for (std::size_t i = 0; i < c.size(); ++i) row[i + 1] = c[i];
    return row;
}

}  // namespace

VPolytope dd_enumerate(const HPolytope& h) {
    const std::size_t ambient = h.dim + 1;

    RatMat eq_rows, ineq_rows;
    for (const auto& [c, e] : h.equations) eq_rows.push_back(homogenize_equation(c, e));
    for (const auto& [a, b] : h.inequalities) ineq_rows.push_back(homogenize_inequality(a, b));
    std::sort(eq_rows.begin(), eq_rows.end());
    std::sort(ineq_rows.begin(), ineq_rows.end());

    DoubleDescription dd(ambient);
    for (const RatVec& r : eq_rows) dd.add_row(r, true);
    RatVec x0(ambient, Rational(0));
    x0[0] = 1;
    dd.add_row(x0, false);
    for (const RatVec& r : ineq_rows) dd.add_row(r, false);

    if (!dd.lineality().empty()) throw Unbounded("feasible set contains a line");

    RatMat vertices;
    for (const RatVec& r : dd.ray_vectors()) {
        if (r[0] == 0) {
            std::string dir = "(";
            for (std::size_t i = 1; i < r.size(); ++i)
                dir += format_rational(r[i]) + (i + 1 < r.size() ? "," : ")");
            throw Unbounded("recession ray " + dir);
        }
        RatVec v(h.dim);
        for (std::size_t i = 0; i < h.dim; ++i) v[i] = r[i + 1] / r[0];
        vertices.push_back(std::move(v));
    }
    if (vertices.empty()) throw Infeasible("no feasible point");
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    return VPolytope{h.dim, std::move(vertices)};
}

std::size_t affine_dimension(const VPolytope& v) {
    if (v.vertices.empty()) throw EmptyPolytope("no vertices");
    RankAccumulator acc(v.dim);
    for (std::size_t i = 1; i < v.vertices.size(); ++i) {
        RatVec d(v.dim);
        for (std::size_t j = 0; j < v.dim; ++j) d[j] = v.vertices[i][j] - v.vertices[0][j];
        acc.add(std::move(d));
    }
    return acc.rank();
}

HPolytope facet_enumeration(const VPolytope& vp) {
    if (vp.vertices.empty()) throw EmptyPolytope("no vertices");
    const std::size_t d = vp.dim;
    const RatVec& v0 = vp.vertices.front();

    // Independent difference vectors spanning the affine hull.
    RatMat basis;       // rows b_1..b_k
    RatMat echelonbuf;  // incremental rank bookkeeping
    for (std::size_t i = 1; i < vp.vertices.size(); ++i) {
        RatVec diff(d);
        for (std::size_t j = 0; j < d; ++j) diff[j] = vp.vertices[i][j] - v0[j];
        if (rat_independent_of(basis, diff)) basis.push_back(std::move(diff));
    }
    const std::size_t k = basis.size();

    // Affine-hull equations: kernel vectors of the basis give c.x = c.v0.
    std::vector<std::pair<RatVec, Rational>> equations;
    for (RatVec& c : rat_nullspace(basis, d)) {
        scale_to_coprime_integers(c);
        for (const Rational& x : c)
            if (x != 0) {
                if (x < 0)
                    for (Rational& y : c) y = -y;
                break;
            }
        Rational e = rat_dot(c, v0);
        equations.emplace_back(std::move(c), std::move(e));
    }
    std::sort(equations.begin(), equations.end());

    if (k == 0) return HPolytope(d, {}, std::move(equations));

    // Gram matrix of the basis, for exact hull coordinates c = (BB^T)^{-1} B (x - v0).
    RatMat gram(k, RatVec(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) gram[i][j] = rat_dot(basis[i], basis[j]);

    auto hull_coords = [&](const RatVec& x) {
        RatVec rhs(k);
        for (std::size_t i = 0; i < k; ++i) {
            Rational s(0);
            for (std::size_t j = 0; j < d; ++j) s += basis[i][j] * (x[j] - v0[j]);
            rhs[i] = std::move(s);
        }
        auto sol = rat_solve(gram, rhs);
        if (!sol) throw NumericalFailure("gram system unexpectedly singular");
        return *sol;
    };

    RatMat coords;
    coords.reserve(vp.vertices.size());
    for (const RatVec& v : vp.vertices) coords.push_back(hull_coords(v));

    // Shift the centroid to the origin so the polar body is bounded.
    RatVec centroid(k, Rational(0));
    for (const RatVec& c : coords)
        for (std::size_t j = 0; j < k; ++j) centroid[j] += c[j];
    for (std::size_t j = 0; j < k; ++j)
        centroid[j] /= Rational(static_cast<long>(vp.vertices.size()));
    for (RatVec& c : coords)
        for (std::size_t j = 0; j < k; ++j) c[j] -= centroid[j];

    // Polar body { a : a.c_i <= 1 for all shifted vertex coords }; its
    // vertices are in bijection with the facets of the hull polytope.
    std::vector<std::pair<RatVec, Rational>> polar_rows;
    polar_rows.reserve(coords.size());
    for (const RatVec& c : coords) polar_rows.emplace_back(c, Rational(1));
    const VPolytope polar = dd_enumerate(HPolytope(k, std::move(polar_rows), {}));

    std::vector<std::pair<RatVec, Rational>> inequalities;
    for (const RatVec& a : polar.vertices) {
        // Facet a.(coords(x) - centroid) <= 1 pulled back to ambient space.
        auto z = rat_solve(gram, a);
        if (!z) throw NumericalFailure("gram system unexpectedly singular");
        RatVec normal(d, Rational(0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < d; ++j) normal[j] += (*z)[i] * basis[i][j];
        Rational bound = Rational(1) + rat_dot(a, centroid) + rat_dot(normal, v0);
        RatVec scaled = normal;
        scaled.push_back(bound);
        scale_to_coprime_integers(scaled);
        bound = scaled.back();
        scaled.pop_back();
        inequalities.emplace_back(std::move(scaled), std::move(bound));
    }
    std::sort(inequalities.begin(), inequalities.end());
    return HPolytope(d, std::move(inequalities), std::move(equations));
}

namespace {

RatVec unit_coeff(std::size_t dim, std::size_t i, int sign) {
    RatVec a(dim, Rational(0));
    a[i] = sign;
    return a;
}

}  // namespace

HPolytope sync_ns_polytope_3_2() {
    const std::size_t dim = 9;
    std::vector<std::pair<RatVec, Rational>> ineqs;

    // Off-diagonal coordinates are nonnegative.
    for (std::size_t k : {1u, 2u, 3u, 5u, 6u, 7u}) ineqs.emplace_back(unit_coeff(dim, k, -1), 0);

    // w(xa,xa) + w(xb,xb) <= 1 + w(xa,xb) for each ordered pair xa != xb.
    // w(xa,xb) <= w(xa,xa) and w(xa,xb) <= w(xb,xb) likewise.
    for (int xa = 0; xa < 3; ++xa)
        for (int xb = 0; xb < 3; ++xb) {
            if (xa == xb) continue;
            const std::size_t off = static_cast<std::size_t>(3 * xa + xb);
            const std::size_t da = static_cast<std::size_t>(4 * xa);
            const std::size_t db = static_cast<std::size_t>(4 * xb);
            RatVec sum(dim, Rational(0));
            sum[da] += 1;
            sum[db] += 1;
            sum[off] -= 1;
            ineqs.emplace_back(std::move(sum), 1);
            RatVec ca(dim, Rational(0));
            ca[off] = 1;
            ca[da] -= 1;
            ineqs.emplace_back(std::move(ca), 0);
            RatVec cb(dim, Rational(0));
            cb[off] = 1;
            cb[db] -= 1;
            ineqs.emplace_back(std::move(cb), 0);
        }
    return HPolytope(dim, std::move(ineqs), {});
}

HPolytope classical_polytope_3_2() {
    const std::size_t dim = 9;
    std::vector<std::pair<RatVec, Rational>> ineqs;
    std::vector<std::pair<RatVec, Rational>> eqs;

    // Player-swap symmetry of mixtures of deterministic strategies.
    for (auto [i, j] : {std::pair<std::size_t, std::size_t>{1, 3}, {2, 6}, {5, 7}}) {
        RatVec c(dim, Rational(0));
        c[i] = 1;
        c[j] = -1;
        eqs.emplace_back(std::move(c), 0);
    }

    // Reduced inequality system on the independent coordinates w3, w6, w7.
    for (std::size_t k : {3u, 6u, 7u}) ineqs.emplace_back(unit_coeff(dim, k, -1), 0);
    auto pair_rows = [&](std::size_t da, std::size_t db, std::size_t off) {
        RatVec sum(dim, Rational(0));
        sum[da] += 1;
        sum[db] += 1;
        sum[off] -= 1;
        ineqs.emplace_back(std::move(sum), 1);
    };
    pair_rows(0, 4, 3);  // w0 + w4 <= 1 + w3
    pair_rows(0, 8, 6);  // w0 + w8 <= 1 + w6
    pair_rows(4, 8, 7);  // w4 + w8 <= 1 + w7
    auto le = [&](std::size_t lo, std::size_t hi) {
        RatVec c(dim, Rational(0));
        c[lo] = 1;
        c[hi] = -1;
        ineqs.emplace_back(std::move(c), 0);
    };
    le(3, 0);
    le(3, 4);
    le(6, 0);
    le(6, 8);
    le(7, 4);
    le(7, 8);

    // Bell rows: J0 <= 1 and J1, J2, J3 >= 0.
    {
        RatVec j0(dim, Rational(0));
        j0[0] = 1;
        j0[3] = -1;
        j0[4] = 1;
        j0[6] = -1;
        j0[7] = -1;
        j0[8] = 1;
        ineqs.emplace_back(std::move(j0), 1);
        RatVec j1(dim, Rational(0));
        j1[0] = -1;
        j1[3] = 1;
        j1[6] = 1;
        j1[7] = -1;
        ineqs.emplace_back(std::move(j1), 0);
        RatVec j2(dim, Rational(0));
        j2[3] = 1;
        j2[4] = -1;
        j2[6] = -1;
        j2[7] = 1;
        ineqs.emplace_back(std::move(j2), 0);
        RatVec j3(dim, Rational(0));
        j3[3] = -1;
        j3[6] = 1;
        j3[7] = 1;
        j3[8] = -1;
        ineqs.emplace_back(std::move(j3), 0);
    }
    return HPolytope(dim, std::move(ineqs), std::move(eqs));
}

HPolytope synchronous_hrep(const GameShape& shape, bool with_nonsignaling) {
    const std::size_t cols = static_cast<std::size_t>(shape.columns());
    const std::size_t rows = static_cast<std::size_t>(shape.rows());
    const std::size_t dim = rows * cols;
    auto idx = [&](int ya, int yb, int xa, int xb) {
        return static_cast<std::size_t>(shape.row(ya, yb)) * cols +
               static_cast<std::size_t>(shape.column(xa, xb));
    };

    std::vector<std::pair<RatVec, Rational>> ineqs;
    std::vector<std::pair<RatVec, Rational>> eqs;

    for (std::size_t i = 0; i < dim; ++i) ineqs.emplace_back(unit_coeff(dim, i, -1), 0);

    for (std::size_t c = 0; c < cols; ++c) {
        RatVec row(dim, Rational(0));
        for (std::size_t r = 0; r < rows; ++r) row[r * cols + c] = 1;
        eqs.emplace_back(std::move(row), 1);
    }

    for (int x = 0; x < shape.n; ++x)
        for (int ya = 0; ya < shape.m; ++ya)
            for (int yb = 0; yb < shape.m; ++yb) {
                if (ya == yb) continue;
                RatVec row(dim, Rational(0));
                row[idx(ya, yb, x, x)] = 1;
                eqs.emplace_back(std::move(row), 0);
            }

    if (with_nonsignaling) {
        for (int y = 0; y < shape.m; ++y)
            for (int xa = 0; xa < shape.n; ++xa)
                for (int xb = 1; xb < shape.n; ++xb) {
                    RatVec row(dim, Rational(0));
                    for (int yb = 0; yb < shape.m; ++yb) {
                        row[idx(y, yb, xa, xb)] += 1;
                        row[idx(y, yb, xa, 0)] -= 1;
                    }
                    eqs.emplace_back(std::move(row), 0);
                }
        for (int y = 0; y < shape.m; ++y)
            for (int xb = 0; xb < shape.n; ++xb)
                for (int xa = 1; xa < shape.n; ++xa) {
                    RatVec row(dim, Rational(0));
                    for (int ya = 0; ya < shape.m; ++ya) {
                        row[idx(ya, y, xa, xb)] += 1;
                        row[idx(ya, y, 0, xb)] -= 1;
                    }
                    eqs.emplace_back(std::move(row), 0);
                }
    }
    return HPolytope(dim, std::move(ineqs), std::move(eqs));
}

RatMat enumerate_synchronous_vertices(const GameShape& shape, std::uint64_t cap) {
    const std::size_t cols = static_cast<std::size_t>(shape.columns());
    const std::size_t rows = static_cast<std::size_t>(shape.rows());

    // Per-column admissible support: diagonal questions force equal answers.
    std::vector<std::vector<std::size_t>> choices(cols);
    std::uint64_t total = 1;
    for (int xa = 0; xa < shape.n; ++xa)
        for (int xb = 0; xb < shape.n; ++xb) {
            auto& list = choices[static_cast<std::size_t>(shape.column(xa, xb))];
            for (int ya = 0; ya < shape.m; ++ya)
                for (int yb = 0; yb < shape.m; ++yb) {
                    if (xa == xb && ya != yb) continue;
                    list.push_back(static_cast<std::size_t>(shape.row(ya, yb)));
                }
            total *= static_cast<std::uint64_t>(list.size());
            if (total > cap)
                throw CapExceeded("synchronous vertex count exceeds cap of " + std::to_string(cap));
        }

    RatMat out;
    out.reserve(total);
    std::vector<std::size_t> pick(cols, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
        RatVec v(rows * cols, Rational(0));
        for (std::size_t c = 0; c < cols; ++c) v[choices[c][pick[c]] * cols + c] = 1;
        out.push_back(std::move(v));
        for (std::size_t c = cols; c-- > 0;) {
            if (++pick[c] < choices[c].size()) break;
            pick[c] = 0;
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

NsVertexClassification ns_vertex_classification() {
    NsVertexClassification out;
    out.polytope = dd_enumerate(sync_ns_polytope_3_2());
    out.max_magnitude = 0;
    for (std::size_t i = 0; i < out.polytope.vertices.size(); ++i) {
        WCoordinates<Rational> w;
        for (std::size_t k = 0; k < 9; ++k) w.w[k] = out.polytope.vertices[i][k];
        const BellReport<Rational> r = bell_values(w, Rational(0));
        switch (r.violated) {
            case BellInequality::None: out.nonviolating.push_back(i); break;
            case BellInequality::J0: out.violating[0].push_back(i); break;
            case BellInequality::J1: out.violating[1].push_back(i); break;
            case BellInequality::J2: out.violating[2].push_back(i); break;
            case BellInequality::J3: out.violating[3].push_back(i); break;
        }
        if (r.magnitude > out.max_magnitude) out.max_magnitude = r.magnitude;
    }
    return out;
}

}  // namespace syncorr
