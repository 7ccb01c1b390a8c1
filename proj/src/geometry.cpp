#include "flattrace/geometry.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace flattrace {

namespace {

int cmp_vecq(const VecQ& a, const VecQ& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return -1;
        if (a[i] > b[i]) return 1;
    }
    return 0;
}

// coordinates of an ambient rational point in the (upper triangular) lattice basis
VecQ lattice_coords(const Sublattice& l, const VecQ& x) {
    int n = l.dim();
    VecQ c(size_t(n), Rat(0));
    VecQ w = x;
    for (int i = 0; i < n; ++i) {
        c[size_t(i)] = w[size_t(i)] / Rat(l.basis().at(i, i));
        for (int j = i; j < n; ++j) w[size_t(j)] -= c[size_t(i)] * Rat(l.basis().at(i, j));
    }
    return c;
}

VecQ from_lattice_coords(const Sublattice& l, const VecQ& c) {
    int n = l.dim();
    VecQ x(size_t(n), Rat(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) x[size_t(j)] += c[size_t(i)] * Rat(l.basis().at(i, j));
    return x;
}

// reduce an ambient point into the fundamental box of the lattice
std::pair<VecQ, VecQ> box_reduce(const Sublattice& l, const VecQ& x) {
    VecQ c = lattice_coords(l, x);
    for (auto& ci : c) ci -= Rat(rat_floor(ci));
    return {from_lattice_coords(l, c), c};
}

// canonical representative of the projection of x to the manifold:
// minimize the box coordinates over the holonomy action
std::pair<VecQ, VecQ> canonical_point(const CrystGroup& g, const VecQ& x) {
    std::pair<VecQ, VecQ> best;
    bool first = true;
    for (int h = 0; h < g.holonomy().order(); ++h) {
        VecQ y = g.rotation(h).apply(x);
        for (int i = 0; i < g.dim(); ++i) y[size_t(i)] += g.translation(h)[i];
        auto cand = box_reduce(g.lattice(), y);
        if (first || cmp_vecq(cand.second, best.second) < 0) {
            best = std::move(cand);
            first = false;
        }
    }
    return best;
}

VecQ mat_apply(const std::vector<VecQ>& m, const VecQ& v) {
    VecQ out(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
    return out;
}

struct SectorSolver {
    IntMatrix diff;               // G - A_B F
    Int det_diff;
    std::vector<VecQ> inv;        // rational inverse
    VecQ offset;                  // A_B a + s_B - b
};

struct PairContext {
    const CrystGroup* m1;
    const CrystGroup* m2;
    std::vector<SectorSolver> sectors;  // per target holonomy element
};

PairContext make_context(const AffineMapSpec& f, const AffineMapSpec& g) {
    if (!f.source.same_as(g.source) || !f.target.same_as(g.target))
        throw std::invalid_argument("map pair must share source and target manifolds");
    if (!f.source.is_cryst() || !f.target.is_cryst())
        throw std::invalid_argument("geometric operations need crystallographic groups");
    PairContext ctx;
    ctx.m1 = &f.source.cryst();
    ctx.m2 = &f.target.cryst();
    if (!ctx.m1->orientable() || !ctx.m2->orientable())
        throw std::invalid_argument("nonorientable manifolds are not supported by the index theory");

    for (int bh = 0; bh < ctx.m2->holonomy().order(); ++bh) {
        SectorSolver s;
        s.diff = g.linear - ctx.m2->rotation(bh) * f.linear;
        s.det_diff = det(s.diff);
        if (s.det_diff == 0)
            throw std::invalid_argument("degenerate pair: det(G - A_B F) = 0 in holonomy sector " +
                                        std::to_string(bh));
        s.inv = inverse_rational(s.diff);
        s.offset = ctx.m2->rotation(bh).apply(f.translation);
        for (int i = 0; i < ctx.m2->dim(); ++i) {
            s.offset[size_t(i)] += ctx.m2->translation(bh)[i];
            s.offset[size_t(i)] -= g.translation[i];
        }
        ctx.sectors.push_back(std::move(s));
    }
    return ctx;
}

// the unique solution x of g~(x) = beta f~(x)
VecQ solve_for(const PairContext& ctx, const Elem& beta) {
    const SectorSolver& s = ctx.sectors[size_t(beta.h)];
    VecQ rhs = s.offset;
    for (size_t i = 0; i < rhs.size(); ++i) rhs[i] += Rat(beta.m[i]);
    return mat_apply(s.inv, rhs);
}

}  // namespace

VecQ AffineMapSpec::lift_apply(const VecQ& x) const {
    VecQ out = linear.apply(x);
    for (size_t i = 0; i < out.size(); ++i) out[i] += translation[i];
    return out;
}

AffineMapSpec AffineMapSpec::identity_map(const Group& g) {
    const auto& c = g.cryst();
    std::vector<int> theta(size_t(c.holonomy().order()));
    for (int i = 0; i < c.holonomy().order(); ++i) theta[size_t(i)] = i;
    return AffineMapSpec{g, g, IntMatrix::identity(c.dim()), VecQ(size_t(c.dim()), Rat(0)), theta};
}

AffineMapSpec AffineMapSpec::constant_map(const Group& source, const Group& target, VecQ value) {
    const auto& s = source.cryst();
    const auto& t = target.cryst();
    return AffineMapSpec{source, target, IntMatrix::zero(t.dim(), s.dim()), std::move(value),
                         std::vector<int>(size_t(s.holonomy().order()), t.holonomy().identity())};
}

AffineMapSpec AffineMapSpec::compose_deck(const Elem& b) const {
    const auto& t = target.cryst();
    const IntMatrix& ab = t.rotation(b.h);
    AffineMapSpec out;
    out.source = source;
    out.target = target;
    out.linear = ab * linear;
    out.translation = ab.apply(translation);
    for (int i = 0; i < t.dim(); ++i) {
        out.translation[size_t(i)] += t.translation(b.h)[i];
        out.translation[size_t(i)] += Rat(b.m[i]);
    }
    out.holonomy_map.resize(holonomy_map.size());
    for (size_t i = 0; i < holonomy_map.size(); ++i)
        out.holonomy_map[i] = t.holonomy().conj(b.h, holonomy_map[i]);
    return out;
}

Region Region::full(int dim) {
    Region r;
    r.dim = dim;
    Box b;
    b.lo.assign(size_t(dim), Rat(0));
    b.hi.assign(size_t(dim), Rat(1));
    r.boxes.push_back(std::move(b));
    return r;
}

Validation Region::validate() const {
    for (const auto& b : boxes) {
        if (int(b.lo.size()) != dim || int(b.hi.size()) != dim)
            return Validation::fail("box dimension mismatch");
        for (int i = 0; i < dim; ++i) {
            if (b.lo[size_t(i)] < 0 || b.hi[size_t(i)] > 1 || !(b.lo[size_t(i)] < b.hi[size_t(i)]))
                return Validation::fail("box sides must satisfy 0 <= lo < hi <= 1");
        }
    }
    for (size_t a = 0; a < boxes.size(); ++a)
        for (size_t b = a + 1; b < boxes.size(); ++b) {
            bool disjoint = false;
            for (int i = 0; i < dim && !disjoint; ++i) {
                const auto& ba = boxes[a];
                const auto& bb = boxes[b];
                if (!(std::max(ba.lo[size_t(i)], bb.lo[size_t(i)]) <
                      std::min(ba.hi[size_t(i)], bb.hi[size_t(i)])))
                    disjoint = true;
            }
            if (!disjoint) return Validation::fail("region boxes overlap");
        }
    return Validation::pass();
}

bool Region::contains(const VecQ& c) const {
    for (const auto& b : boxes) {
        bool in = true;
        for (int i = 0; i < dim && in; ++i)
            if (c[size_t(i)] < b.lo[size_t(i)] || !(c[size_t(i)] < b.hi[size_t(i)])) in = false;
        if (in) return true;
    }
    return false;
}

bool Region::touches_boundary(const VecQ& c) const {
    for (const auto& b : boxes) {
        // closure membership on the torus: the face hi=1 is glued to 0
        bool in_closure = true;
        for (int i = 0; i < dim && in_closure; ++i) {
            bool inside = b.lo[size_t(i)] <= c[size_t(i)] && c[size_t(i)] <= b.hi[size_t(i)];
            bool wrap = b.hi[size_t(i)] == 1 && c[size_t(i)] == 0;
            if (!inside && !wrap) in_closure = false;
        }
        if (!in_closure) continue;
        for (int i = 0; i < dim; ++i) {
            bool fullside = b.lo[size_t(i)] == 0 && b.hi[size_t(i)] == 1;
            if (fullside) continue;
            if (c[size_t(i)] == b.lo[size_t(i)] || c[size_t(i)] == b.hi[size_t(i)] ||
                (b.hi[size_t(i)] == 1 && c[size_t(i)] == 0))
                return true;
        }
    }
    return false;
}

Region Region::unite(const Region& other) const {
    Region r = *this;
    for (const auto& b : other.boxes) r.boxes.push_back(b);
    if (auto v = r.validate(); !v.ok) throw std::invalid_argument("region union is not disjoint: " + v.error);
    return r;
}

CoincidenceData coincidence_classes(const AffineMapSpec& f, const AffineMapSpec& g) {
    PairContext ctx = make_context(f, g);
    CoincidenceData data;
    data.reid = std::make_shared<ReidemeisterSet>(ReidemeisterSet::compute(f.induced(), g.induced()));

    std::set<VecQ, decltype([](const VecQ& a, const VecQ& b) { return cmp_vecq(a, b) < 0; })> seen;
    for (const auto& cls : data.reid->classes()) {
        const Elem& beta = cls.rep;
        VecQ x = solve_for(ctx, beta);
        auto [amb, coords] = canonical_point(*ctx.m1, x);
        if (!seen.insert(coords).second)
            throw std::logic_error("coincidence classes are not disjoint");
        CoincidencePoint p;
        p.location = coords;
        p.ambient = amb;
        p.class_rep = beta;
        p.local_index = ctx.sectors[size_t(beta.h)].det_diff > 0 ? 1 : -1;
        CoincidenceClass cc;
        cc.rep = beta;
        cc.index = p.local_index;
        cc.points.push_back(std::move(p));
        data.classes.push_back(std::move(cc));
    }
    for (const auto& cc : data.classes) data.trace.add(cc.rep, cc.index);
    return data;
}

int local_index(const AffineMapSpec& f, const AffineMapSpec& g, const VecQ& location) {
    PairContext ctx = make_context(f, g);
    VecQ x = from_lattice_coords(ctx.m1->lattice(), location);
    for (int h1 = 0; h1 < ctx.m1->holonomy().order(); ++h1) {
        VecQ y = ctx.m1->rotation(h1).apply(x);
        for (int i = 0; i < ctx.m1->dim(); ++i) y[size_t(i)] += ctx.m1->translation(h1)[i];
        for (int bh = 0; bh < ctx.m2->holonomy().order(); ++bh) {
            // m = g~(y) - A_B f~(y) - s_B must land in the target lattice
            VecQ gy = g.lift_apply(y);
            VecQ fy = ctx.m2->rotation(bh).apply(f.lift_apply(y));
            VecQ m(size_t(ctx.m2->dim()));
            for (int i = 0; i < ctx.m2->dim(); ++i)
                m[size_t(i)] = gy[size_t(i)] - fy[size_t(i)] - ctx.m2->translation(bh)[i];
            if (!is_integral(m)) continue;
            VecI mi = to_integer(m);
            if (!ctx.m2->lattice().contains(mi)) continue;
            return ctx.sectors[size_t(bh)].det_diff > 0 ? 1 : -1;
        }
    }
    throw std::invalid_argument("not a coincidence point of the pair");
}

TraceVector reidemeister_trace(const AffineMapSpec& f, const AffineMapSpec& g) {
    return coincidence_classes(f, g).trace;
}

Int lefschetz_number(const AffineMapSpec& f, const AffineMapSpec& g) {
    CoincidenceData data = coincidence_classes(f, g);
    Int l = data.trace.augmentation();
    const auto& m1 = f.source.cryst();
    const auto& m2 = f.target.cryst();
    if (m1.holonomy().order() == 1 && m2.holonomy().order() == 1) {
        // independent determinant route, in lattice coordinates
        IntMatrix diff = g.linear - f.linear;
        IntMatrix m(m2.dim(), m1.dim());
        for (int j = 0; j < m1.dim(); ++j) {
            VecI img = diff.apply(m1.lattice().basis().row(j));
            auto c = m2.lattice().coordinates(img);
            if (!c) throw std::logic_error("difference map leaves the target lattice");
            for (int i = 0; i < m2.dim(); ++i) m.at(i, j) = (*c)[size_t(i)];
        }
        if (l != det(m)) throw std::logic_error("Lefschetz number disagrees with the determinant formula");
    }
    return l;
}

Int nielsen_number(const AffineMapSpec& f, const AffineMapSpec& g) {
    return reidemeister_trace(f, g).support_size();
}

TraceVector local_trace(const AffineMapSpec& f, const AffineMapSpec& g, const Region& u) {
    if (auto v = u.validate(); !v.ok) throw std::invalid_argument("invalid region: " + v.error);
    if (u.dim != f.source.cryst().dim()) throw std::invalid_argument("region dimension mismatch");
    CoincidenceData data = coincidence_classes(f, g);
    for (const auto& cc : data.classes)
        for (const auto& p : cc.points)
            if (u.touches_boundary(p.location))
                throw std::invalid_argument("coincidence point on the region boundary; perturb the region");
    TraceVector t;
    for (const auto& cc : data.classes)
        for (const auto& p : cc.points)
            if (u.contains(p.location)) t.add(cc.rep, Int(p.local_index));
    return t;
}

std::vector<CoincidencePoint> oracle_coincidences(const AffineMapSpec& f, const AffineMapSpec& g) {
    PairContext ctx = make_context(f, g);
    ReidemeisterSet reid = ReidemeisterSet::compute(f.induced(), g.induced());
    const auto& m1 = *ctx.m1;
    const auto& m2 = *ctx.m2;
    int n = m2.dim();

    // corners of the closed fundamental box of the source lattice
    std::vector<VecQ> corners;
    for (int mask = 0; mask < (1 << m1.dim()); ++mask) {
        VecI v(size_t(m1.dim()), Int(0));
        for (int i = 0; i < m1.dim(); ++i)
            if (mask & (1 << i)) v = vec_add(v, m1.lattice().basis().row(i));
        corners.push_back(to_rational(v));
    }

    struct Key {
        VecQ coords;
        bool operator<(const Key& o) const { return cmp_vecq(coords, o.coords) < 0; }
    };
    std::map<Key, CoincidencePoint> found;

    for (int bh = 0; bh < m2.holonomy().order(); ++bh) {
        const SectorSolver& s = ctx.sectors[size_t(bh)];
        // interval image of the box under x -> (G - A_B F)x - offset, dilated by 1
        VecQ lo(size_t(n)), hi(size_t(n));
        bool first = true;
        for (const auto& c : corners) {
            VecQ img = s.diff.apply(c);
            for (int i = 0; i < n; ++i) {
                Rat val = img[size_t(i)] - s.offset[size_t(i)];
                if (first || val < lo[size_t(i)]) lo[size_t(i)] = val;
                if (first || val > hi[size_t(i)]) hi[size_t(i)] = val;
            }
            first = false;
        }
        for (int i = 0; i < n; ++i) {
            lo[size_t(i)] -= 1;
            hi[size_t(i)] += 1;
        }

        // lattice points of the target lattice inside [lo, hi]: bound the
        // basis coordinates by the interval image of the corner set
        std::vector<VecQ> box_corners;
        for (int mask = 0; mask < (1 << n); ++mask) {
            VecQ c(size_t(n));
            for (int i = 0; i < n; ++i) c[size_t(i)] = (mask & (1 << i)) ? hi[size_t(i)] : lo[size_t(i)];
            box_corners.push_back(lattice_coords(m2.lattice(), c));
        }
        VecI klo(size_t(n)), khi(size_t(n));
        for (int i = 0; i < n; ++i) {
            Rat cl = box_corners[0][size_t(i)], ch = box_corners[0][size_t(i)];
            for (const auto& c : box_corners) {
                if (c[size_t(i)] < cl) cl = c[size_t(i)];
                if (c[size_t(i)] > ch) ch = c[size_t(i)];
            }
            klo[size_t(i)] = rat_floor(cl);
            khi[size_t(i)] = -rat_floor(-ch);  // ceiling
        }

        VecI k = klo;
        while (true) {
            VecI m = m2.lattice().from_coordinates(k);
            bool inside = true;
            for (int i = 0; i < n && inside; ++i)
                if (Rat(m[size_t(i)]) < lo[size_t(i)] || Rat(m[size_t(i)]) > hi[size_t(i)]) inside = false;
            if (inside) {
                Elem beta{m, bh};
                VecQ x = solve_for(ctx, beta);
                VecQ c1 = lattice_coords(m1.lattice(), x);
                bool in_box = true;
                for (const auto& ci : c1)
                    if (ci < 0 || !(ci < 1)) in_box = false;
                if (in_box) {
                    auto [amb, coords] = canonical_point(m1, x);
                    CoincidencePoint p;
                    p.location = coords;
                    p.ambient = amb;
                    p.class_rep = reid.class_rep(beta);
                    p.local_index = s.det_diff > 0 ? 1 : -1;
                    auto [it, fresh] = found.emplace(Key{coords}, p);
                    if (!fresh && !(it->second == p))
                        throw std::logic_error("oracle found conflicting labels for one point");
                }
            }
            int i = n - 1;
            for (; i >= 0; --i) {
                k[size_t(i)] += 1;
                if (k[size_t(i)] <= khi[size_t(i)]) break;
                k[size_t(i)] = klo[size_t(i)];
            }
            if (i < 0) break;
        }
    }

    std::vector<CoincidencePoint> out;
    for (auto& [key, p] : found) out.push_back(std::move(p));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<CoincidencePoint> flatten_points(const CoincidenceData& data) {
    std::vector<CoincidencePoint> out;
    for (const auto& cc : data.classes)
        for (const auto& p : cc.points) out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

TraceVector reidemeister_trace_with_twisted_reps(const AffineMapSpec& f, const AffineMapSpec& g,
                                                 const std::vector<Elem>& twists) {
    PairContext ctx = make_context(f, g);
    ReidemeisterSet reid = ReidemeisterSet::compute(f.induced(), g.induced());
    TraceVector t;
    size_t i = 0;
    for (const auto& cls : reid.classes()) {
        Elem alt = cls.rep;
        if (!twists.empty()) alt = reid.pair().move(twists[i++ % twists.size()], cls.rep);
        VecQ x = solve_for(ctx, alt);
        auto [amb, coords] = canonical_point(*ctx.m1, x);
        (void)amb;
        int idx = ctx.sectors[size_t(alt.h)].det_diff > 0 ? 1 : -1;
        t.add(reid.class_rep(alt), Int(idx));
    }
    return t;
}

}  // namespace flattrace
