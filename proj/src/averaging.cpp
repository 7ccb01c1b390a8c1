#include "flattrace/averaging.hpp"

#include <sstream>

namespace flattrace {

CoverSpec CoverSpec::with_rep(int coset, const Elem& rep) const {
    if (pair.q2->project(rep) != coset)
        throw std::invalid_argument("replacement element lies in a different coset");
    CoverSpec out = *this;
    out.coset_reps[size_t(coset)] = rep;
    return out;
}

CoverSpec validate_cover(const GroupHom& phi, const GroupHom& psi, const Subgroup& gamma1,
                         const Subgroup& gamma2) {
    HomPair hp(phi, psi);  // shared source/target check
    CoverSpec c;
    c.pair = make_cover_pair(phi.source(), phi.target(), gamma1, gamma2);
    c.index1 = c.pair.q1->order();
    c.index2 = c.pair.q2->order();

    for (const auto& gen : c.pair.gamma1_group.generators()) {
        Elem amb = c.pair.gamma1.include(phi.source(), gen);
        for (const GroupHom* h : {&phi, &psi}) {
            Elem img = h->apply(amb);
            if (!c.pair.gamma2.contains(phi.target(), img))
                throw std::invalid_argument("containment fails: image of " + phi.source().elem_name(amb) +
                                            " is " + phi.target().elem_name(img) +
                                            ", outside gamma2");
        }
    }
    c.coset_reps = c.pair.q2->reps();
    return c;
}

LiftData lift_maps(const AffineMapSpec& f, const AffineMapSpec& g, const CoverSpec& cover) {
    if (!cover.pair.gamma1.is_lattice() || !cover.pair.gamma2.is_lattice())
        throw std::invalid_argument("geometric lifting needs sublattice covers; use the algebraic mode");
    LiftData out;
    out.cover_source = cover.pair.gamma1_group;
    out.cover_target = cover.pair.gamma2_group;

    const auto& t = f.target.cryst();
    out.g_bar = AffineMapSpec{out.cover_source, out.cover_target, g.linear, g.translation, {0}};
    if (auto v = out.g_bar.validate(); !v.ok)
        throw std::invalid_argument("lift of g is not equivariant: " + v.error);

    for (const auto& beta : cover.coset_reps) {
        const IntMatrix& ab = t.rotation(beta.h);
        AffineMapSpec lift;
        lift.source = out.cover_source;
        lift.target = out.cover_target;
        lift.linear = ab * f.linear;
        lift.translation = ab.apply(f.translation);
        for (int i = 0; i < t.dim(); ++i) {
            lift.translation[size_t(i)] += t.translation(beta.h)[i];
            lift.translation[size_t(i)] += Rat(beta.m[i]);
        }
        lift.holonomy_map = {0};
        if (auto v = lift.validate(); !v.ok)
            throw std::invalid_argument("lift of f is not equivariant: " + v.error);
        out.lifts.push_back(std::move(lift));
    }
    return out;
}

namespace {

// i-hat then rho_beta: class of gamma' in R[tau_b phi', psi'] lands on the
// class of gamma'*beta in the base set.
TraceVector push_forward(const ReidemeisterSet& base, const CoverSpec& cover, const Elem& beta,
                         const TraceVector& lift_trace) {
    const Group& tgt = base.pair().target();
    TraceVector out;
    for (const auto& [rep, coeff] : lift_trace.coefficients()) {
        Elem ambient = cover.pair.gamma2.include(tgt, rep);
        out.add(base.class_rep(tgt.mul(ambient, beta)), coeff);
    }
    return out;
}

AveragingReport finish_report(TraceVector lhs, std::vector<std::pair<Elem, TraceVector>> summands,
                              const Int& divisor) {
    AveragingReport rep;
    rep.lhs = std::move(lhs);
    rep.summands = std::move(summands);
    for (const auto& [b, t] : rep.summands) rep.raw_sum = rep.raw_sum + t;
    rep.divisor = divisor;
    rep.divisible = rep.raw_sum.divisible_by(divisor);
    if (!rep.divisible)
        throw std::logic_error("averaging sum is not divisible by the cover index");
    rep.rhs = rep.raw_sum.divided_by(divisor);
    rep.equal = rep.rhs == rep.lhs;
    return rep;
}

}  // namespace

AveragingReport average_rt_coincidence(const AffineMapSpec& f, const AffineMapSpec& g,
                                       const CoverSpec& cover) {
    CoincidenceData base = coincidence_classes(f, g);
    LiftData lifts = lift_maps(f, g, cover);

    std::vector<std::pair<Elem, TraceVector>> summands;
    for (size_t i = 0; i < cover.coset_reps.size(); ++i) {
        TraceVector lift_trace = reidemeister_trace(lifts.lifts[i], lifts.g_bar);
        summands.push_back({cover.coset_reps[i], push_forward(*base.reid, cover, cover.coset_reps[i], lift_trace)});
    }
    return finish_report(base.trace, std::move(summands), cover.index1);
}

AveragingReport average_rt_fixed(const AffineMapSpec& f, const Subgroup& gamma) {
    if (!f.source.same_as(f.target)) throw std::invalid_argument("fixed point averaging needs a self-map");
    AffineMapSpec id = AffineMapSpec::identity_map(f.source);
    CoverSpec cover = validate_cover(f.induced(), id.induced(), gamma, gamma);
    return average_rt_coincidence(f, id, cover);
}

namespace {

Int scalar_cover_factor(const Sublattice& base, const Sublattice& sub) {
    // sub must equal s * base for a positive integer s
    const Int& b00 = base.basis().at(0, 0);
    const Int& s00 = sub.basis().at(0, 0);
    if (s00 % b00 != 0) throw std::invalid_argument("cover lattice is not a scalar multiple");
    Int s = s00 / b00;
    IntMatrix scaled = base.basis();
    for (int i = 0; i < scaled.rows(); ++i)
        for (int j = 0; j < scaled.cols(); ++j) scaled.at(i, j) *= s;
    if (!(scaled == sub.basis()))
        throw std::invalid_argument("region-restricted averaging needs a scalar-multiple cover");
    return s;
}

Region preimage_region(const Region& u, const Int& s) {
    // boxes [lo,hi) in base coordinates become [(lo+t)/s, (hi+t)/s) on the cover
    Region out;
    out.dim = u.dim;
    long sl = long(s.get_si());
    std::vector<long> t(size_t(u.dim), 0);
    while (true) {
        for (const auto& b : u.boxes) {
            Region::Box nb;
            nb.lo.resize(size_t(u.dim));
            nb.hi.resize(size_t(u.dim));
            for (int i = 0; i < u.dim; ++i) {
                nb.lo[size_t(i)] = (b.lo[size_t(i)] + Rat(t[size_t(i)])) / Rat(s);
                nb.hi[size_t(i)] = (b.hi[size_t(i)] + Rat(t[size_t(i)])) / Rat(s);
            }
            out.boxes.push_back(std::move(nb));
        }
        int i = u.dim - 1;
        for (; i >= 0; --i) {
            if (++t[size_t(i)] < sl) break;
            t[size_t(i)] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

}  // namespace

IndexAverageReport average_index(const AffineMapSpec& f, const Region& u, const Subgroup& gamma) {
    if (!f.source.same_as(f.target)) throw std::invalid_argument("index averaging needs a self-map");
    AffineMapSpec id = AffineMapSpec::identity_map(f.source);
    CoverSpec cover = validate_cover(f.induced(), id.induced(), gamma, gamma);
    Int s = scalar_cover_factor(f.source.cryst().lattice(), gamma.lattice());

    IndexAverageReport rep;
    rep.lhs = local_trace(f, id, u).augmentation();

    LiftData lifts = lift_maps(f, id, cover);
    AffineMapSpec id_cover = AffineMapSpec::identity_map(lifts.cover_source);
    Region u_bar = preimage_region(u, s);
    Rat sum(0);
    for (const auto& lift : lifts.lifts) {
        Int li = local_trace(lift, id_cover, u_bar).augmentation();
        rep.per_lift.push_back(li);
        sum += Rat(li);
    }
    rep.rhs = sum / Rat(cover.index1);
    rep.equal = Rat(rep.lhs) == rep.rhs;
    return rep;
}

LefschetzAverageReport average_lefschetz(const AffineMapSpec& f, const AffineMapSpec& g,
                                         const CoverSpec& cover) {
    LefschetzAverageReport rep;
    rep.lhs = lefschetz_number(f, g);
    LiftData lifts = lift_maps(f, g, cover);
    Rat sum(0);
    for (const auto& lift : lifts.lifts) {
        Int li = lefschetz_number(lift, lifts.g_bar);
        rep.per_lift.push_back(li);
        sum += Rat(li);
    }
    rep.rhs = sum / Rat(cover.index1);
    rep.equal = Rat(rep.lhs) == rep.rhs;
    return rep;
}

AlgebraicReport algebraic_mode_verify(const GroupHom& phi, const GroupHom& psi, const CoverSpec& cover,
                                      const IndexTable& table,
                                      const std::optional<std::vector<std::pair<Elem, Int>>>& lhs_table) {
    if (table.per_coset.size() != cover.coset_reps.size())
        throw std::invalid_argument("index table must have one entry list per coset");
    ReidemeisterSet base = ReidemeisterSet::compute(phi, psi);
    const Group& tgt = phi.target();

    AlgebraicReport rep;
    rep.divisor = cover.index1;
    for (size_t i = 0; i < cover.coset_reps.size(); ++i) {
        const Elem& beta = cover.coset_reps[i];
        TwistedBundle bundle = make_twisted_bundle(phi, psi, cover.pair, beta);

        // canonicalize user keys through the lift-level set
        TraceVector lift_trace;
        std::vector<Elem> keys;
        for (const auto& [key, coeff] : table.per_coset[i]) {
            Elem canon = bundle.r_sub.class_rep(key);
            keys.push_back(canon);
            lift_trace.add(canon, coeff);
        }
        if (bundle.r_sub.finite()) {
            std::set<Elem> expect;
            for (const auto& c : bundle.r_sub.classes()) expect.insert(c.rep);
            for (const auto& k : keys)
                if (!expect.count(k))
                    throw std::invalid_argument("index table key does not match a computed class");
            if (keys.size() != expect.size())
                throw std::invalid_argument("index table must assign every lift-level class exactly once");
        }

        TraceVector pushed;
        for (const auto& [rep_cls, coeff] : lift_trace.coefficients()) {
            Elem ambient = cover.pair.gamma2.include(tgt, rep_cls);
            pushed.add(base.class_rep(tgt.mul(ambient, beta)), coeff);
        }
        rep.summands.push_back({beta, pushed});
    }
    for (const auto& [b, t] : rep.summands) rep.raw_sum = rep.raw_sum + t;
    rep.divisible = rep.raw_sum.divisible_by(rep.divisor);
    if (!rep.divisible) throw std::logic_error("averaging sum is not divisible by the cover index");
    rep.rhs = rep.raw_sum.divided_by(rep.divisor);

    if (lhs_table) {
        for (const auto& [key, coeff] : *lhs_table) rep.lhs.add(base.class_rep(key), coeff);
        rep.equal = (rep.lhs == rep.rhs);
    }
    return rep;
}

}  // namespace flattrace
