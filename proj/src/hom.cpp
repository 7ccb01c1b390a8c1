#include "flattrace/hom.hpp"

#include <sstream>

namespace flattrace {

GroupHom GroupHom::finite_map(Group source, Group target, std::vector<int> images) {
    GroupHom h;
    h.kind_ = Kind::FiniteMap;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.images_ = std::move(images);
    if (!h.source_.is_finite_table() || !h.target_.is_finite_table())
        throw std::invalid_argument("finite_map requires table groups");
    if (int(h.images_.size()) != h.source_.finite().order())
        throw std::invalid_argument("image list size mismatch");
    return h;
}

GroupHom GroupHom::affine(Group source, Group target, IntMatrix linear, VecQ translation,
                          std::vector<int> holonomy_map) {
    GroupHom h;
    h.kind_ = Kind::Affine;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.linear_ = std::move(linear);
    h.translation_ = std::move(translation);
    h.holonomy_map_ = std::move(holonomy_map);
    if (!h.source_.is_cryst() || !h.target_.is_cryst())
        throw std::invalid_argument("affine hom requires crystallographic groups");
    const auto& s = h.source_.cryst();
    const auto& t = h.target_.cryst();
    if (h.linear_.rows() != t.dim() || h.linear_.cols() != s.dim())
        throw std::invalid_argument("linear part shape mismatch");
    if (int(h.translation_.size()) != t.dim()) throw std::invalid_argument("translation size mismatch");
    if (int(h.holonomy_map_.size()) != s.holonomy().order())
        throw std::invalid_argument("holonomy map size mismatch");

    // carry_h = D s_h + (I - A'_{theta h}) d - s'_{theta h}; must be in the target lattice
    h.carries_.resize(size_t(s.holonomy().order()));
    for (int hh = 0; hh < s.holonomy().order(); ++hh) {
        int th = h.holonomy_map_[size_t(hh)];
        if (th < 0 || th >= t.holonomy().order()) throw std::invalid_argument("holonomy map out of range");
        VecQ c(size_t(t.dim()), Rat(0));
        const auto& sh = s.translation(hh);
        for (int i = 0; i < t.dim(); ++i)
            for (int j = 0; j < s.dim(); ++j) c[i] += Rat(h.linear_.at(i, j)) * sh[j];
        const auto& at = t.rotation(th);
        for (int i = 0; i < t.dim(); ++i) {
            c[i] += h.translation_[i];
            for (int j = 0; j < t.dim(); ++j) c[i] -= Rat(at.at(i, j)) * h.translation_[j];
            c[i] -= t.translation(th)[i];
        }
        if (!is_integral(c))
            throw std::invalid_argument("affine data is not equivariant: non-integral carry at holonomy " +
                                        std::to_string(hh));
        h.carries_[size_t(hh)] = to_integer(c);
    }
    return h;
}

GroupHom GroupHom::elem_images(Group source, Group target, std::vector<Elem> images) {
    GroupHom h;
    h.kind_ = Kind::ElemImages;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.elem_images_ = std::move(images);
    if (!h.source_.is_finite_table()) throw std::invalid_argument("elem_images requires a finite source");
    if (int(h.elem_images_.size()) != h.source_.finite().order())
        throw std::invalid_argument("image list size mismatch");
    return h;
}

GroupHom GroupHom::through_quotient(Group source, Group target, std::shared_ptr<const GroupQuotient> via,
                                    std::vector<int> images) {
    GroupHom h;
    h.kind_ = Kind::ThroughQuotient;
    h.source_ = std::move(source);
    h.target_ = std::move(target);
    h.via_ = std::move(via);
    h.via_images_ = std::move(images);
    if (!h.target_.is_finite_table()) throw std::invalid_argument("through_quotient requires a table target");
    if (!h.via_ || !h.via_->source().same_as(h.source_))
        throw std::invalid_argument("quotient does not match the hom source");
    if (int(h.via_images_.size()) != h.via_->table().order())
        throw std::invalid_argument("image list size mismatch");
    return h;
}

GroupHom GroupHom::identity(const Group& g) {
    if (g.is_finite_table()) {
        std::vector<int> img(size_t(g.finite().order()));
        for (int i = 0; i < g.finite().order(); ++i) img[size_t(i)] = i;
        return finite_map(g, g, std::move(img));
    }
    const auto& c = g.cryst();
    std::vector<int> theta(size_t(c.holonomy().order()));
    for (int i = 0; i < c.holonomy().order(); ++i) theta[size_t(i)] = i;
    return affine(g, g, IntMatrix::identity(c.dim()), VecQ(size_t(c.dim()), Rat(0)), std::move(theta));
}

GroupHom GroupHom::trivial(Group source, Group target) {
    if (source.is_finite_table()) {
        if (target.is_finite_table())
            return finite_map(source, target,
                              std::vector<int>(size_t(source.finite().order()), target.finite().identity()));
        return elem_images(source, target,
                           std::vector<Elem>(size_t(source.finite().order()), target.identity()));
    }
    const auto& s = source.cryst();
    if (target.is_cryst()) {
        const auto& t = target.cryst();
        return affine(source, target, IntMatrix::zero(t.dim(), s.dim()), VecQ(size_t(t.dim()), Rat(0)),
                      std::vector<int>(size_t(s.holonomy().order()), t.holonomy().identity()));
    }
    auto via = std::make_shared<GroupQuotient>(source, Subgroup::full(source));
    return through_quotient(source, target, via,
                            std::vector<int>(size_t(via->table().order()), target.finite().identity()));
}

Elem GroupHom::apply(const Elem& e) const {
    switch (kind_) {
        case Kind::FiniteMap:
            return Elem{{}, images_[size_t(e.h)]};
        case Kind::Affine: {
            VecI m = linear_.apply(e.m);
            return Elem{vec_add(m, carries_[size_t(e.h)]), holonomy_map_[size_t(e.h)]};
        }
        case Kind::ElemImages:
            return elem_images_[size_t(e.h)];
        case Kind::ThroughQuotient:
            return Elem{{}, via_images_[size_t(via_->project(e))]};
    }
    throw std::logic_error("unreachable");
}

Validation GroupHom::validate() const {
    switch (kind_) {
        case Kind::FiniteMap: {
            if (!is_homomorphism(source_.finite(), target_.finite(), images_))
                for (int a = 0; a < source_.finite().order(); ++a)
                    for (int b = 0; b < source_.finite().order(); ++b)
                        if (images_[size_t(source_.finite().mul(a, b))] !=
                            target_.finite().mul(images_[size_t(a)], images_[size_t(b)]))
                            return Validation::fail("homomorphism law fails at (" + source_.elem_name(Elem{{}, a}) +
                                                    ", " + source_.elem_name(Elem{{}, b}) + ")");
            return Validation::pass();
        }
        case Kind::Affine: {
            const auto& s = source_.cryst();
            const auto& t = target_.cryst();
            const auto& sh = s.holonomy();
            for (int a = 0; a < sh.order(); ++a)
                for (int b = 0; b < sh.order(); ++b)
                    if (holonomy_map_[size_t(sh.mul(a, b))] !=
                        t.holonomy().mul(holonomy_map_[size_t(a)], holonomy_map_[size_t(b)]))
                        return Validation::fail("holonomy map is not a homomorphism at (" + std::to_string(a) +
                                                "," + std::to_string(b) + ")");
            for (int hh = 0; hh < sh.order(); ++hh) {
                if (!(linear_ * s.rotation(hh) == t.rotation(holonomy_map_[size_t(hh)]) * linear_))
                    return Validation::fail("linear part does not intertwine holonomy " + std::to_string(hh));
                if (!t.lattice().contains(carries_[size_t(hh)]))
                    return Validation::fail("carry outside target lattice at holonomy " + std::to_string(hh));
            }
            for (int i = 0; i < s.dim(); ++i)
                if (!t.lattice().contains(linear_.apply(s.lattice().basis().row(i))))
                    return Validation::fail("linear part does not map lattice into target lattice");
            return Validation::pass();
        }
        case Kind::ElemImages: {
            const auto& sf = source_.finite();
            for (const auto& img : elem_images_)
                if (!target_.contains(img)) return Validation::fail("image outside the target group");
            for (int a = 0; a < sf.order(); ++a)
                for (int b = 0; b < sf.order(); ++b) {
                    Elem lhs = elem_images_[size_t(sf.mul(a, b))];
                    Elem rhs = target_.mul(elem_images_[size_t(a)], elem_images_[size_t(b)]);
                    if (!(lhs == rhs)) {
                        std::ostringstream os;
                        os << "homomorphism law fails at (" << source_.elem_name(Elem{{}, a}) << ", "
                           << source_.elem_name(Elem{{}, b}) << "): image of product is "
                           << target_.elem_name(lhs) << ", product of images is " << target_.elem_name(rhs);
                        return Validation::fail(os.str());
                    }
                }
            return Validation::pass();
        }
        case Kind::ThroughQuotient: {
            if (!is_homomorphism(via_->table(), target_.finite(), via_images_))
                return Validation::fail("quotient-level map is not a homomorphism");
            return Validation::pass();
        }
    }
    return Validation::fail("unknown hom kind");
}

bool GroupHom::operator==(const GroupHom& o) const {
    if (kind_ != o.kind_) return false;
    switch (kind_) {
        case Kind::FiniteMap:
            return images_ == o.images_;
        case Kind::Affine:
            return linear_ == o.linear_ && translation_ == o.translation_ && holonomy_map_ == o.holonomy_map_;
        case Kind::ElemImages:
            return elem_images_ == o.elem_images_;
        case Kind::ThroughQuotient:
            return via_ == o.via_ && via_images_ == o.via_images_;
    }
    return false;
}

GroupHom conjugate_hom(const Elem& b, const GroupHom& phi) {
    const Group& t = phi.target();
    if (!t.contains(b)) throw std::invalid_argument("conjugating element outside the target group");
    switch (phi.kind()) {
        case GroupHom::Kind::FiniteMap: {
            std::vector<int> img(size_t(phi.source().finite().order()));
            for (int i = 0; i < phi.source().finite().order(); ++i)
                img[size_t(i)] = t.finite().conj(b.h, phi.apply(Elem{{}, i}).h);
            return GroupHom::finite_map(phi.source(), t, std::move(img));
        }
        case GroupHom::Kind::Affine: {
            const auto& tc = t.cryst();
            const IntMatrix& ab = tc.rotation(b.h);
            IntMatrix d2 = ab * phi.linear();
            VecQ t2 = tc.translation(b.h);
            for (int i = 0; i < tc.dim(); ++i) {
                t2[i] += Rat(b.m[i]);
                for (int j = 0; j < tc.dim(); ++j) t2[i] += Rat(ab.at(i, j)) * phi.translation()[j];
            }
            std::vector<int> theta(phi.holonomy_map().size());
            for (size_t i = 0; i < theta.size(); ++i)
                theta[i] = tc.holonomy().conj(b.h, phi.holonomy_map()[i]);
            return GroupHom::affine(phi.source(), t, std::move(d2), std::move(t2), std::move(theta));
        }
        case GroupHom::Kind::ElemImages: {
            std::vector<Elem> img(size_t(phi.source().finite().order()));
            for (int i = 0; i < phi.source().finite().order(); ++i) img[size_t(i)] = t.conj(b, phi.apply(Elem{{}, i}));
            return GroupHom::elem_images(phi.source(), t, std::move(img));
        }
        case GroupHom::Kind::ThroughQuotient: {
            // conjugation happens entirely in the finite target
            std::vector<int> img(phi.via_images().size());
            for (size_t i = 0; i < img.size(); ++i) img[i] = t.finite().conj(b.h, phi.via_images()[i]);
            return GroupHom::through_quotient(phi.source(), t, phi.via(), std::move(img));
        }
    }
    throw std::logic_error("unreachable");
}

RestrictionResult restrict_and_descend(const GroupHom& phi, const Subgroup& gamma1, const Subgroup& gamma2) {
    return restrict_and_descend(phi, make_cover_pair(phi.source(), phi.target(), gamma1, gamma2));
}

RestrictionResult restrict_and_descend(const GroupHom& phi, const CoverPair& cover) {
    const Group& src = phi.source();
    const Group& tgt = phi.target();
    if (!src.same_as(cover.source) || !tgt.same_as(cover.target))
        throw std::invalid_argument("cover pair does not match the hom");
    const Subgroup& gamma1 = cover.gamma1;
    const Subgroup& gamma2 = cover.gamma2;
    const Group& g1 = cover.gamma1_group;
    const Group& g2 = cover.gamma2_group;

    // containment check on generators of gamma1, with witness
    for (const auto& gen : g1.generators()) {
        Elem img = phi.apply(gamma1.include(src, gen));
        if (!gamma2.contains(tgt, img))
            throw std::invalid_argument("image of subgroup generator " + src.elem_name(gamma1.include(src, gen)) +
                                        " lies outside gamma2: " + tgt.elem_name(img));
    }

    RestrictionResult out;
    out.q_source = cover.q1;
    out.q_target = cover.q2;

    // restricted hom
    if (gamma1.is_lattice() && gamma2.is_lattice()) {
        if (phi.kind() != GroupHom::Kind::Affine) throw std::invalid_argument("lattice restriction needs an affine hom");
        out.restricted = GroupHom::affine(g1, g2, phi.linear(), VecQ(size_t(g2.cryst().dim()), Rat(0)), {0});
    } else if (gamma1.is_lattice() && !gamma2.is_lattice()) {
        // cryst source restricted to its lattice, finite target: the hom is
        // quotient-factored, so the restriction factors through
        // gamma1 / (gamma1 intersect via-lattice)
        if (phi.kind() != GroupHom::Kind::ThroughQuotient)
            throw std::invalid_argument("lattice-to-finite restriction needs a quotient-factored hom");
        Sublattice both = lattice_intersection(gamma1.lattice(), phi.via()->sub().lattice());
        auto via_new = std::make_shared<GroupQuotient>(g1, Subgroup::of_lattice(both));
        std::vector<int> images(size_t(via_new->table().order()));
        for (int i = 0; i < via_new->table().order(); ++i) {
            Elem amb = gamma1.include(src, via_new->rep(i));
            images[size_t(i)] = gamma2.restrict(tgt, phi.apply(amb)).h;
        }
        out.restricted = GroupHom::through_quotient(g1, g2, via_new, std::move(images));
    } else if (!gamma1.is_lattice() && tgt.is_cryst()) {
        std::vector<Elem> images;
        for (int i = 0; i < g1.finite().order(); ++i) {
            Elem img = phi.apply(gamma1.include(src, Elem{{}, i}));
            images.push_back(gamma2.restrict(tgt, img));
        }
        out.restricted = GroupHom::elem_images(g1, g2, std::move(images));
    } else {
        std::vector<int> images;
        for (int i = 0; i < g1.finite().order(); ++i) {
            Elem img = phi.apply(gamma1.include(src, Elem{{}, i}));
            images.push_back(gamma2.restrict(tgt, img).h);
        }
        out.restricted = GroupHom::finite_map(g1, g2, std::move(images));
    }

    // descended hom on the quotient tables
    std::vector<int> bar(size_t(out.q_source->table().order()));
    for (int i = 0; i < out.q_source->table().order(); ++i)
        bar[size_t(i)] = out.q_target->project(phi.apply(out.q_source->rep(i)));
    out.descended = GroupHom::finite_map(out.q_source->quotient_group(), out.q_target->quotient_group(), std::move(bar));
    if (auto v = out.descended.validate(); !v.ok)
        throw std::logic_error("descended hom is not a homomorphism: " + v.error);
    return out;
}

}  // namespace flattrace
