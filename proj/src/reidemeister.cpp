#include "flattrace/reidemeister.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace flattrace {

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(size_t(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[size_t(x)] != x) {
            parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
            x = parent[size_t(x)];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[size_t(std::max(a, b))] = std::min(a, b);
    }
};

// Row-span membership over Z for a possibly non-full-rank generating set.
struct RowSpan {
    HermiteResult hnf;
    explicit RowSpan(const std::vector<VecI>& rows, int dim) {
        IntMatrix m(int(rows.size()), dim);
        for (size_t i = 0; i < rows.size(); ++i)
            for (int j = 0; j < dim; ++j) m.at(int(i), j) = rows[i][size_t(j)];
        hnf = hermite_normal_form(m);
    }
    bool contains(const VecI& v) const {
        VecI w = v;
        for (int i = 0; i < hnf.rank; ++i) {
            int p = hnf.pivot_cols[size_t(i)];
            Int q = floor_div(w[size_t(p)], hnf.h.at(i, p));
            if (q != 0)
                for (int j = 0; j < hnf.h.cols(); ++j) w[size_t(j)] -= q * hnf.h.at(i, j);
        }
        return is_zero(w);
    }
};

}  // namespace

HomPair::HomPair(GroupHom p, GroupHom q) : phi(std::move(p)), psi(std::move(q)) {
    if (!phi.source().same_as(psi.source()) || !phi.target().same_as(psi.target()))
        throw std::invalid_argument("homomorphism pair must share source and target");
}

Elem HomPair::move(const Elem& gamma, const Elem& x) const {
    const Group& t = target();
    return t.mul(t.mul(psi.apply(gamma), x), t.inv(phi.apply(gamma)));
}

ReidemeisterSet ReidemeisterSet::compute(const GroupHom& phi, const GroupHom& psi) {
    ReidemeisterSet r;
    r.pair_ = HomPair(phi, psi);
    if (r.pair_.target().is_finite_table()) {
        r.form_ = Form::FiniteOrbits;
        r.build_finite();
        return r;
    }

    bool trivial_action = true;
    for (const auto& g : r.pair_.source().generators()) {
        Elem a = phi.apply(g);
        if (!(a == psi.apply(g)) || !r.pair_.target().is_central(a)) {
            trivial_action = false;
            break;
        }
    }
    if (trivial_action) {
        r.form_ = Form::Singletons;
        r.finite_ = false;
        return r;
    }
    r.form_ = Form::Sectors;
    r.build_sectors();
    return r;
}

void ReidemeisterSet::build_finite() {
    const FiniteGroup& t = pair_.target().finite();
    int n = t.order();
    UnionFind uf(n);
    std::vector<Elem> movers =
        pair_.source().finite_order() ? pair_.source().elements() : pair_.source().generators();
    for (const auto& g : movers)
        for (int x = 0; x < n; ++x) uf.unite(x, pair_.move(g, Elem{{}, x}).h);

    std::map<int, std::vector<int>> orbits;
    for (int x = 0; x < n; ++x) orbits[uf.find(x)].push_back(x);

    class_of_elem_.assign(size_t(n), -1);
    for (const auto& [root, members] : orbits) {
        int id = int(classes_.size());
        classes_.push_back(ReidClass{Elem{{}, members.front()}, Int(members.size())});
        for (int x : members) class_of_elem_[size_t(x)] = id;
    }
    finite_ = true;
}

void ReidemeisterSet::build_sectors() {
    const CrystGroup& t = pair_.target().cryst();
    const FiniteGroup& holt = t.holonomy();
    const Group& src = pair_.source();

    std::vector<Elem> hol_gens;
    if (src.is_finite_table()) {
        hol_gens = src.elements();
    } else {
        for (int h = 0; h < src.cryst().holonomy().order(); ++h)
            hol_gens.push_back(Elem{VecI(size_t(src.cryst().dim()), Int(0)), h});
    }
    auto hol_move = [&](const Elem& g, int b) {
        int p = pair_.psi.apply(g).h;
        int q = pair_.phi.apply(g).h;
        return holt.mul(holt.mul(p, b), holt.inv(q));
    };

    hol_sector_.assign(size_t(holt.order()), -1);
    hol_witness_.assign(size_t(holt.order()), Elem{});
    bool any_degenerate = false;

    for (int b0 = 0; b0 < holt.order(); ++b0) {
        if (hol_sector_[size_t(b0)] >= 0) continue;
        int sec = int(sectors_.size());
        hol_sector_[size_t(b0)] = sec;
        hol_witness_[size_t(b0)] = src.identity();
        std::vector<int> frontier{b0};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int b : frontier)
                for (const auto& g : hol_gens) {
                    int b2 = hol_move(g, b);
                    if (hol_sector_[size_t(b2)] >= 0) continue;
                    hol_sector_[size_t(b2)] = sec;
                    hol_witness_[size_t(b2)] = src.mul(hol_witness_[size_t(b)], src.inv(g));
                    next.push_back(b2);
                }
            frontier = std::move(next);
        }

        Sector sector;
        sector.rep_h = b0;
        int n2 = t.dim();

        // translation part of the action: images of the source lattice basis
        IntMatrix m(n2, 0);
        if (src.is_cryst() && src.cryst().dim() > 0) {
            int n1 = src.cryst().dim();
            m = IntMatrix(n2, n1);
            const IntMatrix& gpsi = pair_.psi.linear();
            const IntMatrix& gphi = pair_.phi.linear();
            const IntMatrix& ab = t.rotation(b0);
            for (int j = 0; j < n1; ++j) {
                VecI basis_row = src.cryst().lattice().basis().row(j);
                VecI img = vec_sub(gpsi.apply(basis_row), ab.apply(gphi.apply(basis_row)));
                auto coords = t.lattice().coordinates(img);
                if (!coords) throw std::logic_error("translation action leaves the target lattice");
                for (int i = 0; i < n2; ++i) m.at(i, j) = (*coords)[size_t(i)];
            }
        }
        sector.quotient = AbelianQuotient::cokernel(m);
        if (!sector.quotient.finite()) {
            sector.degenerate = true;
            degenerate_.push_back(b0);
            any_degenerate = true;
            sectors_.push_back(std::move(sector));
            continue;
        }

        auto reps = sector.quotient.representatives();
        for (size_t i = 0; i < reps.size(); ++i) sector.rep_index[reps[i]] = int(i);

        // fold by the finite stabilizer of the sector representative
        UnionFind uf(int(reps.size()));
        for (const auto& g : hol_gens) {
            if (hol_move(g, b0) != b0) continue;
            for (size_t i = 0; i < reps.size(); ++i) {
                Elem x{t.lattice().from_coordinates(reps[i]), b0};
                Elem y = pair_.move(g, x);
                if (y.h != b0) throw std::logic_error("stabilizer move left the sector");
                auto yc = t.lattice().coordinates(y.m);
                VecI ry = sector.quotient.canonicalize(*yc);
                uf.unite(int(i), sector.rep_index.at(ry));
            }
        }

        std::map<int, std::vector<int>> orbits;
        for (size_t i = 0; i < reps.size(); ++i) orbits[uf.find(int(i))].push_back(int(i));

        std::vector<std::pair<Elem, std::vector<int>>> sector_classes;
        for (const auto& [root, members] : orbits) {
            Elem best;
            bool first = true;
            for (int i : members) {
                Elem cand{t.lattice().from_coordinates(reps[size_t(i)]), b0};
                if (first || cand < best) {
                    best = cand;
                    first = false;
                }
            }
            sector_classes.push_back({best, members});
        }
        std::sort(sector_classes.begin(), sector_classes.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });

        sector.class_of_rep.assign(reps.size(), -1);
        for (const auto& [rep, members] : sector_classes) {
            int id = int(classes_.size());
            classes_.push_back(ReidClass{rep, Int(-1)});
            for (int i : members) sector.class_of_rep[size_t(i)] = id;
        }
        sectors_.push_back(std::move(sector));
    }
    finite_ = !any_degenerate;
}

const std::vector<ReidClass>& ReidemeisterSet::classes() const {
    if (!finite_) throw std::invalid_argument("class list of an infinite Reidemeister set");
    return classes_;
}

Int ReidemeisterSet::count() const {
    if (!finite_) throw std::invalid_argument("count of an infinite Reidemeister set");
    return Int(classes_.size());
}

Elem ReidemeisterSet::class_rep(const Elem& x) const {
    if (!pair_.target().contains(x)) throw std::invalid_argument("element outside the target group");
    switch (form_) {
        case Form::FiniteOrbits:
            return classes_[size_t(class_of_elem_[size_t(x.h)])].rep;
        case Form::Singletons:
            return x;
        case Form::Sectors: {
            const Sector& s = sectors_[size_t(hol_sector_[size_t(x.h)])];
            if (s.degenerate)
                throw std::invalid_argument("class representative requested in a degenerate sector");
            Elem y = pair_.move(hol_witness_[size_t(x.h)], x);
            auto yc = pair_.target().cryst().lattice().coordinates(y.m);
            VecI r = s.quotient.canonicalize(*yc);
            return classes_[size_t(s.class_of_rep[size_t(s.rep_index.at(r))])].rep;
        }
    }
    throw std::logic_error("unreachable");
}

int ReidemeisterSet::class_id(const Elem& x) const {
    if (!finite_) throw std::invalid_argument("class id of an infinite Reidemeister set");
    Elem rep = class_rep(x);
    for (size_t i = 0; i < classes_.size(); ++i)
        if (classes_[i].rep == rep) return int(i);
    throw std::logic_error("canonical representative missing from the class list");
}

std::string ReidemeisterSet::describe() const {
    std::ostringstream os;
    switch (form_) {
        case Form::FiniteOrbits:
            os << classes_.size() << " classes (finite orbit decomposition)";
            break;
        case Form::Singletons:
            os << "infinite: every element is its own class";
            break;
        case Form::Sectors:
            if (finite_)
                os << classes_.size() << " classes in " << sectors_.size() << " holonomy sectors";
            else
                os << "infinite: " << degenerate_.size() << " degenerate holonomy sector(s)";
            break;
    }
    return os.str();
}

Elem right_translate_class(const ReidemeisterSet& base, const Elem& b, const Elem& rep) {
    return base.class_rep(base.pair().target().mul(rep, b));
}

CoinSubgroup CoinSubgroup::compute(const GroupHom& phi, const GroupHom& psi) {
    HomPair pair(phi, psi);  // validates shared source/target
    CoinSubgroup c;
    c.source_ = phi.source();

    if (c.source_.finite_order()) {
        for (const auto& e : c.source_.elements())
            if (phi.apply(e) == psi.apply(e)) c.elements_.push_back(e);
        c.finite_ = true;
        return c;
    }

    const CrystGroup& s = c.source_.cryst();
    c.lattice_form_ = true;
    if (phi.kind() == GroupHom::Kind::Affine && psi.kind() == GroupHom::Kind::Affine) {
        // phi((l,h)) = psi((l,h))  <=>  theta parts agree and
        // (Dphi - Dpsi) l = carry_psi(h) - carry_phi(h)
        IntMatrix diff = (phi.linear() - psi.linear()) * s.lattice().basis().transpose();
        for (int h = 0; h < s.holonomy().order(); ++h) {
            if (phi.holonomy_map()[size_t(h)] != psi.holonomy_map()[size_t(h)]) continue;
            VecI rhs = vec_sub(psi.holonomy_carry(h), phi.holonomy_carry(h));
            auto sol = solve_integer_lattice(diff, rhs);
            if (!sol) continue;
            c.hol_particulars_.push_back({h, s.lattice().from_coordinates(sol->particular)});
            if (c.kernel_.empty())
                for (const auto& k : sol->kernel_basis) c.kernel_.push_back(s.lattice().from_coordinates(k));
        }
    } else if (phi.kind() == GroupHom::Kind::ThroughQuotient && psi.kind() == GroupHom::Kind::ThroughQuotient) {
        Sublattice common =
            lattice_intersection(phi.via()->sub().lattice(), psi.via()->sub().lattice());
        GroupQuotient q(c.source_, Subgroup::of_lattice(common));
        for (int i = 0; i < q.table().order(); ++i) {
            const Elem& rep = q.rep(i);
            if (phi.apply(rep) == psi.apply(rep)) c.hol_particulars_.push_back({rep.h, rep.m});
        }
        for (int i = 0; i < common.basis().rows(); ++i) c.kernel_.push_back(common.basis().row(i));
    } else {
        throw std::invalid_argument("coincidence subgroup: unsupported homomorphism pair");
    }
    c.finite_ = c.kernel_.empty();
    if (c.finite_)
        for (const auto& [h, m] : c.hol_particulars_) c.elements_.push_back(Elem{m, h});
    return c;
}

bool CoinSubgroup::finite() const { return finite_; }

Int CoinSubgroup::order() const {
    if (!finite_) throw std::invalid_argument("order of an infinite coincidence subgroup");
    return Int(elements_.size());
}

const std::vector<Elem>& CoinSubgroup::elements() const {
    if (!finite_) throw std::invalid_argument("element list of an infinite coincidence subgroup");
    return elements_;
}

bool CoinSubgroup::contains(const Elem& e) const {
    if (!lattice_form_) {
        return std::find(elements_.begin(), elements_.end(), e) != elements_.end();
    }
    RowSpan span(kernel_, int(e.m.size()));
    for (const auto& [h, m] : hol_particulars_)
        if (h == e.h && span.contains(vec_sub(e.m, m))) return true;
    return false;
}

std::vector<int> CoinSubgroup::image_in_quotient(const GroupQuotient& q) const {
    std::set<int> img;
    if (!lattice_form_) {
        for (const auto& e : elements_) img.insert(q.project(e));
        return {img.begin(), img.end()};
    }
    std::vector<int> gens;
    int id = q.source().cryst().holonomy().identity();
    for (const auto& k : kernel_) gens.push_back(q.project(Elem{k, id}));
    for (const auto& [h, m] : hol_particulars_) gens.push_back(q.project(Elem{m, h}));
    auto sub = generated_subgroup(q.table(), gens);
    return sub;
}

bool CoinSubgroup::is_translation_subgroup(const Sublattice& l) const {
    if (!lattice_form_) return false;
    if (kernel_.size() != size_t(l.dim())) return false;
    int id_h = source_.cryst().holonomy().identity();
    IntMatrix kb(int(kernel_.size()), l.dim());
    for (size_t i = 0; i < kernel_.size(); ++i)
        for (int j = 0; j < l.dim(); ++j) kb.at(int(i), j) = kernel_[i][size_t(j)];
    Sublattice k(kb);
    if (!l.contains(k)) return false;
    Int cosets = l.index_of(k);
    if (cosets != Int(hol_particulars_.size())) return false;
    std::set<VecI> seen;
    for (const auto& [h, m] : hol_particulars_) {
        if (h != id_h || !l.contains(m)) return false;
        if (!seen.insert(k.reduce(m)).second) return false;  // duplicate coset
    }
    return true;
}

bool CoinSubgroup::is_full_group() const {
    if (lattice_form_) {
        const auto& s = source_.cryst();
        if (kernel_.size() != size_t(s.dim())) return false;
        IntMatrix kb(int(kernel_.size()), s.dim());
        for (size_t i = 0; i < kernel_.size(); ++i)
            for (int j = 0; j < s.dim(); ++j) kb.at(int(i), j) = kernel_[i][size_t(j)];
        if (!(Sublattice(kb) == s.lattice())) return false;
        std::set<int> hs;
        for (const auto& [h, m] : hol_particulars_) hs.insert(h);
        return int(hs.size()) == s.holonomy().order();
    }
    if (!source_.finite_order()) return false;
    return int(elements_.size()) == int(source_.elements().size());
}

bool CoinSubgroup::is_trivial() const {
    return finite_ && elements_.size() == 1 && elements_[0] == source_.identity();
}

std::string CoinSubgroup::describe() const {
    std::ostringstream os;
    if (!lattice_form_) {
        if (is_trivial()) return "{1}";
        if (is_full_group()) return "full group";
        os << "{";
        for (size_t i = 0; i < elements_.size(); ++i)
            os << (i ? "," : "") << source_.elem_name(elements_[i]);
        os << "}";
        return os.str();
    }
    if (is_full_group()) return "full group";
    if (is_translation_subgroup(source_.cryst().lattice())) return "translation lattice";
    os << "subgroup with " << hol_particulars_.size() << " coset component(s), translation rank "
       << kernel_.size();
    return os.str();
}

TwistedBundle make_twisted_bundle(const GroupHom& phi, const GroupHom& psi, const CoverPair& cover,
                                  const Elem& beta) {
    TwistedBundle b;
    b.beta = beta;
    b.tau_phi = conjugate_hom(beta, phi);
    b.psi = psi;
    b.phi_parts = restrict_and_descend(b.tau_phi, cover);
    b.psi_parts = restrict_and_descend(b.psi, cover);
    b.r_sub = ReidemeisterSet::compute(b.phi_parts.restricted, b.psi_parts.restricted);
    b.r_mid = ReidemeisterSet::compute(b.tau_phi, b.psi);
    b.r_bar = ReidemeisterSet::compute(b.phi_parts.descended, b.psi_parts.descended);
    return b;
}

TwistedBundle make_twisted_bundle(const GroupHom& phi, const GroupHom& psi, const Subgroup& gamma1,
                                  const Subgroup& gamma2, const Elem& beta) {
    return make_twisted_bundle(phi, psi, make_cover_pair(phi.source(), phi.target(), gamma1, gamma2), beta);
}

Elem TwistedBundle::include_class(const Elem& sub_rep) const {
    const Group& tgt = tau_phi.target();
    Elem ambient = phi_parts.q_target->sub().include(tgt, sub_rep);
    return r_mid.class_rep(ambient);
}

Elem TwistedBundle::project_class(const Elem& mid_rep) const {
    return r_bar.class_rep(Elem{{}, phi_parts.q_target->project(mid_rep)});
}

ExactnessReport check_exactness(const TwistedBundle& b) {
    ExactnessReport rep;
    const auto& bar_classes = b.r_bar.classes();
    const auto& mid_classes = b.r_mid.classes();
    const auto& sub_classes = b.r_sub.classes();

    std::set<Elem> bar_hit;
    std::set<Elem> kernel_classes;  // mid classes projecting to [1bar]
    Elem one_bar = b.r_bar.class_rep(b.r_bar.pair().target().identity());
    for (const auto& c : mid_classes) {
        Elem pr = b.project_class(c.rep);
        bar_hit.insert(pr);
        if (pr == one_bar) kernel_classes.insert(c.rep);
    }
    rep.surjective = int(bar_hit.size()) == int(bar_classes.size());

    std::set<Elem> image_classes;
    for (const auto& c : sub_classes) image_classes.insert(b.include_class(c.rep));
    rep.kernel_matches_image = image_classes == kernel_classes;

    if (!rep.ok()) {
        std::ostringstream os;
        os << "surjective=" << rep.surjective << " kernel==image=" << rep.kernel_matches_image;
        rep.detail = os.str();
    }
    return rep;
}

FiberSizeReport fiber_size(const TwistedBundle& b, const Elem& mid_class_rep) {
    FiberSizeReport out;
    Elem target_class = b.r_mid.class_rep(mid_class_rep);
    Int direct(0);
    for (const auto& c : b.r_sub.classes())
        if (b.include_class(c.rep) == target_class) direct += 1;
    out.direct_count = direct;

    // index formula [coin(tau_bbar phibar, psibar) : u1(coin(tau_{gb} phi, psi))];
    // phi_parts.descended already is tau_bbar phibar
    CoinSubgroup coin_bar = CoinSubgroup::compute(b.phi_parts.descended, b.psi_parts.descended);
    GroupHom tau_gb_phi = conjugate_hom(target_class, b.tau_phi);
    CoinSubgroup coin_mid = CoinSubgroup::compute(tau_gb_phi, b.psi);
    auto image = coin_mid.image_in_quotient(*b.phi_parts.q_source);

    // the image must sit inside coin_bar
    std::set<int> bar_set;
    for (const auto& e : coin_bar.elements()) bar_set.insert(e.h);
    for (int x : image)
        if (!bar_set.count(x)) throw std::logic_error("coin image escapes the quotient coincidence subgroup");
    if (coin_bar.order() % Int(image.size()) != 0)
        throw std::logic_error("coin index is not integral");
    out.index_formula = coin_bar.order() / Int(image.size());

    if (!out.agree()) throw std::logic_error("fiber size disagrees with the coincidence index formula");
    return out;
}

OrbitStabilizerReport orbit_stabilizer_identity(const ReidemeisterSet& r_bar, const GroupHom& phibar,
                                                const GroupHom& psibar, const Elem& beta_bar) {
    OrbitStabilizerReport rep;
    rep.quotient_order = Int(phibar.source().finite().order());
    rep.class_size = r_bar.classes()[size_t(r_bar.class_id(beta_bar))].orbit_size;
    rep.coin_order = CoinSubgroup::compute(conjugate_hom(beta_bar, phibar), psibar).order();
    return rep;
}

}  // namespace flattrace
