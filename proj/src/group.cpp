#include "flattrace/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace flattrace {

Elem Group::identity() const {
    if (fin_) return Elem{{}, fin_->identity()};
    return cryst_->identity();
}

Elem Group::mul(const Elem& a, const Elem& b) const {
    if (fin_) return Elem{{}, fin_->mul(a.h, b.h)};
    return cryst_->mul(a, b);
}

Elem Group::inv(const Elem& a) const {
    if (fin_) return Elem{{}, fin_->inv(a.h)};
    return cryst_->inv(a);
}

bool Group::contains(const Elem& e) const {
    if (fin_) return e.m.empty() && e.h >= 0 && e.h < fin_->order();
    if (e.h < 0 || e.h >= cryst_->holonomy().order() || int(e.m.size()) != cryst_->dim()) return false;
    return cryst_->lattice().contains(e.m);
}

std::vector<Elem> Group::generators() const {
    if (fin_) {
        std::vector<Elem> gens;
        for (int g : generating_set(*fin_)) gens.push_back(Elem{{}, g});
        return gens;
    }
    return cryst_->generators();
}

std::vector<Elem> Group::elements() const {
    if (fin_) {
        std::vector<Elem> out;
        for (int i = 0; i < fin_->order(); ++i) out.push_back(Elem{{}, i});
        return out;
    }
    if (cryst_->dim() != 0) throw std::invalid_argument("cannot enumerate an infinite group");
    std::vector<Elem> out;
    for (int h = 0; h < cryst_->holonomy().order(); ++h) out.push_back(Elem{{}, h});
    return out;
}

bool Group::is_central(const Elem& e) const {
    for (const auto& g : generators())
        if (!(mul(e, g) == mul(g, e))) return false;
    return true;
}

std::string Group::elem_name(const Elem& e) const {
    if (fin_) return fin_->name_of(e.h);
    return cryst_->elem_name(e);
}

std::string Group::name() const {
    if (fin_) return "finite(" + std::to_string(fin_->order()) + ")";
    return cryst_->name().empty() ? "cryst" : cryst_->name();
}

Subgroup Subgroup::of_lattice(Sublattice l) {
    Subgroup s;
    s.lattice_ = std::move(l);
    return s;
}

Subgroup Subgroup::of_elements(std::vector<int> elems) {
    Subgroup s;
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    s.elements_ = std::move(elems);
    return s;
}

Subgroup Subgroup::trivial(const Group& ambient) {
    if (ambient.is_finite_table()) return of_elements({ambient.finite().identity()});
    throw std::invalid_argument("trivial subgroup of an infinite group has infinite index");
}

Subgroup Subgroup::full(const Group& ambient) {
    if (ambient.is_finite_table()) {
        std::vector<int> all(size_t(ambient.finite().order()));
        for (int i = 0; i < ambient.finite().order(); ++i) all[size_t(i)] = i;
        return of_elements(std::move(all));
    }
    return of_lattice(ambient.cryst().lattice());
}

Validation Subgroup::validate(const Group& ambient) const {
    if (is_lattice()) {
        if (!ambient.is_cryst()) return Validation::fail("lattice subgroup of a table group");
        const auto& g = ambient.cryst();
        if (lattice_->dim() != g.dim()) return Validation::fail("sublattice dimension mismatch");
        if (!g.lattice().contains(*lattice_)) return Validation::fail("sublattice exceeds translation lattice");
        for (int h = 0; h < g.holonomy().order(); ++h)
            if (!lattice_->invariant_under(g.rotation(h)))
                return Validation::fail("sublattice not invariant under holonomy " + std::to_string(h));
        return Validation::pass();
    }
    if (!ambient.is_finite_table()) return Validation::fail("element-list subgroup of an infinite group");
    const auto& g = ambient.finite();
    std::set<int> s(elements_.begin(), elements_.end());
    if (!s.count(g.identity())) return Validation::fail("subgroup misses identity");
    for (int a : elements_) {
        if (!s.count(g.inv(a))) return Validation::fail("subgroup not closed under inverse");
        for (int b : elements_)
            if (!s.count(g.mul(a, b))) return Validation::fail("subgroup not closed under product");
    }
    if (!is_normal(g, elements_)) return Validation::fail("subgroup is not normal");
    return Validation::pass();
}

bool Subgroup::contains(const Group& ambient, const Elem& e) const {
    if (is_lattice()) {
        return e.h == ambient.cryst().holonomy().identity() && lattice_->contains(e.m);
    }
    return std::binary_search(elements_.begin(), elements_.end(), e.h);
}

Group Subgroup::as_group(const Group& ambient) const {
    if (is_lattice()) return Group(torus_group(lattice_->dim(), *lattice_));
    const auto& g = ambient.finite();
    int n = int(elements_.size());
    std::vector<int> table(size_t(n) * n);
    std::vector<std::string> names(size_t(n));
    for (int i = 0; i < n; ++i) {
        names[size_t(i)] = g.name_of(elements_[size_t(i)]);
        for (int j = 0; j < n; ++j) {
            int p = g.mul(elements_[size_t(i)], elements_[size_t(j)]);
            auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
            if (it == elements_.end() || *it != p) throw std::invalid_argument("subgroup not closed");
            table[size_t(i) * n + j] = int(it - elements_.begin());
        }
    }
    return Group(FiniteGroup(n, std::move(table), std::move(names)));
}

Elem Subgroup::include(const Group& ambient, const Elem& sub_elem) const {
    if (is_lattice()) return Elem{sub_elem.m, ambient.cryst().holonomy().identity()};
    return Elem{{}, elements_[size_t(sub_elem.h)]};
}

Elem Subgroup::restrict(const Group& ambient, const Elem& e) const {
    if (is_lattice()) {
        if (e.h != ambient.cryst().holonomy().identity() || !lattice_->contains(e.m))
            throw std::invalid_argument("element is outside the subgroup");
        return Elem{e.m, 0};
    }
    auto it = std::lower_bound(elements_.begin(), elements_.end(), e.h);
    if (it == elements_.end() || *it != e.h) throw std::invalid_argument("element is outside the subgroup");
    return Elem{{}, int(it - elements_.begin())};
}

std::string Subgroup::describe(const Group& ambient) const {
    std::ostringstream os;
    if (is_lattice()) {
        if (ambient.is_cryst() && *lattice_ == ambient.cryst().lattice())
            os << "full translation lattice";
        else
            os << "sublattice " << lattice_->basis().to_string();
        return os.str();
    }
    if (int(elements_.size()) == ambient.finite().order()) return "full group";
    os << "{";
    for (size_t i = 0; i < elements_.size(); ++i)
        os << (i ? "," : "") << ambient.finite().name_of(elements_[i]);
    os << "}";
    return os.str();
}

CoverPair make_cover_pair(Group source, Group target, Subgroup gamma1, Subgroup gamma2) {
    CoverPair c;
    c.source = std::move(source);
    c.target = std::move(target);
    c.gamma1 = std::move(gamma1);
    c.gamma2 = std::move(gamma2);
    if (auto v = c.gamma1.validate(c.source); !v.ok) throw std::invalid_argument("gamma1 invalid: " + v.error);
    if (auto v = c.gamma2.validate(c.target); !v.ok) throw std::invalid_argument("gamma2 invalid: " + v.error);
    c.gamma1_group = c.gamma1.as_group(c.source);
    c.gamma2_group = c.gamma2.as_group(c.target);
    c.q1 = std::make_shared<GroupQuotient>(c.source, c.gamma1);
    c.q2 = std::make_shared<GroupQuotient>(c.target, c.gamma2);
    return c;
}

GroupQuotient::GroupQuotient(Group source, Subgroup sub) : source_(std::move(source)), sub_(std::move(sub)) {
    if (auto v = sub_.validate(source_); !v.ok)
        throw std::invalid_argument("invalid subgroup for quotient: " + v.error);
    if (source_.is_finite_table()) {
        auto q = quotient_by_normal(source_.finite(), sub_.elements());
        quotient_group_ = Group(std::move(q.group));
        finite_project_ = q.project_of;
        for (int r : q.rep_of) reps_.push_back(Elem{{}, r});
        return;
    }

    const auto& g = source_.cryst();
    const auto& sub_lat = sub_.lattice();
    // Coset representatives of (translation lattice)/L: close the orbit of 0
    // under adding ambient basis rows, reducing mod L.
    std::set<VecI> seen;
    std::vector<VecI> frontier{sub_lat.reduce(VecI(size_t(g.dim()), Int(0)))};
    seen.insert(frontier[0]);
    while (!frontier.empty()) {
        std::vector<VecI> next;
        for (const auto& v : frontier)
            for (int i = 0; i < g.dim(); ++i) {
                VecI w = sub_lat.reduce(vec_add(v, g.lattice().basis().row(i)));
                if (seen.insert(w).second) next.push_back(w);
            }
        frontier = std::move(next);
    }
    lattice_reps_.assign(seen.begin(), seen.end());
    for (size_t i = 0; i < lattice_reps_.size(); ++i) lattice_index_[lattice_reps_[i]] = int(i);

    int hol = g.holonomy().order();
    int order = int(lattice_reps_.size()) * hol;
    auto elem_of = [&](int idx) { return Elem{lattice_reps_[size_t(idx / hol)], idx % hol}; };
    auto index_of = [&](const Elem& e) {
        auto it = lattice_index_.find(sub_lat.reduce(e.m));
        return it->second * hol + e.h;
    };
    std::vector<int> table(size_t(order) * order);
    std::vector<std::string> names(size_t(order));
    for (int i = 0; i < order; ++i) {
        Elem a = elem_of(i);
        names[size_t(i)] = g.elem_name(a) + "~";
        for (int j = 0; j < order; ++j) table[size_t(i) * order + j] = index_of(g.mul(a, elem_of(j)));
    }
    quotient_group_ = Group(FiniteGroup(order, std::move(table), std::move(names)));
    for (int i = 0; i < order; ++i) reps_.push_back(elem_of(i));

    // the projection must be a homomorphism on all representative pairs
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j)
            if (project(g.mul(reps_[size_t(i)], reps_[size_t(j)])) != this->table().mul(i, j))
                throw std::logic_error("quotient projection fails the homomorphism law");
}

int GroupQuotient::project(const Elem& e) const {
    if (source_.is_finite_table()) return finite_project_[size_t(e.h)];
    auto it = lattice_index_.find(sub_.lattice().reduce(e.m));
    if (it == lattice_index_.end()) throw std::invalid_argument("element outside the quotient domain");
    return it->second * source_.cryst().holonomy().order() + e.h;
}

}  // namespace flattrace
