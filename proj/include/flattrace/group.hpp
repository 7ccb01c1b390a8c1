#pragma once

#include "flattrace/cryst.hpp"

namespace flattrace {

/// Handle to a deck transformation group: either a finite table group or a
/// crystallographic group. Immutable and cheap to copy.
class Group {
public:
    Group() = default;
    explicit Group(FiniteGroup g) : fin_(std::make_shared<FiniteGroup>(std::move(g))) {}
    explicit Group(CrystGroup g) : cryst_(std::make_shared<CrystGroup>(std::move(g))) {}

    bool is_finite_table() const { return fin_ != nullptr; }
    bool is_cryst() const { return cryst_ != nullptr; }
    const FiniteGroup& finite() const { return *fin_; }
    const CrystGroup& cryst() const { return *cryst_; }

    Elem identity() const;
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    Elem conj(const Elem& g, const Elem& x) const { return mul(mul(g, x), inv(g)); }
    bool contains(const Elem& e) const;

    std::vector<Elem> generators() const;
    /// All elements; throws for infinite groups.
    std::vector<Elem> elements() const;
    bool finite_order() const { return fin_ != nullptr || cryst_->dim() == 0; }
    bool is_central(const Elem& e) const;

    std::string elem_name(const Elem& e) const;
    std::string name() const;

    /// Same underlying object (identity, not isomorphism).
    bool same_as(const Group& o) const { return fin_ == o.fin_ && cryst_ == o.cryst_; }

private:
    std::shared_ptr<const FiniteGroup> fin_;
    std::shared_ptr<const CrystGroup> cryst_;
};

/// Finite-index normal subgroup data: a holonomy-invariant sublattice of the
/// translation lattice (crystallographic case) or an explicit normal subset
/// (finite case).
class Subgroup {
public:
    Subgroup() = default;
    static Subgroup of_lattice(Sublattice l);
    static Subgroup of_elements(std::vector<int> elems);
    static Subgroup trivial(const Group& ambient);
    static Subgroup full(const Group& ambient);

    bool is_lattice() const { return lattice_.has_value(); }
    const Sublattice& lattice() const { return *lattice_; }
    const std::vector<int>& elements() const { return elements_; }

    /// Normality and finite-index checks against the ambient group.
    Validation validate(const Group& ambient) const;
    bool contains(const Group& ambient, const Elem& e) const;
    /// The subgroup as a group in its own right. Lattice subgroups become
    /// torus groups over the sublattice, in the ambient coordinates.
    Group as_group(const Group& ambient) const;
    /// Subgroup element (in as_group coordinates) -> ambient element.
    Elem include(const Group& ambient, const Elem& sub_elem) const;
    /// Ambient element -> subgroup element; requires membership.
    Elem restrict(const Group& ambient, const Elem& e) const;

    std::string describe(const Group& ambient) const;

private:
    std::optional<Sublattice> lattice_;
    std::vector<int> elements_;  // sorted
};

class GroupQuotient;

/// Shared data for one pair of finite-index normal subgroups
/// Gamma1 < Pi1, Gamma2 < Pi2: the subgroups as groups and both quotients,
/// built once so every hom restriction refers to the same instances.
struct CoverPair {
    Group source, target;
    Subgroup gamma1, gamma2;
    Group gamma1_group, gamma2_group;
    std::shared_ptr<const GroupQuotient> q1, q2;
};

CoverPair make_cover_pair(Group source, Group target, Subgroup gamma1, Subgroup gamma2);

/// Finite quotient of a group by a Subgroup, with canonical coset
/// representatives and a verified projection.
class GroupQuotient {
public:
    GroupQuotient(Group source, Subgroup sub);

    const Group& source() const { return source_; }
    const Subgroup& sub() const { return sub_; }
    const FiniteGroup& table() const { return quotient_group_.finite(); }
    const Group& quotient_group() const { return quotient_group_; }
    const std::vector<Elem>& reps() const { return reps_; }

    int project(const Elem& e) const;
    const Elem& rep(int idx) const { return reps_[size_t(idx)]; }
    Int order() const { return Int(table_.order()); }

private:
    Group source_;
    Subgroup sub_;
    Group quotient_group_;
    std::vector<Elem> reps_;
    std::vector<VecI> lattice_reps_;             // cryst case, sorted
    std::map<VecI, int> lattice_index_;          // reduced vector -> position
    std::vector<int> finite_project_;            // finite case
};

}  // namespace flattrace
