#pragma once

#include "flattrace/group.hpp"

namespace flattrace {

/// Homomorphism between deck groups. Four storage forms:
///  - FiniteMap:       table group -> table group, image per element
///  - Affine:          cryst -> cryst, induced by the affine map x -> Dx + d
///                     together with a holonomy map theta
///  - ElemImages:      table group -> cryst, explicit image per element
///  - ThroughQuotient: cryst -> table group, factored through a finite
///                     quotient by an invariant sublattice
class GroupHom {
public:
    enum class Kind { FiniteMap, Affine, ElemImages, ThroughQuotient };

    static GroupHom finite_map(Group source, Group target, std::vector<int> images);
    static GroupHom affine(Group source, Group target, IntMatrix linear, VecQ translation,
                           std::vector<int> holonomy_map);
    static GroupHom elem_images(Group source, Group target, std::vector<Elem> images);
    static GroupHom through_quotient(Group source, Group target, std::shared_ptr<const GroupQuotient> via,
                                     std::vector<int> images);
    static GroupHom identity(const Group& g);
    static GroupHom trivial(Group source, Group target);

    Kind kind() const { return kind_; }
    const Group& source() const { return source_; }
    const Group& target() const { return target_; }

    Elem apply(const Elem& e) const;

    const IntMatrix& linear() const { return linear_; }
    const VecQ& translation() const { return translation_; }
    const std::vector<int>& holonomy_map() const { return holonomy_map_; }
    /// Lattice part of the image of (0, h) for an affine hom.
    const VecI& holonomy_carry(int h) const { return carries_[size_t(h)]; }
    const std::vector<int>& finite_images() const { return images_; }
    const std::vector<Elem>& elem_image_list() const { return elem_images_; }
    const std::shared_ptr<const GroupQuotient>& via() const { return via_; }
    const std::vector<int>& via_images() const { return via_images_; }

    /// Homomorphism law on generators (all pairs when the source is finite),
    /// plus the structural compatibility conditions of the storage form.
    Validation validate() const;

    bool operator==(const GroupHom& o) const;

private:
    Kind kind_ = Kind::FiniteMap;
    Group source_, target_;
    std::vector<int> images_;
    IntMatrix linear_;
    VecQ translation_;
    std::vector<int> holonomy_map_;
    std::vector<VecI> carries_;
    std::vector<Elem> elem_images_;
    std::shared_ptr<const GroupQuotient> via_;
    std::vector<int> via_images_;
};

/// Conjugated homomorphism x -> b phi(x) b^{-1} (the homomorphism induced by
/// the lift shifted by b).
GroupHom conjugate_hom(const Elem& b, const GroupHom& phi);

struct RestrictionResult {
    GroupHom restricted;  // between the subgroup groups of the cover pair
    GroupHom descended;   // between quotient table groups
    std::shared_ptr<const GroupQuotient> q_source, q_target;
};

/// Restriction phi' : Gamma1 -> Gamma2 and descent phibar on the quotients.
/// Verifies phi(Gamma1) inside Gamma2 on generators; throws with a witness
/// element otherwise.
RestrictionResult restrict_and_descend(const GroupHom& phi, const CoverPair& cover);
RestrictionResult restrict_and_descend(const GroupHom& phi, const Subgroup& gamma1, const Subgroup& gamma2);

}  // namespace flattrace
