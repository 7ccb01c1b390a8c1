#pragma once

#include "flattrace/hom.hpp"

namespace flattrace {

/// Pair (phi, psi) of homomorphisms with common source and target.
/// The twisted action of gamma on the target is x -> psi(gamma) x phi(gamma)^{-1}.
struct HomPair {
    GroupHom phi, psi;

    HomPair() = default;
    HomPair(GroupHom p, GroupHom q);
    const Group& source() const { return phi.source(); }
    const Group& target() const { return phi.target(); }
    Elem move(const Elem& gamma, const Elem& x) const;
};

struct ReidClass {
    Elem rep;
    Int orbit_size = -1;  // element count of the orbit; -1 when not applicable
};

/// Set of twisted conjugacy (Reidemeister) classes of a homomorphism pair.
///
/// Finite table targets are decomposed by exhaustive orbit enumeration. For
/// crystallographic targets the classes are organized in sectors, one per
/// orbit of the holonomy under the induced finite action; within a sector the
/// lattice parts form a cokernel which is then folded by the finite sector
/// stabilizer. A sector whose translation action is not full rank makes the
/// set infinite and is reported as degenerate.
class ReidemeisterSet {
public:
    static ReidemeisterSet compute(const GroupHom& phi, const GroupHom& psi);

    const HomPair& pair() const { return pair_; }
    bool finite() const { return finite_; }
    /// Infinite set whose classes are single elements (trivial twisted action).
    bool singleton_classes() const { return form_ == Form::Singletons; }
    const std::vector<ReidClass>& classes() const;
    Int count() const;

    /// Canonical representative of the class of x. Defined for finite sets,
    /// singleton sets, and elements of nondegenerate sectors.
    Elem class_rep(const Elem& x) const;
    int class_id(const Elem& x) const;  // index into classes()

    const std::vector<int>& degenerate_sectors() const { return degenerate_; }

    std::string describe() const;

private:
    enum class Form { FiniteOrbits, Sectors, Singletons };

    struct Sector {
        int rep_h = 0;
        AbelianQuotient quotient;       // lattice parts modulo the translation action
        std::map<VecI, int> rep_index;  // canonical cokernel rep -> local index
        std::vector<int> class_of_rep;  // local index -> global class id
        bool degenerate = false;
    };

    HomPair pair_;
    Form form_ = Form::FiniteOrbits;
    bool finite_ = false;
    std::vector<ReidClass> classes_;
    std::vector<int> class_of_elem_;  // finite form
    std::vector<int> hol_sector_;     // cryst form: holonomy -> index into sectors_
    std::vector<Elem> hol_witness_;   // gamma moving the holonomy part to the sector rep
    std::vector<Sector> sectors_;
    std::vector<int> degenerate_;

    void build_finite();
    void build_sectors();
};

/// rho: class of rep in R[tau_b phi, psi] -> class of rep*b in R[phi, psi].
Elem right_translate_class(const ReidemeisterSet& base, const Elem& b, const Elem& rep);

/// Subgroup of coincidences {gamma : phi(gamma) = psi(gamma)}.
class CoinSubgroup {
public:
    static CoinSubgroup compute(const GroupHom& phi, const GroupHom& psi);

    bool finite() const;
    Int order() const;  // throws when infinite
    const std::vector<Elem>& elements() const;

    bool contains(const Elem& e) const;
    /// Image subgroup under the projection to a finite quotient of the source.
    std::vector<int> image_in_quotient(const GroupQuotient& q) const;
    /// Does the subgroup equal the pure-translation subgroup of the lattice L?
    bool is_translation_subgroup(const Sublattice& l) const;
    bool is_full_group() const;
    bool is_trivial() const;
    std::string describe() const;

private:
    Group source_;
    bool finite_ = false;
    std::vector<Elem> elements_;          // finite case
    // lattice case: per matching holonomy h, one particular solution; common kernel
    std::vector<std::pair<int, VecI>> hol_particulars_;  // (h, lattice part)
    std::vector<VecI> kernel_;                           // translation sublattice basis (ambient)
    bool lattice_form_ = false;
};

/// All per-coset data of the exact sequence attached to one representative b:
/// R[tau_b phi', psi'] -> R[tau_b phi, psi] -> R[tau_bbar phibar, psibar] -> 1.
struct TwistedBundle {
    Elem beta;
    GroupHom tau_phi;  // tau_b phi
    GroupHom psi;
    RestrictionResult phi_parts;  // restriction/descent of tau_b phi
    RestrictionResult psi_parts;
    ReidemeisterSet r_sub, r_mid, r_bar;

    Elem include_class(const Elem& sub_rep) const;   // i-hat
    Elem project_class(const Elem& mid_rep) const;   // u-hat
};

TwistedBundle make_twisted_bundle(const GroupHom& phi, const GroupHom& psi, const Subgroup& gamma1,
                                  const Subgroup& gamma2, const Elem& beta);
TwistedBundle make_twisted_bundle(const GroupHom& phi, const GroupHom& psi, const CoverPair& cover,
                                  const Elem& beta);

struct ExactnessReport {
    bool surjective = false;
    bool kernel_matches_image = false;
    bool ok() const { return surjective && kernel_matches_image; }
    std::string detail;
};

/// Verifies u-hat surjectivity and (u-hat)^{-1}([1bar]) = im(i-hat) by
/// exhaustive enumeration. Requires finite sets.
ExactnessReport check_exactness(const TwistedBundle& b);

struct FiberSizeReport {
    Int direct_count;
    Int index_formula;
    bool agree() const { return direct_count == index_formula; }
};

/// #(i-hat)^{-1}([gamma]) both by direct preimage count and by the
/// coincidence-subgroup index formula; throws on disagreement.
FiberSizeReport fiber_size(const TwistedBundle& b, const Elem& mid_class_rep);

struct OrbitStabilizerReport {
    Int quotient_order;
    Int class_size;
    Int coin_order;
    bool holds() const { return quotient_order == class_size * coin_order; }
};

/// [Pi1:Gamma1] = #[beta_bar] * #coin(tau_betabar phibar, psibar) for one
/// class of R[phibar, psibar] on finite quotients.
OrbitStabilizerReport orbit_stabilizer_identity(const ReidemeisterSet& r_bar, const GroupHom& phibar,
                                                const GroupHom& psibar, const Elem& beta_bar);

}  // namespace flattrace
