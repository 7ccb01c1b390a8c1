#pragma once

#include "flattrace/geometry.hpp"

namespace flattrace {

/// Validated cover data: subgroups, quotients, indices, and the chosen coset
/// representative for each element of Pi2/Gamma2.
struct CoverSpec {
    CoverPair pair;
    Int index1, index2;
    std::vector<Elem> coset_reps;  // ambient representative per quotient element

    /// Replace the representative of one coset by another element of the same
    /// coset (for the section-independence checks).
    CoverSpec with_rep(int coset, const Elem& rep) const;
};

/// Checks normality, finite index, and the containment conditions
/// phi(Gamma1), psi(Gamma1) inside Gamma2; picks canonical coset
/// representatives.
CoverSpec validate_cover(const GroupHom& phi, const GroupHom& psi, const Subgroup& gamma1,
                         const Subgroup& gamma2);

/// Covering manifolds and the full lift catalog of a map pair.
struct LiftData {
    Group cover_source, cover_target;   // torus groups over the sublattices
    AffineMapSpec g_bar;                // the fixed lift of g
    std::vector<AffineMapSpec> lifts;   // one lift of f per coset representative
};

LiftData lift_maps(const AffineMapSpec& f, const AffineMapSpec& g, const CoverSpec& cover);

struct AveragingReport {
    TraceVector lhs;
    std::vector<std::pair<Elem, TraceVector>> summands;  // coset rep -> pushforward
    TraceVector raw_sum;
    Int divisor;
    bool divisible = false;
    TraceVector rhs;
    bool equal = false;
};

/// Both sides of the trace averaging identity for a coincidence pair over a
/// sublattice cover, with exact division and coefficientwise comparison.
AveragingReport average_rt_coincidence(const AffineMapSpec& f, const AffineMapSpec& g,
                                       const CoverSpec& cover);

/// Fixed-point specialization: the pair (f, identity).
AveragingReport average_rt_fixed(const AffineMapSpec& f, const Subgroup& gamma);

struct IndexAverageReport {
    Int lhs;
    std::vector<Int> per_lift;
    Rat rhs;
    bool equal = false;
};

/// Local fixed point index averaged over the lift catalog, restricted to a
/// region. The cover must be a scalar multiple of the source lattice so that
/// region preimages stay box unions.
IndexAverageReport average_index(const AffineMapSpec& f, const Region& u, const Subgroup& gamma);

struct LefschetzAverageReport {
    Int lhs;
    std::vector<Int> per_lift;
    Rat rhs;
    bool equal = false;
};

LefschetzAverageReport average_lefschetz(const AffineMapSpec& f, const AffineMapSpec& g,
                                         const CoverSpec& cover);

/// User-supplied local indices for the algebraic (non-geometric) mode:
/// one entry list per coset of Pi2/Gamma2, keyed by lift-level class
/// representatives.
struct IndexTable {
    std::vector<std::vector<std::pair<Elem, Int>>> per_coset;
};

struct AlgebraicReport {
    std::vector<std::pair<Elem, TraceVector>> summands;
    TraceVector raw_sum;
    Int divisor;
    bool divisible = false;
    TraceVector rhs;
    std::optional<bool> equal;  // set when an lhs table was supplied
    TraceVector lhs;
};

/// Evaluates the right-hand side of the averaging identity symbolically from
/// supplied indices and the computed class maps; optionally compares with a
/// supplied left-hand side.
AlgebraicReport algebraic_mode_verify(const GroupHom& phi, const GroupHom& psi, const CoverSpec& cover,
                                      const IndexTable& table,
                                      const std::optional<std::vector<std::pair<Elem, Int>>>& lhs_table);

}  // namespace flattrace
