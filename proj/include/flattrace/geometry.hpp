#pragma once

#include "flattrace/reidemeister.hpp"
#include "flattrace/trace.hpp"

namespace flattrace {

/// Affine map between flat manifolds together with its chosen lift
/// x -> linear*x + translation. Equivariance (the induced hom being a valid
/// homomorphism) is exactly the validity of this data. Pairs of maps must be
/// built over the same Group instances.
struct AffineMapSpec {
    Group source, target;
    IntMatrix linear;
    VecQ translation;
    std::vector<int> holonomy_map;

    GroupHom induced() const {
        return GroupHom::affine(source, target, linear, translation, holonomy_map);
    }
    Validation validate() const { return induced().validate(); }
    VecQ lift_apply(const VecQ& x) const;

    static AffineMapSpec identity_map(const Group& g);
    static AffineMapSpec constant_map(const Group& source, const Group& target, VecQ value);
    /// The lift b * (lift of f): the same map when b is a deck transformation
    /// of the target, or the lift of a different map on a covering quotient.
    AffineMapSpec compose_deck(const Elem& b) const;
};

/// Finite union of pairwise disjoint half-open boxes [lo, hi) inside the
/// fundamental box [0,1)^n of the source lattice (lattice coordinates).
struct Region {
    struct Box {
        VecQ lo, hi;
    };
    int dim = 0;
    std::vector<Box> boxes;

    static Region full(int dim);
    static Region empty(int dim) { return Region{dim, {}}; }
    Validation validate() const;
    bool contains(const VecQ& c) const;
    bool touches_boundary(const VecQ& c) const;
    Region unite(const Region& other) const;  // must stay disjoint
};

struct CoincidencePoint {
    VecQ location;   // lattice coordinates in [0,1)^n of the source
    VecQ ambient;    // the same point in ambient coordinates
    Elem class_rep;  // canonical Reidemeister class representative
    int local_index = 0;

    bool operator<(const CoincidencePoint& o) const {
        if (!(class_rep == o.class_rep)) return class_rep < o.class_rep;
        for (size_t i = 0; i < location.size(); ++i)
            if (location[i] != o.location[i]) return location[i] < o.location[i];
        return false;
    }
    bool operator==(const CoincidencePoint& o) const {
        return class_rep == o.class_rep && location == o.location && local_index == o.local_index;
    }
};

struct CoincidenceClass {
    Elem rep;
    std::vector<CoincidencePoint> points;
    Int index;  // sum of local indices
};

struct CoincidenceData {
    std::shared_ptr<const ReidemeisterSet> reid;
    std::vector<CoincidenceClass> classes;
    TraceVector trace;
};

/// Decomposition of Coin(f, g) into Nielsen classes with local indices.
/// Requires orientable source/target and det(G - A_B F) != 0 in every
/// holonomy sector.
CoincidenceData coincidence_classes(const AffineMapSpec& f, const AffineMapSpec& g);

/// Local coincidence index at an isolated nondegenerate point (lattice coords).
int local_index(const AffineMapSpec& f, const AffineMapSpec& g, const VecQ& location);

TraceVector reidemeister_trace(const AffineMapSpec& f, const AffineMapSpec& g);

/// Augmentation of the trace; cross-checked against the determinant formula
/// in lattice coordinates when both manifolds are tori.
Int lefschetz_number(const AffineMapSpec& f, const AffineMapSpec& g);

Int nielsen_number(const AffineMapSpec& f, const AffineMapSpec& g);

/// Trace restricted to a region; rejects regions with a coincidence point on
/// their boundary.
TraceVector local_trace(const AffineMapSpec& f, const AffineMapSpec& g, const Region& u);

/// Exhaustive fundamental-domain enumeration, independent of the class
/// decomposition path: for every holonomy part and every candidate lattice
/// translation within an interval-arithmetic bound, solve exactly and keep
/// solutions in the half-open box.
std::vector<CoincidencePoint> oracle_coincidences(const AffineMapSpec& f, const AffineMapSpec& g);

/// Sorted flat list of the points of a class decomposition, for comparison
/// against the oracle.
std::vector<CoincidencePoint> flatten_points(const CoincidenceData& data);

/// Recompute the trace solving every class from an alternative representative
/// (the canonical one moved by the given source elements, cycled). The result
/// must equal the plain trace; used to exercise representative independence.
TraceVector reidemeister_trace_with_twisted_reps(const AffineMapSpec& f, const AffineMapSpec& g,
                                                 const std::vector<Elem>& twists);

}  // namespace flattrace
