#pragma once

#include <map>
#include <memory>
#include <optional>

#include "flattrace/abelian.hpp"
#include "flattrace/finite_group.hpp"
#include "flattrace/int_matrix.hpp"

namespace flattrace {

/// Group element. For table groups only `h` is used (element index, m empty);
/// for crystallographic groups (m, h) is the affine map x -> A_h x + s_h + m.
struct Elem {
    VecI m;
    int h = 0;

    bool operator==(const Elem& o) const { return h == o.h && m == o.m; }
    bool operator<(const Elem& o) const {
        if (h != o.h) return h < o.h;
        return compare(m, o.m) < 0;
    }
};

std::string to_string(const Elem& e);

/// Full-rank sublattice of Z^n given by basis rows, stored in Hermite
/// normal form so equal lattices compare equal.
class Sublattice {
public:
    Sublattice() = default;
    explicit Sublattice(const IntMatrix& basis_rows);
    static Sublattice standard(int n) { return Sublattice(IntMatrix::identity(n)); }
    static Sublattice scaled(int n, const Int& k);

    int dim() const { return basis_.cols(); }
    const IntMatrix& basis() const { return basis_; }  // n x n, upper triangular
    bool contains(const VecI& v) const;
    bool contains(const Sublattice& other) const;
    /// Canonical representative of v + L (box of the HNF basis).
    VecI reduce(const VecI& v) const;
    /// Coordinates of v in the basis; nullopt when v is outside the lattice.
    std::optional<VecI> coordinates(const VecI& v) const;
    VecI from_coordinates(const VecI& c) const;  // c -> sum c_i * basis row i
    /// Index [Z^n : L].
    const Int& index_in_standard() const { return index_; }
    /// Index [L : other] for other contained in this lattice.
    Int index_of(const Sublattice& other) const;
    bool invariant_under(const IntMatrix& a) const;  // a * L subset of L

    bool operator==(const Sublattice& o) const { return basis_ == o.basis_; }

private:
    IntMatrix basis_;
    Int index_;
};

/// Intersection of two full-rank sublattices of the same Z^n.
Sublattice lattice_intersection(const Sublattice& a, const Sublattice& b);

/// Crystallographic group: lattice of translations, finite holonomy with
/// integer rotation parts A_h and rational translation parts s_h.
/// Element (m, h) acts by x -> A_h x + s_h + m, with m in the lattice.
class CrystGroup {
public:
    CrystGroup() = default;
    CrystGroup(int dim, FiniteGroup holonomy, std::vector<IntMatrix> rotations,
               std::vector<VecQ> translations, Sublattice lattice, std::string name = "");

    int dim() const { return dim_; }
    const FiniteGroup& holonomy() const { return hol_; }
    const IntMatrix& rotation(int h) const { return rot_[size_t(h)]; }
    const VecQ& translation(int h) const { return trans_[size_t(h)]; }
    const Sublattice& lattice() const { return lattice_; }
    bool orientable() const { return orientable_; }
    const std::string& name() const { return name_; }

    Elem identity() const { return Elem{VecI(size_t(dim_), Int(0)), hol_.identity()}; }
    Elem mul(const Elem& a, const Elem& b) const;
    Elem inv(const Elem& a) const;
    /// carry(h, k) = s_h + A_h s_k - s_{hk}; lattice-valued by the cocycle law.
    VecI carry(int h, int k) const;

    /// Affine form (A, t) of an element, t = s_h + m.
    std::pair<IntMatrix, VecQ> affine_of(const Elem& e) const;
    std::optional<Elem> element_from_affine(const IntMatrix& a, const VecQ& t) const;

    /// Checks every stored invariant: holonomy laws, unimodularity,
    /// lattice invariance, and the cocycle conditions.
    Validation validate() const;

    std::vector<Elem> generators() const;
    std::string elem_name(const Elem& e) const;

private:
    int dim_ = 0;
    FiniteGroup hol_;
    std::vector<IntMatrix> rot_;
    std::vector<VecQ> trans_;
    Sublattice lattice_;
    bool orientable_ = false;
    std::string name_;
};

/// Rank-n torus group: trivial holonomy over the given lattice.
CrystGroup torus_group(int dim, Sublattice lattice = {});

}  // namespace flattrace
