#pragma once

#include <optional>

#include "flattrace/normal_forms.hpp"

namespace flattrace {

/// Cokernel Z^rows / M * Z^cols presented by invariant factors.
/// Canonical coset representatives are produced by reducing componentwise
/// modulo the invariant factors in Smith coordinates and mapping back.
class AbelianQuotient {
public:
    static AbelianQuotient cokernel(const IntMatrix& m);

    const VecI& invariant_factors() const { return factors_; }  // entries >= 2
    int free_rank() const { return free_rank_; }
    bool finite() const { return free_rank_ == 0; }
    bool trivial() const { return finite() && factors_.empty(); }
    Int order() const;  // throws when infinite

    /// Canonical representative of v + M*Z^cols.
    VecI canonicalize(const VecI& v) const;
    bool equivalent(const VecI& a, const VecI& b) const;

    /// All canonical representatives, in deterministic order. Finite case only.
    std::vector<VecI> representatives() const;

    int ambient_dim() const { return dim_; }

private:
    int dim_ = 0;
    int free_rank_ = 0;
    VecI factors_;          // invariant factors > 1
    VecI smith_diag_;       // full diagonal incl. 1s and 0s (length dim_)
    IntMatrix u_, u_inv_;   // Smith row transform of the presentation matrix
};

/// Solution of M x = b over the rationals, described as an affine subspace:
/// one exact rational particular solution plus an integer basis of ker M.
struct AffineSolution {
    VecQ particular;
    std::vector<VecI> kernel_basis;
};

std::optional<AffineSolution> solve_affine_lattice(const IntMatrix& m, const VecQ& b);
std::optional<AffineSolution> solve_affine_lattice(const IntMatrix& m, const VecI& b);

/// Integer solutions of M x = b: one integer particular solution plus a basis
/// of the integer kernel. nullopt when no integer solution exists.
struct IntegerSolution {
    VecI particular;
    std::vector<VecI> kernel_basis;
};

std::optional<IntegerSolution> solve_integer_lattice(const IntMatrix& m, const VecI& b);

}  // namespace flattrace
