#pragma once

#include "flattrace/int_matrix.hpp"

namespace flattrace {

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ... | dk >= 0.
struct SmithDecomposition {
    IntMatrix u, d, v;
    IntMatrix u_inv;  // exact integer inverse of u
    int rank = 0;     // number of nonzero diagonal entries
    VecI diagonal() const;
};

/// Deterministic Smith normal form. Pivot = minimal |entry| among nonzero
/// entries of the working submatrix, ties broken in row-major order.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form: U * M = H with U unimodular, pivots
/// positive, entries above each pivot reduced into [0, pivot).
struct HermiteResult {
    IntMatrix h, u;
    int rank = 0;
    std::vector<int> pivot_cols;  // one per nonzero row of h
};

HermiteResult hermite_normal_form(const IntMatrix& m);

/// Index of the row lattice of M inside Z^n (product of HNF pivots).
/// Throws if the row lattice is not full rank.
Int row_lattice_index(const IntMatrix& m);

}  // namespace flattrace
