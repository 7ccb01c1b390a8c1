#include "flattrace/normal_forms.hpp"

namespace flattrace {

VecI SmithDecomposition::diagonal() const {
    int k = std::min(d.rows(), d.cols());
    VecI out(k);
    for (int i = 0; i < k; ++i) out[i] = d.at(i, i);
    return out;
}

namespace {

void row_swap(IntMatrix& a, IntMatrix& u, int i, int j) {
    if (i == j) return;
    for (int k = 0; k < a.cols(); ++k) swap(a.at(i, k), a.at(j, k));
    for (int k = 0; k < u.cols(); ++k) swap(u.at(i, k), u.at(j, k));
}

void col_swap(IntMatrix& a, IntMatrix& v, int i, int j) {
    if (i == j) return;
    for (int k = 0; k < a.rows(); ++k) swap(a.at(k, i), a.at(k, j));
    for (int k = 0; k < v.rows(); ++k) swap(v.at(k, i), v.at(k, j));
}

// row_i -= q * row_t
void row_axpy(IntMatrix& a, IntMatrix& u, int i, int t, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < a.cols(); ++k) a.at(i, k) -= q * a.at(t, k);
    for (int k = 0; k < u.cols(); ++k) u.at(i, k) -= q * u.at(t, k);
}

void col_axpy(IntMatrix& a, IntMatrix& v, int j, int t, const Int& q) {
    if (q == 0) return;
    for (int k = 0; k < a.rows(); ++k) a.at(k, j) -= q * a.at(k, t);
    for (int k = 0; k < v.rows(); ++k) v.at(k, j) -= q * v.at(k, t);
}

void col_negate(IntMatrix& a, IntMatrix& v, int j) {
    for (int k = 0; k < a.rows(); ++k) a.at(k, j) = -a.at(k, j);
    for (int k = 0; k < v.rows(); ++k) v.at(k, j) = -v.at(k, j);
}

// Minimal |entry| over the submatrix with indices >= t; ties row-major.
bool find_pivot(const IntMatrix& a, int t, int& pi, int& pj) {
    bool found = false;
    Int best;
    for (int i = t; i < a.rows(); ++i)
        for (int j = t; j < a.cols(); ++j) {
            const Int& x = a.at(i, j);
            if (x == 0) continue;
            Int ax = abs(x);
            if (!found || ax < best) {
                found = true;
                best = ax;
                pi = i;
                pj = j;
            }
        }
    return found;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SmithDecomposition s;
    int r = m.rows(), c = m.cols();
    IntMatrix a = m;
    s.u = IntMatrix::identity(r);
    s.v = IntMatrix::identity(c);

    int t = 0;
    int limit = std::min(r, c);
    while (t < limit) {
        int pi, pj;
        if (!find_pivot(a, t, pi, pj)) break;
        row_swap(a, s.u, t, pi);
        col_swap(a, s.v, t, pj);

        // Reduce column t and row t until the pivot divides everything it faces.
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (int i = t + 1; i < r; ++i) {
                if (a.at(i, t) == 0) continue;
                Int q = floor_div(a.at(i, t), a.at(t, t));
                row_axpy(a, s.u, i, t, q);
                if (a.at(i, t) != 0) {
                    // remainder is strictly smaller, promote it to pivot
                    row_swap(a, s.u, t, i);
                    dirty = true;
                }
            }
            for (int j = t + 1; j < c; ++j) {
                if (a.at(t, j) == 0) continue;
                Int q = floor_div(a.at(t, j), a.at(t, t));
                col_axpy(a, s.v, j, t, q);
                if (a.at(t, j) != 0) {
                    col_swap(a, s.v, t, j);
                    dirty = true;
                }
            }
        }

        // Divisibility sweep: pivot must divide every remaining entry.
        bool fixed = false;
        for (int i = t + 1; i < r && !fixed; ++i)
            for (int j = t + 1; j < c && !fixed; ++j)
                if (a.at(i, j) % a.at(t, t) != 0) {
                    // fold row i into row t and restart elimination at t
                    row_axpy(a, s.u, t, i, Int(-1));
                    fixed = true;
                }
        if (fixed) continue;

        if (a.at(t, t) < 0) col_negate(a, s.v, t);
        ++t;
    }

    s.rank = t;
    s.d = a;
    s.u_inv = inverse_unimodular(s.u);
    return s;
}

HermiteResult hermite_normal_form(const IntMatrix& m) {
    HermiteResult res;
    int r = m.rows(), c = m.cols();
    res.h = m;
    res.u = IntMatrix::identity(r);
    IntMatrix& h = res.h;
    IntMatrix& u = res.u;

    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        // clear below: repeated remainder steps on the rows >= row
        while (true) {
            int p = -1;
            Int best;
            for (int i = row; i < r; ++i) {
                if (h.at(i, col) == 0) continue;
                Int ax = abs(h.at(i, col));
                if (p < 0 || ax < best) {
                    p = i;
                    best = ax;
                }
            }
            if (p < 0) break;  // column already zero at and below `row`
            row_swap(h, u, row, p);
            bool clean = true;
            for (int i = row + 1; i < r; ++i) {
                if (h.at(i, col) == 0) continue;
                Int q = floor_div(h.at(i, col), h.at(row, col));
                row_axpy(h, u, i, row, q);
                if (h.at(i, col) != 0) clean = false;
            }
            if (clean) {
                if (h.at(row, col) < 0) {
                    for (int k = 0; k < c; ++k) h.at(row, k) = -h.at(row, k);
                    for (int k = 0; k < r; ++k) u.at(row, k) = -u.at(row, k);
                }
                for (int i = 0; i < row; ++i) {
                    Int q = floor_div(h.at(i, col), h.at(row, col));
                    row_axpy(h, u, i, row, q);
                }
                res.pivot_cols.push_back(col);
                ++row;
                break;
            }
        }
    }
    res.rank = row;
    return res;
}

Int row_lattice_index(const IntMatrix& m) {
    auto res = hermite_normal_form(m);
    if (res.rank != m.cols()) throw std::invalid_argument("row lattice is not full rank");
    Int idx(1);
    for (int i = 0; i < res.rank; ++i) idx *= res.h.at(i, res.pivot_cols[i]);
    return idx;
}

}  // namespace flattrace
