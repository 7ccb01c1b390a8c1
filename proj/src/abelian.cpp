#include "flattrace/abelian.hpp"

namespace flattrace {

AbelianQuotient AbelianQuotient::cokernel(const IntMatrix& m) {
    auto s = smith_normal_form(m);
    AbelianQuotient q;
    q.dim_ = m.rows();
    q.u_ = s.u;
    q.u_inv_ = s.u_inv;
    q.smith_diag_.assign(size_t(q.dim_), Int(0));
    int k = std::min(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) q.smith_diag_[i] = s.d.at(i, i);
    for (int i = 0; i < q.dim_; ++i) {
        if (q.smith_diag_[i] == 0)
            ++q.free_rank_;
        else if (q.smith_diag_[i] > 1)
            q.factors_.push_back(q.smith_diag_[i]);
    }
    return q;
}

Int AbelianQuotient::order() const {
    if (!finite()) throw std::invalid_argument("infinite quotient has no order");
    Int o(1);
    for (const auto& f : factors_) o *= f;
    return o;
}

VecI AbelianQuotient::canonicalize(const VecI& v) const {
    if (int(v.size()) != dim_) throw std::invalid_argument("vector dimension mismatch");
    VecI y = u_.apply(v);
    for (int i = 0; i < dim_; ++i)
        if (smith_diag_[i] != 0) y[i] = floor_mod(y[i], smith_diag_[i]);
    return u_inv_.apply(y);
}

bool AbelianQuotient::equivalent(const VecI& a, const VecI& b) const {
    return canonicalize(a) == canonicalize(b);
}

std::vector<VecI> AbelianQuotient::representatives() const {
    if (!finite()) throw std::invalid_argument("cannot enumerate an infinite quotient");
    std::vector<VecI> out;
    VecI y(size_t(dim_), Int(0));
    // mixed-radix counter over the Smith coordinates, last coordinate fastest
    while (true) {
        out.push_back(u_inv_.apply(y));
        int i = dim_ - 1;
        for (; i >= 0; --i) {
            y[i] += 1;
            if (y[i] < smith_diag_[i]) break;
            y[i] = 0;
        }
        if (i < 0) break;
    }
    return out;
}

namespace {

std::optional<AffineSolution> solve_impl(const IntMatrix& m, const VecQ& b) {
    if (int(b.size()) != m.rows()) throw std::invalid_argument("rhs dimension mismatch");
    auto s = smith_normal_form(m);
    int r = m.rows(), c = m.cols();
    int k = std::min(r, c);

    VecQ rhs(size_t(r), Rat(0));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) rhs[i] += Rat(s.u.at(i, j)) * b[j];

    VecQ y(size_t(c), Rat(0));
    std::vector<int> free_idx;
    for (int i = 0; i < k; ++i) {
        if (s.d.at(i, i) == 0) {
            if (rhs[i] != 0) return std::nullopt;
            free_idx.push_back(i);
        } else {
            y[i] = rhs[i] / Rat(s.d.at(i, i));
        }
    }
    for (int i = k; i < r; ++i)
        if (rhs[i] != 0) return std::nullopt;
    for (int i = k; i < c; ++i) free_idx.push_back(i);

    AffineSolution sol;
    sol.particular.assign(size_t(c), Rat(0));
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j)
            if (y[j] != 0) sol.particular[i] += Rat(s.v.at(i, j)) * y[j];
    for (int j : free_idx) sol.kernel_basis.push_back(s.v.col(j));
    return sol;
}

}  // namespace

std::optional<AffineSolution> solve_affine_lattice(const IntMatrix& m, const VecQ& b) {
    return solve_impl(m, b);
}

std::optional<AffineSolution> solve_affine_lattice(const IntMatrix& m, const VecI& b) {
    return solve_impl(m, to_rational(b));
}

std::optional<IntegerSolution> solve_integer_lattice(const IntMatrix& m, const VecI& b) {
    if (int(b.size()) != m.rows()) throw std::invalid_argument("rhs dimension mismatch");
    auto s = smith_normal_form(m);
    int r = m.rows(), c = m.cols();
    int k = std::min(r, c);
    VecI rhs = s.u.apply(b);

    VecI y(size_t(c), Int(0));
    std::vector<int> free_idx;
    for (int i = 0; i < k; ++i) {
        if (s.d.at(i, i) == 0) {
            if (rhs[i] != 0) return std::nullopt;
            free_idx.push_back(i);
        } else {
            if (rhs[i] % s.d.at(i, i) != 0) return std::nullopt;
            y[i] = rhs[i] / s.d.at(i, i);
        }
    }
    for (int i = k; i < r; ++i)
        if (rhs[i] != 0) return std::nullopt;
    for (int i = k; i < c; ++i) free_idx.push_back(i);

    IntegerSolution sol;
    sol.particular = s.v.apply(y);
    for (int j : free_idx) sol.kernel_basis.push_back(s.v.col(j));
    return sol;
}

}  // namespace flattrace
