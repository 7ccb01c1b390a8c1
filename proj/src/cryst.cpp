#include "flattrace/cryst.hpp"

#include <sstream>

namespace flattrace {

std::string to_string(const Elem& e) {
    std::ostringstream os;
    if (e.m.empty()) {
        os << "#" << e.h;
        return os.str();
    }
    os << "(";
    for (size_t i = 0; i < e.m.size(); ++i) os << (i ? "," : "") << e.m[i];
    os << ";" << e.h << ")";
    return os.str();
}

Sublattice::Sublattice(const IntMatrix& basis_rows) {
    int n = basis_rows.cols();
    auto res = hermite_normal_form(basis_rows);
    if (res.rank != n) throw std::invalid_argument("sublattice basis is not full rank");
    basis_ = IntMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) basis_.at(i, j) = res.h.at(i, j);
    index_ = 1;
    for (int i = 0; i < n; ++i) index_ *= basis_.at(i, i);
}

Sublattice Sublattice::scaled(int n, const Int& k) {
    IntMatrix b = IntMatrix::identity(n);
    for (int i = 0; i < n; ++i) b.at(i, i) = k;
    return Sublattice(b);
}

VecI Sublattice::reduce(const VecI& v) const {
    int n = dim();
    if (int(v.size()) != n) throw std::invalid_argument("vector dimension mismatch");
    VecI w = v;
    for (int i = 0; i < n; ++i) {
        Int q = floor_div(w[i], basis_.at(i, i));
        if (q == 0) continue;
        for (int j = i; j < n; ++j) w[j] -= q * basis_.at(i, j);
    }
    return w;
}

bool Sublattice::contains(const VecI& v) const { return is_zero(reduce(v)); }

bool Sublattice::contains(const Sublattice& other) const {
    for (int i = 0; i < other.basis_.rows(); ++i)
        if (!contains(other.basis_.row(i))) return false;
    return true;
}

std::optional<VecI> Sublattice::coordinates(const VecI& v) const {
    int n = dim();
    if (int(v.size()) != n) throw std::invalid_argument("vector dimension mismatch");
    VecI c(size_t(n), Int(0));
    VecI w = v;
    for (int i = 0; i < n; ++i) {
        if (w[i] % basis_.at(i, i) != 0) return std::nullopt;
        c[i] = w[i] / basis_.at(i, i);
        for (int j = i; j < n; ++j) w[j] -= c[i] * basis_.at(i, j);
    }
    return c;
}

VecI Sublattice::from_coordinates(const VecI& c) const {
    int n = dim();
    if (int(c.size()) != n) throw std::invalid_argument("coordinate dimension mismatch");
    VecI v(size_t(n), Int(0));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) v[j] += c[i] * basis_.at(i, j);
    return v;
}

Int Sublattice::index_of(const Sublattice& other) const {
    if (!contains(other)) throw std::invalid_argument("lattice index of a non-sublattice");
    return other.index_ / index_;
}

bool Sublattice::invariant_under(const IntMatrix& a) const {
    for (int i = 0; i < basis_.rows(); ++i)
        if (!contains(a.apply(basis_.row(i)))) return false;
    return true;
}

Sublattice lattice_intersection(const Sublattice& a, const Sublattice& b) {
    int n = a.dim();
    if (b.dim() != n) throw std::invalid_argument("lattice dimension mismatch");
    // x in both lattices: x = A^T p = B^T q; integer kernel of [A^T | -B^T]
    IntMatrix stacked(n, 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            stacked.at(i, j) = a.basis().at(j, i);
            stacked.at(i, n + j) = -b.basis().at(j, i);
        }
    auto sol = solve_affine_lattice(stacked, VecI(size_t(n), Int(0)));
    IntMatrix gens(int(sol->kernel_basis.size()), n);
    for (size_t r = 0; r < sol->kernel_basis.size(); ++r) {
        VecI p(sol->kernel_basis[r].begin(), sol->kernel_basis[r].begin() + n);
        VecI x = a.from_coordinates(p);
        for (int j = 0; j < n; ++j) gens.at(int(r), j) = x[j];
    }
    return Sublattice(gens);
}

CrystGroup::CrystGroup(int dim, FiniteGroup holonomy, std::vector<IntMatrix> rotations,
                       std::vector<VecQ> translations, Sublattice lattice, std::string name)
    : dim_(dim),
      hol_(std::move(holonomy)),
      rot_(std::move(rotations)),
      trans_(std::move(translations)),
      lattice_(std::move(lattice)),
      name_(std::move(name)) {
    if (lattice_.dim() == 0 && dim_ > 0) lattice_ = Sublattice::standard(dim_);
    if (int(rot_.size()) != hol_.order() || int(trans_.size()) != hol_.order())
        throw std::invalid_argument("rotation/translation part count must match holonomy order");
    orientable_ = true;
    for (const auto& a : rot_)
        if (det(a) != 1) orientable_ = false;
}

VecI CrystGroup::carry(int h, int k) const {
    VecQ c = trans_[size_t(h)];
    const VecQ& sk = trans_[size_t(k)];
    const IntMatrix& ah = rot_[size_t(h)];
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) c[i] += Rat(ah.at(i, j)) * sk[j];
    const VecQ& shk = trans_[size_t(hol_.mul(h, k))];
    for (int i = 0; i < dim_; ++i) c[i] -= shk[i];
    if (!is_integral(c)) throw std::logic_error("cocycle carry is not integral");
    return to_integer(c);
}

Elem CrystGroup::mul(const Elem& a, const Elem& b) const {
    Elem r;
    r.h = hol_.mul(a.h, b.h);
    r.m = vec_add(vec_add(a.m, rot_[size_t(a.h)].apply(b.m)), carry(a.h, b.h));
    return r;
}

Elem CrystGroup::inv(const Elem& a) const {
    int hi = hol_.inv(a.h);
    const IntMatrix& ainv = rot_[size_t(hi)];
    VecQ t = trans_[size_t(a.h)];
    for (int i = 0; i < dim_; ++i) t[i] += Rat(a.m[i]);
    VecQ w(size_t(dim_), Rat(0));
    for (int i = 0; i < dim_; ++i) {
        for (int j = 0; j < dim_; ++j) w[i] -= Rat(ainv.at(i, j)) * t[j];
        w[i] -= trans_[size_t(hi)][i];
    }
    if (!is_integral(w)) throw std::logic_error("inverse lattice part is not integral");
    return Elem{to_integer(w), hi};
}

std::pair<IntMatrix, VecQ> CrystGroup::affine_of(const Elem& e) const {
    VecQ t = trans_[size_t(e.h)];
    for (int i = 0; i < dim_; ++i) t[i] += Rat(e.m[i]);
    return {rot_[size_t(e.h)], t};
}

std::optional<Elem> CrystGroup::element_from_affine(const IntMatrix& a, const VecQ& t) const {
    for (int h = 0; h < hol_.order(); ++h) {
        if (!(rot_[size_t(h)] == a)) continue;
        VecQ m = vec_sub(t, trans_[size_t(h)]);
        if (!is_integral(m)) return std::nullopt;
        VecI mi = to_integer(m);
        if (!lattice_.contains(mi)) return std::nullopt;
        return Elem{mi, h};
    }
    return std::nullopt;
}

Validation CrystGroup::validate() const {
    if (auto v = hol_.validate(); !v.ok) return v;
    int id = hol_.identity();
    if (!rot_[size_t(id)].is_identity()) return Validation::fail("rotation part of identity is not I");
    if (!is_zero(trans_[size_t(id)])) return Validation::fail("translation part of identity is not 0");
    for (int h = 0; h < hol_.order(); ++h) {
        if (rot_[size_t(h)].rows() != dim_ || rot_[size_t(h)].cols() != dim_)
            return Validation::fail("rotation part has wrong shape at holonomy " + std::to_string(h));
        if (int(trans_[size_t(h)].size()) != dim_)
            return Validation::fail("translation part has wrong size at holonomy " + std::to_string(h));
        if (!is_unimodular(rot_[size_t(h)]))
            return Validation::fail("rotation part not unimodular at holonomy " + std::to_string(h));
        if (!lattice_.invariant_under(rot_[size_t(h)]))
            return Validation::fail("lattice not invariant under holonomy " + std::to_string(h));
        for (int k = 0; k < hol_.order(); ++k)
            if (h != k && rot_[size_t(h)] == rot_[size_t(k)])
                return Validation::fail("holonomy does not act faithfully (" + std::to_string(h) + "," +
                                        std::to_string(k) + ")");
    }
    for (int h = 0; h < hol_.order(); ++h)
        for (int k = 0; k < hol_.order(); ++k) {
            if (!(rot_[size_t(h)] * rot_[size_t(k)] == rot_[size_t(hol_.mul(h, k))]))
                return Validation::fail("rotation cocycle fails at (" + std::to_string(h) + "," +
                                        std::to_string(k) + ")");
            VecQ c = trans_[size_t(h)];
            for (int i = 0; i < dim_; ++i)
                for (int j = 0; j < dim_; ++j) c[i] += Rat(rot_[size_t(h)].at(i, j)) * trans_[size_t(k)][j];
            for (int i = 0; i < dim_; ++i) c[i] -= trans_[size_t(hol_.mul(h, k))][i];
            if (!is_integral(c) || !lattice_.contains(to_integer(c)))
                return Validation::fail("translation cocycle fails at (" + std::to_string(h) + "," +
                                        std::to_string(k) + ")");
        }
    return Validation::pass();
}

std::vector<Elem> CrystGroup::generators() const {
    std::vector<Elem> gens;
    for (int i = 0; i < dim_; ++i) gens.push_back(Elem{lattice_.basis().row(i), hol_.identity()});
    for (int h = 0; h < hol_.order(); ++h)
        if (h != hol_.identity()) gens.push_back(Elem{VecI(size_t(dim_), Int(0)), h});
    return gens;
}

std::string CrystGroup::elem_name(const Elem& e) const {
    std::ostringstream os;
    bool wrote = false;
    for (size_t i = 0; i < e.m.size(); ++i) {
        if (e.m[i] == 0) continue;
        os << (wrote ? " " : "") << "t" << (i + 1);
        if (e.m[i] != 1) os << "^" << e.m[i];
        wrote = true;
    }
    if (e.h != hol_.identity()) {
        os << (wrote ? " " : "") << hol_.name_of(e.h);
        wrote = true;
    }
    if (!wrote) return "1";
    return os.str();
}

CrystGroup torus_group(int dim, Sublattice lattice) {
    return CrystGroup(dim, cyclic_group(1), {IntMatrix::identity(dim)}, {VecQ(size_t(dim), Rat(0))},
                      std::move(lattice), "torus_" + std::to_string(dim));
}

}  // namespace flattrace
