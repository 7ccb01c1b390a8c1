#include "flattrace/finite_group.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace flattrace {

FiniteGroup::FiniteGroup(int order, std::vector<int> table, std::vector<std::string> names)
    : order_(order), table_(std::move(table)), names_(std::move(names)) {
    if (order_ <= 0) throw std::invalid_argument("group order must be positive");
    if (int(table_.size()) != order_ * order_) throw std::invalid_argument("multiplication table size mismatch");
    for (int x : table_)
        if (x < 0 || x >= order_) throw std::invalid_argument("table entry out of range");

    int id = -1;
    for (int e = 0; e < order_ && id < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < order_; ++a)
            if (mul(e, a) != a || mul(a, e) != a) {
                ok = false;
                break;
            }
        if (ok) id = e;
    }
    if (id < 0) throw std::invalid_argument("table has no identity element");
    identity_ = id;

    inverse_.assign(size_t(order_), -1);
    for (int a = 0; a < order_; ++a) {
        for (int b = 0; b < order_; ++b)
            if (mul(a, b) == identity_ && mul(b, a) == identity_) {
                inverse_[size_t(a)] = b;
                break;
            }
        if (inverse_[size_t(a)] < 0) throw std::invalid_argument("table element has no inverse");
    }
    if (names_.empty()) {
        names_.resize(size_t(order_));
        for (int a = 0; a < order_; ++a) names_[size_t(a)] = "g" + std::to_string(a);
        names_[size_t(identity_)] = "1";
    }
    if (int(names_.size()) != order_) throw std::invalid_argument("name list size mismatch");
}

Validation FiniteGroup::validate() const {
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            for (int c = 0; c < order_; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                    std::ostringstream os;
                    os << "associativity fails at (" << a << "," << b << "," << c << ")";
                    return Validation::fail(os.str());
                }
    return Validation::pass();
}

FiniteGroup cyclic_group(int n) {
    std::vector<int> t(size_t(n) * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[size_t(a) * n + b] = (a + b) % n;
    std::vector<std::string> names(size_t(n));
    for (int a = 0; a < n; ++a) names[size_t(a)] = a == 0 ? "1" : "g^" + std::to_string(a);
    if (n > 1) names[1] = "g";
    return FiniteGroup(n, std::move(t), std::move(names));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    int n = a.order() * b.order();
    std::vector<int> t(size_t(n) * n);
    auto idx = [&](int x, int y) { return x * b.order() + y; };
    for (int x1 = 0; x1 < a.order(); ++x1)
        for (int y1 = 0; y1 < b.order(); ++y1)
            for (int x2 = 0; x2 < a.order(); ++x2)
                for (int y2 = 0; y2 < b.order(); ++y2)
                    t[size_t(idx(x1, y1)) * n + idx(x2, y2)] = idx(a.mul(x1, x2), b.mul(y1, y2));
    return FiniteGroup(n, std::move(t));
}

FiniteGroup symmetric_3() { return dihedral_group(3); }

FiniteGroup dihedral_group(int n) {
    // elements r^i s^j, j in {0,1}; index = i + n*j
    int order = 2 * n;
    std::vector<int> t(size_t(order) * order);
    auto idx = [&](int i, int j) { return i + n * j; };
    for (int i1 = 0; i1 < n; ++i1)
        for (int j1 = 0; j1 < 2; ++j1)
            for (int i2 = 0; i2 < n; ++i2)
                for (int j2 = 0; j2 < 2; ++j2) {
                    // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 + (-1)^j1 i2) s^(j1+j2)
                    int i = ((i1 + (j1 ? n - i2 : i2)) % n + n) % n;
                    int j = (j1 + j2) % 2;
                    t[size_t(idx(i1, j1)) * order + idx(i2, j2)] = idx(i, j);
                }
    return FiniteGroup(order, std::move(t));
}

FiniteGroup quaternion_8() {
    // {1,-1,i,-i,j,-j,k,-k} -> indices 0..7, with sign bit in the low position
    auto enc = [](int unit, int neg) { return unit * 2 + neg; };
    std::vector<int> t(64);
    // unit table for 1,i,j,k with sign: (unit, sign) pairs
    const int U = 0, I = 1, J = 2, K = 3;
    auto umul = [&](int a, int b, int& out, int& sign) {
        static const int prod[4][4] = {{U, I, J, K}, {I, U, K, J}, {J, K, U, I}, {K, J, I, U}};
        static const int sgn[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
        out = prod[a][b];
        sign = sgn[a][b];
    };
    for (int a = 0; a < 4; ++a)
        for (int sa = 0; sa < 2; ++sa)
            for (int b = 0; b < 4; ++b)
                for (int sb = 0; sb < 2; ++sb) {
                    int u, s;
                    umul(a, b, u, s);
                    t[size_t(enc(a, sa)) * 8 + enc(b, sb)] = enc(u, (sa + sb + s) % 2);
                }
    return FiniteGroup(8, std::move(t),
                       {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
    std::set<int> seen{g.identity()};
    std::vector<int> frontier{g.identity()};
    std::vector<int> use = gens;
    for (int x : gens) use.push_back(g.inv(x));
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int a : frontier)
            for (int x : use) {
                int b = g.mul(a, x);
                if (seen.insert(b).second) next.push_back(b);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& subgroup) {
    std::set<int> s(subgroup.begin(), subgroup.end());
    for (int x : subgroup)
        for (int a = 0; a < g.order(); ++a)
            if (!s.count(g.conj(a, x))) return false;
    return true;
}

std::vector<int> normal_closure(const FiniteGroup& g, const std::vector<int>& gens) {
    std::vector<int> conj_gens;
    for (int x : gens)
        for (int a = 0; a < g.order(); ++a) conj_gens.push_back(g.conj(a, x));
    auto sub = generated_subgroup(g, conj_gens);
    // conjugates of products are products of conjugates, so this is normal
    return sub;
}

std::vector<std::vector<int>> some_normal_subgroups(const FiniteGroup& g) {
    std::set<std::vector<int>> out;
    out.insert({g.identity()});
    std::vector<int> full(size_t(g.order()));
    for (int i = 0; i < g.order(); ++i) full[size_t(i)] = i;
    out.insert(full);
    for (int x = 0; x < g.order(); ++x) out.insert(normal_closure(g, {x}));
    return {out.begin(), out.end()};
}

FiniteQuotientTable quotient_by_normal(const FiniteGroup& g, const std::vector<int>& normal) {
    if (!is_normal(g, normal)) throw std::invalid_argument("subgroup is not normal");
    std::set<int> n(normal.begin(), normal.end());
    if (!n.count(g.identity())) throw std::invalid_argument("subgroup misses identity");

    FiniteQuotientTable q;
    q.project_of.assign(size_t(g.order()), -1);
    for (int a = 0; a < g.order(); ++a) {
        if (q.project_of[size_t(a)] >= 0) continue;
        int id = int(q.rep_of.size());
        q.rep_of.push_back(a);  // a is least in its coset by scan order
        for (int x : normal) q.project_of[size_t(g.mul(a, x))] = id;
    }
    int m = int(q.rep_of.size());
    std::vector<int> table(size_t(m) * m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            table[size_t(i) * m + j] = q.project_of[size_t(g.mul(q.rep_of[size_t(i)], q.rep_of[size_t(j)]))];
    std::vector<std::string> names(size_t(m));
    for (int i = 0; i < m; ++i) names[size_t(i)] = g.name_of(q.rep_of[size_t(i)]) + "~";
    q.group = FiniteGroup(m, std::move(table), std::move(names));
    return q;
}

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<int>& images) {
    if (int(images.size()) != src.order()) return false;
    for (int a = 0; a < src.order(); ++a)
        for (int b = 0; b < src.order(); ++b)
            if (images[size_t(src.mul(a, b))] != dst.mul(images[size_t(a)], images[size_t(b)])) return false;
    return true;
}

std::vector<int> generating_set(const FiniteGroup& g) {
    std::vector<int> gens;
    std::set<int> have{g.identity()};
    for (int a = 0; a < g.order(); ++a) {
        if (have.count(a)) continue;
        gens.push_back(a);
        auto sub = generated_subgroup(g, gens);
        have = std::set<int>(sub.begin(), sub.end());
        if (int(have.size()) == g.order()) break;
    }
    return gens;
}

namespace {

// Extend a partial map on generators to a full homomorphism by closure.
// Returns nullopt if the images are inconsistent.
std::optional<std::vector<int>> extend_hom(const FiniteGroup& src, const FiniteGroup& dst,
                                           const std::vector<int>& gens, const std::vector<int>& gen_images) {
    std::vector<int> img(size_t(src.order()), -1);
    img[size_t(src.identity())] = dst.identity();
    std::vector<int> known{src.identity()};
    for (size_t i = 0; i < gens.size(); ++i) {
        int a = gens[i];
        if (img[size_t(a)] >= 0) {
            if (img[size_t(a)] != gen_images[i]) return std::nullopt;
            continue;
        }
        img[size_t(a)] = gen_images[i];
        known.push_back(a);
    }
    // saturate: known*known must stay consistent
    for (size_t i = 0; i < known.size(); ++i) {
        for (size_t j = 0; j < known.size(); ++j) {
            int p = src.mul(known[i], known[j]);
            int v = dst.mul(img[size_t(known[i])], img[size_t(known[j])]);
            if (img[size_t(p)] < 0) {
                img[size_t(p)] = v;
                known.push_back(p);
            } else if (img[size_t(p)] != v) {
                return std::nullopt;
            }
        }
    }
    if (int(known.size()) != src.order()) return std::nullopt;  // gens did not generate
    if (!is_homomorphism(src, dst, img)) return std::nullopt;
    return img;
}

}  // namespace

std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& src, const FiniteGroup& dst) {
    auto gens = generating_set(src);
    std::vector<std::vector<int>> out;
    if (gens.empty()) {
        out.push_back(std::vector<int>(size_t(src.order()), dst.identity()));
        return out;
    }
    std::vector<int> tuple(gens.size(), 0);
    while (true) {
        if (auto h = extend_hom(src, dst, gens, tuple)) out.push_back(*h);
        size_t i = 0;
        for (; i < tuple.size(); ++i) {
            if (++tuple[i] < dst.order()) break;
            tuple[i] = 0;
        }
        if (i == tuple.size()) break;
    }
    return out;
}

std::vector<std::vector<int>> sample_homomorphisms(const FiniteGroup& src, const FiniteGroup& dst,
                                                   int want, std::mt19937& rng) {
    auto gens = generating_set(src);
    std::set<std::vector<int>> found;
    found.insert(std::vector<int>(size_t(src.order()), dst.identity()));
    if (!gens.empty()) {
        std::uniform_int_distribution<int> pick(0, dst.order() - 1);
        for (int attempt = 0; attempt < 20000 && int(found.size()) < want; ++attempt) {
            std::vector<int> tuple(gens.size());
            for (auto& t : tuple) t = pick(rng);
            if (auto h = extend_hom(src, dst, gens, tuple)) found.insert(*h);
        }
    }
    return {found.begin(), found.end()};
}

}  // namespace flattrace
