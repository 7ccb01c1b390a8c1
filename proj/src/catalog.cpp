#include "flattrace/catalog.hpp"

namespace flattrace {

CrystGroup g2_bieberbach() {
    FiniteGroup z2(2, {0, 1, 1, 0}, {"1", "alpha"});
    IntMatrix a_alpha{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
    VecQ s_alpha{Rat(1, 2), Rat(0), Rat(0)};
    return CrystGroup(3, std::move(z2), {IntMatrix::identity(3), a_alpha},
                      {VecQ(3, Rat(0)), s_alpha}, Sublattice::standard(3), "g2_bieberbach");
}

Group catalog_group(const std::string& name) {
    if (name.rfind("torus_", 0) == 0) {
        int n = std::stoi(name.substr(6));
        if (n < 1 || n > 6) throw std::invalid_argument("unknown catalog group: " + name);
        return Group(torus_group(n));
    }
    if (name == "g2_bieberbach") return Group(g2_bieberbach());
    if (name == "cyclic_2") return Group(FiniteGroup(2, {0, 1, 1, 0}, {"1", "beta"}));
    throw std::invalid_argument("unknown catalog group: " + name);
}

namespace {

AffineMapSpec make_map(const Group& src, const Group& tgt, IntMatrix lin, VecQ trans,
                       std::vector<int> theta) {
    AffineMapSpec m{src, tgt, std::move(lin), std::move(trans), std::move(theta)};
    if (auto v = m.validate(); !v.ok) throw std::logic_error("catalog map invalid: " + v.error);
    return m;
}

ExampleBundle geometric_bundle(std::string name, std::string desc, Group g1, Group g2,
                               AffineMapSpec f, AffineMapSpec g, Subgroup gamma1, Subgroup gamma2) {
    ExampleBundle b;
    b.name = std::move(name);
    b.description = std::move(desc);
    b.geometric = true;
    b.pi1 = std::move(g1);
    b.pi2 = std::move(g2);
    b.phi = f.induced();
    b.psi = g.induced();
    b.f = std::move(f);
    b.g = std::move(g);
    b.gamma1 = std::move(gamma1);
    b.gamma2 = std::move(gamma2);
    return b;
}

}  // namespace

ExampleBundle example1_bundle(const Int& k) {
    // flat 3-manifold with deck group g2 mapped into the order-2 deck group of
    // a sphere quotient; all index data is symbolic
    ExampleBundle b;
    b.name = "example1";
    b.description = "coincidence pair from a G2-manifold to an order-2 quotient, algebraic indices";
    b.geometric = false;
    b.pi1 = catalog_group("g2_bieberbach");
    b.pi2 = catalog_group("cyclic_2");

    auto via = std::make_shared<GroupQuotient>(b.pi1, Subgroup::of_lattice(Sublattice::standard(3)));
    // quotient elements: (0, 1) and (0, alpha); send alpha-coset to beta
    std::vector<int> phi_images(2);
    for (int i = 0; i < 2; ++i) phi_images[size_t(i)] = via->rep(i).h;  // holonomy index matches target index
    b.phi = GroupHom::through_quotient(b.pi1, b.pi2, via, std::move(phi_images));
    b.psi = GroupHom::through_quotient(b.pi1, b.pi2, via, {0, 0});
    b.gamma1 = Subgroup::of_lattice(Sublattice::standard(3));
    b.gamma2 = Subgroup::of_elements({0});

    IndexTable table;
    table.per_coset.resize(2);
    Elem trivial_cls{{}, 0};  // the single class of the trivial lift-level group
    table.per_coset[0].push_back({trivial_cls, k});
    table.per_coset[1].push_back({trivial_cls, k});
    b.index_table = std::move(table);
    b.lhs_table = std::vector<std::pair<Elem, Int>>{{Elem{{}, 0}, k}};
    return b;
}

ExampleBundle example2_bundle(const Int& k) {
    // order-2 deck group mapped into g2; every homomorphism is trivial, the
    // Reidemeister set is the whole target with singleton classes
    ExampleBundle b;
    b.name = "example2";
    b.description = "pair from an order-2 quotient into a G2-manifold, algebraic indices";
    b.geometric = false;
    b.pi1 = catalog_group("cyclic_2");
    b.pi2 = catalog_group("g2_bieberbach");
    b.phi = GroupHom::trivial(b.pi1, b.pi2);
    b.psi = GroupHom::trivial(b.pi1, b.pi2);
    b.gamma1 = Subgroup::of_elements({0});
    b.gamma2 = Subgroup::of_lattice(Sublattice::standard(3));

    // lift-level classes are lattice elements of gamma2; sample indices with
    // the 2-fold covering multiplicity built in
    IndexTable table;
    table.per_coset.resize(2);
    auto lat = [](long x, long y, long z) { return Elem{{Int(x), Int(y), Int(z)}, 0}; };
    table.per_coset[0] = {{lat(0, 0, 0), 2 * k}, {lat(1, 0, 0), -4 * k}};
    table.per_coset[1] = {{lat(0, 0, 0), 2 * k}, {lat(0, 1, 0), 6 * k}};
    b.index_table = std::move(table);
    return b;
}

ExampleBundle catalog_bundle(const std::string& name) {
    if (name == "example1") return example1_bundle(1);
    if (name == "example2") return example2_bundle(1);

    if (name == "circle-3-1") {
        Group t1a = catalog_group("torus_1");
        auto f = make_map(t1a, t1a, IntMatrix{{3}}, VecQ(1, Rat(0)), {0});
        auto g = make_map(t1a, t1a, IntMatrix{{1}}, VecQ(1, Rat(0)), {0});
        return geometric_bundle("circle-3-1", "degree 3 against degree 1 on the circle, 2-fold cover",
                                t1a, t1a, f, g, Subgroup::of_lattice(Sublattice::scaled(1, 2)),
                                Subgroup::of_lattice(Sublattice::scaled(1, 2)));
    }
    if (name == "torus-rotation") {
        Group t2 = catalog_group("torus_2");
        auto f = make_map(t2, t2, IntMatrix{{0, -1}, {1, 0}}, VecQ(2, Rat(0)), {0});
        auto g = AffineMapSpec::identity_map(t2);
        return geometric_bundle("torus-rotation", "quarter-turn rotation against the identity on T^2",
                                t2, t2, f, g, Subgroup::of_lattice(Sublattice::scaled(2, 2)),
                                Subgroup::of_lattice(Sublattice::scaled(2, 2)));
    }
    if (name == "circle-neg") {
        Group t1 = catalog_group("torus_1");
        auto f = make_map(t1, t1, IntMatrix{{-1}}, VecQ(1, Rat(0)), {0});
        auto g = AffineMapSpec::identity_map(t1);
        return geometric_bundle("circle-neg", "fixed points of the reflection on the circle", t1, t1, f,
                                g, Subgroup::of_lattice(Sublattice::scaled(1, 2)),
                                Subgroup::of_lattice(Sublattice::scaled(1, 2)));
    }
    if (name == "torus-hyperbolic") {
        Group t2 = catalog_group("torus_2");
        auto f = make_map(t2, t2, IntMatrix{{2, 1}, {1, 1}}, VecQ(2, Rat(0)), {0});
        auto g = AffineMapSpec::identity_map(t2);
        return geometric_bundle("torus-hyperbolic", "fixed points of a hyperbolic torus map, 4-fold cover",
                                t2, t2, f, g, Subgroup::of_lattice(Sublattice::scaled(2, 2)),
                                Subgroup::of_lattice(Sublattice::scaled(2, 2)));
    }
    if (name == "g2-endo") {
        Group g2 = catalog_group("g2_bieberbach");
        auto f = make_map(g2, g2, IntMatrix{{1, 0, 0}, {0, 2, 0}, {0, 0, 2}}, VecQ(3, Rat(0)), {0, 1});
        auto g = make_map(g2, g2, IntMatrix{{3, 0, 0}, {0, 0, 0}, {0, 0, 0}}, VecQ(3, Rat(0)), {0, 1});
        return geometric_bundle("g2-endo", "affine endomorphism pair on the G2-manifold, 2-scaled cover",
                                g2, g2, f, g, Subgroup::of_lattice(Sublattice::scaled(3, 2)),
                                Subgroup::of_lattice(Sublattice::scaled(3, 2)));
    }
    throw std::invalid_argument("unknown example bundle: " + name);
}

std::vector<std::string> catalog_bundle_names() {
    return {"example1", "example2", "circle-3-1", "torus-rotation", "circle-neg", "torus-hyperbolic",
            "g2-endo"};
}

}  // namespace flattrace
