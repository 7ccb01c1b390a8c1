#pragma once

#include "flattrace/averaging.hpp"

namespace flattrace {

/// One verification scenario: a pair of deck groups with a map pair
/// (geometric mode) or an explicit homomorphism pair plus index tables
/// (algebraic mode), and the cover subgroups.
struct ExampleBundle {
    std::string name;
    std::string description;
    bool geometric = true;
    Group pi1, pi2;
    GroupHom phi, psi;
    std::optional<AffineMapSpec> f, g;
    Subgroup gamma1, gamma2;
    std::optional<IndexTable> index_table;
    std::optional<std::vector<std::pair<Elem, Int>>> lhs_table;
};

/// Groups by name: torus_1 .. torus_6, g2_bieberbach, cyclic_2.
Group catalog_group(const std::string& name);

/// The 3-dimensional orientable Bieberbach group with holonomy Z2, presented
/// by generators t1, t2, t3, alpha with alpha^2 = t1 and alpha inverting t2, t3.
CrystGroup g2_bieberbach();

/// Bundles by name; example1 and example2 take a symbolic index scale.
ExampleBundle catalog_bundle(const std::string& name);
ExampleBundle example1_bundle(const Int& k);
ExampleBundle example2_bundle(const Int& k);
std::vector<std::string> catalog_bundle_names();

}  // namespace flattrace
