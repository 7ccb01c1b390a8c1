#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "flattrace/numeric.hpp"

namespace flattrace {

struct Validation {
    bool ok = true;
    std::string error;
    static Validation pass() { return {}; }
    static Validation fail(std::string msg) { return {false, std::move(msg)}; }
};

/// Finite group given by its multiplication table.
class FiniteGroup {
public:
    FiniteGroup() = default;
    FiniteGroup(int order, std::vector<int> table, std::vector<std::string> names = {});

    int order() const { return order_; }
    int mul(int a, int b) const { return table_[size_t(a) * order_ + b]; }
    int inv(int a) const { return inverse_[size_t(a)]; }
    int identity() const { return identity_; }
    int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }

    const std::string& name_of(int a) const { return names_[size_t(a)]; }
    const std::vector<int>& raw_table() const { return table_; }

    /// Exhaustive check of identity, inverse, and associativity laws.
    Validation validate() const;

    bool operator==(const FiniteGroup& o) const { return order_ == o.order_ && table_ == o.table_; }

private:
    int order_ = 0;
    int identity_ = 0;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> names_;
};

FiniteGroup cyclic_group(int n);
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
FiniteGroup symmetric_3();
FiniteGroup dihedral_group(int n);  // order 2n
FiniteGroup quaternion_8();

/// Subgroup generated by the given elements.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
bool is_normal(const FiniteGroup& g, const std::vector<int>& subgroup);
/// Smallest normal subgroup containing the given elements.
std::vector<int> normal_closure(const FiniteGroup& g, const std::vector<int>& gens);
/// All distinct normal subgroups obtained as normal closures of single
/// elements, plus trivial and full. (Not necessarily every normal subgroup.)
std::vector<std::vector<int>> some_normal_subgroups(const FiniteGroup& g);

struct FiniteQuotientTable {
    FiniteGroup group;
    std::vector<int> rep_of;      // quotient element -> least coset representative
    std::vector<int> project_of;  // ambient element -> quotient element
};

/// Quotient by a normal subgroup; coset representatives are least indices.
FiniteQuotientTable quotient_by_normal(const FiniteGroup& g, const std::vector<int>& normal);

/// All homomorphisms between small table groups, found by extending
/// generator images through multiplicative closure.
std::vector<std::vector<int>> all_homomorphisms(const FiniteGroup& src, const FiniteGroup& dst);

/// Random sample of homomorphisms (always contains the trivial one).
std::vector<std::vector<int>> sample_homomorphisms(const FiniteGroup& src, const FiniteGroup& dst,
                                                   int want, std::mt19937& rng);

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& dst, const std::vector<int>& images);

/// Greedy generating sequence: each element outside the subgroup generated so far.
std::vector<int> generating_set(const FiniteGroup& g);

}  // namespace flattrace
