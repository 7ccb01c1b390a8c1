#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace flattrace {

using Int = mpz_class;
using Rat = mpq_class;

using VecI = std::vector<Int>;
using VecQ = std::vector<Rat>;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Floor division; GMP's tdiv truncates toward zero, which is wrong for
// normal-form reductions on negative entries.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int floor_mod(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int rat_floor(const Rat& q) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

inline bool is_integral(const Rat& q) { return q.get_den() == 1; }

inline VecQ to_rational(const VecI& v) {
    VecQ out(v.size());
    for (size_t i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
    return out;
}

inline int compare(const Int& a, const Int& b) { return cmp(a, b); }

// Lexicographic compare; shorter vectors sort first.
inline int compare(const VecI& a, const VecI& b) {
    if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i) {
        int c = cmp(a[i], b[i]);
        if (c != 0) return c;
    }
    return 0;
}

inline VecI vec_add(const VecI& a, const VecI& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    VecI out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline VecI vec_sub(const VecI& a, const VecI& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    VecI out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline VecI vec_neg(const VecI& a) {
    VecI out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = -a[i];
    return out;
}

inline bool is_zero(const VecI& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline VecQ vec_add(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    VecQ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline VecQ vec_sub(const VecQ& a, const VecQ& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector size mismatch");
    VecQ out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline bool is_zero(const VecQ& a) {
    for (const auto& x : a)
        if (x != 0) return false;
    return true;
}

inline bool is_integral(const VecQ& a) {
    for (const auto& x : a)
        if (!is_integral(x)) return false;
    return true;
}

inline VecI to_integer(const VecQ& a) {
    VecI out(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        if (!is_integral(a[i])) throw std::invalid_argument("vector entry not integral");
        out[i] = a[i].get_num();
    }
    return out;
}

// Canonical text form: "n" for integers, "p/q" otherwise (q > 0, reduced).
std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace flattrace
