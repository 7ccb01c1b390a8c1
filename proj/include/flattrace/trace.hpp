#pragma once

#include <map>

#include "flattrace/cryst.hpp"

namespace flattrace {

/// Finitely supported integer combination of Reidemeister classes, keyed by
/// canonical class representatives. Zero coefficients are not stored.
class TraceVector {
public:
    void add(const Elem& cls, const Int& c) {
        if (c == 0) return;
        auto it = coeff_.find(cls);
        if (it == coeff_.end()) {
            coeff_.emplace(cls, c);
        } else {
            it->second += c;
            if (it->second == 0) coeff_.erase(it);
        }
    }

    const std::map<Elem, Int>& coefficients() const { return coeff_; }

    Int coefficient(const Elem& cls) const {
        auto it = coeff_.find(cls);
        return it == coeff_.end() ? Int(0) : it->second;
    }

    /// Sum of coefficients (the Lefschetz number of a full trace).
    Int augmentation() const {
        Int s(0);
        for (const auto& [k, v] : coeff_) s += v;
        return s;
    }

    /// Number of nonzero terms (the Nielsen number of a full trace).
    Int support_size() const { return Int(coeff_.size()); }

    TraceVector operator+(const TraceVector& o) const {
        TraceVector r = *this;
        for (const auto& [k, v] : o.coeff_) r.add(k, v);
        return r;
    }

    bool operator==(const TraceVector& o) const { return coeff_ == o.coeff_; }

    bool divisible_by(const Int& k) const {
        for (const auto& [key, v] : coeff_)
            if (v % k != 0) return false;
        return true;
    }

    TraceVector divided_by(const Int& k) const {
        TraceVector r;
        for (const auto& [key, v] : coeff_) {
            if (v % k != 0) throw std::invalid_argument("trace coefficient not divisible");
            r.add(key, v / k);
        }
        return r;
    }

    bool zero() const { return coeff_.empty(); }

    std::string to_string() const {
        if (coeff_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [k, v] : coeff_) {
            std::string c = v.get_str();
            if (v > 0 && !first) s += "+";
            if (v == 1)
                ;
            else if (v == -1)
                s += "-";
            else
                s += c + "*";
            s += "[" + flattrace::to_string(k) + "]";
            first = false;
        }
        return s;
    }

private:
    std::map<Elem, Int> coeff_;
};

}  // namespace flattrace
