#pragma once

#include "cayleyiso/group.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cayleyiso {

/// Finitely supported function Gamma -> T. Only nonzero values are stored.
template <class T>
struct FiniteSupportFunction {
    ElementMap<T> values;

    void set(const Element& e, T v) {
        if (v == T(0)) values.erase(e);
        else values[e] = std::move(v);
    }
    T at(const Element& e) const {
        auto it = values.find(e);
        return it == values.end() ? T(0) : it->second;
    }
    size_t support_size() const { return values.size(); }

    /// Support in canonical element order (stable output order for reports).
    std::vector<Element> sorted_support() const {
        std::vector<Element> s;
        s.reserve(values.size());
        for (auto& [e, v] : values) s.push_back(e);
        std::sort(s.begin(), s.end());
        return s;
    }
};

using FunctionD = FiniteSupportFunction<double>;

/// (f*h)(x) = sum_y f(y) h(y^-1 x); support within supp(f)*supp(h).
template <class T>
FiniteSupportFunction<T> convolve(const Group& g, const FiniteSupportFunction<T>& f,
                                  const FiniteSupportFunction<T>& h) {
    FiniteSupportFunction<T> out;
    for (const auto& [y, fy] : f.values)
        for (const auto& [z, hz] : h.values) out.values[g.mul(y, z)] += fy * hz;
    for (auto it = out.values.begin(); it != out.values.end();) {
        if (it->second == T(0)) it = out.values.erase(it);
        else ++it;
    }
    return out;
}

inline FunctionD dirac(const Group& g) {
    FunctionD f;
    f.set(g.identity(), 1.0);
    return f;
}

inline FunctionD indicator(const SymmetricSet& s) {
    FunctionD f;
    for (const Element& e : s.elems) f.set(e, 1.0);
    return f;
}

/// lp norm for p >= 1; pass infinity for the sup norm.
inline double lp_norm(const FunctionD& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm needs p >= 1");
    if (std::isinf(p)) {
        double m = 0;
        for (auto& [e, v] : f.values) m = std::max(m, std::fabs(v));
        return m;
    }
    double s = 0;
    for (auto& [e, v] : f.values) s += std::pow(std::fabs(v), p);
    return std::pow(s, 1.0 / p);
}

} // namespace cayleyiso
