#ifndef ABTHEME_TESTS_ORACLE_HPP
#define ABTHEME_TESTS_ORACLE_HPP

// Function model used as an independent oracle: a multiplies by s, b integrates
// from 0, on sums of s^{base-1+n} (Log s)^j / j!.

#include <map>
#include <utility>

#include "abtheme/abalg.hpp"

namespace oracle
{

using abtheme::Scalar;

struct Fn {
    Scalar base;
    std::map<std::pair<unsigned, unsigned>, Scalar> terms; ///< (n, j) -> coefficient

    void add(unsigned n, unsigned j, const Scalar &c)
    {
        Scalar &t = terms[{n, j}];
        t += c;
        if (t.is_zero())
            terms.erase({n, j});
    }
    friend bool operator==(const Fn &x, const Fn &y) { return x.base == y.base && x.terms == y.terms; }
};

inline Fn times_s(const Fn &f)
{
    Fn r{f.base, {}};
    for (const auto &[k, c] : f.terms)
        r.add(k.first + 1, k.second, c);
    return r;
}

/// int_0^s t^{mu-1} L^j/j! dt = s^mu sum_i (-1)^{j-i} mu^{-(j-i)-1} L^i/i!
inline Fn integrate(const Fn &f)
{
    Fn r{f.base, {}};
    for (const auto &[k, c] : f.terms) {
        const Scalar mu = f.base + Scalar(static_cast<long>(k.first));
        Scalar w = Scalar(1) / mu;
        for (unsigned i = k.second + 1; i-- > 0;) {
            r.add(k.first + 1, i, c * w);
            w = -w / mu;
        }
    }
    return r;
}

inline Fn apply(const abtheme::AbElement &u, const Fn &f)
{
    Fn r{f.base, {}};
    for (const auto &[key, c] : u.terms()) {
        Fn g = f;
        for (unsigned q = 0; q < key.second; ++q)
            g = times_s(g);
        for (unsigned p = 0; p < key.first; ++p)
            g = integrate(g);
        for (const auto &[k, v] : g.terms)
            r.add(k.first, k.second, c * v);
    }
    return r;
}

inline Fn below(const Fn &f, unsigned n)
{
    Fn r{f.base, {}};
    for (const auto &[k, c] : f.terms)
        if (k.first < n)
            r.terms[k] = c;
    return r;
}

} // namespace oracle

#endif
