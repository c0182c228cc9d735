#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "gwcalc/euler.hpp"
#include "gwcalc/quasimap.hpp"
#include "gwcalc/rational.hpp"
#include "gwcalc/stablemap.hpp"

namespace gwcalc {

// Two-pointed genus-0 GW query against the degree-k hypersurface in P^{N-1}.
struct GWQuery {
    int N = 0, k = 0, d = 0;
    long a = 0, b = 0;

    GWQuery(int N_, int k_, int d_, long a_, long b_) : N(N_), k(k_), d(d_), a(a_), b(b_) {
        if (N < 3) throw std::invalid_argument("GWQuery: N must be >= 3");
        if (k < 1) throw std::invalid_argument("GWQuery: k must be >= 1");
        if (d != 1 && d != 2) throw std::invalid_argument("GWQuery: d must be 1 or 2");
        if (a < 0 || b < 0) throw std::invalid_argument("GWQuery: a, b must be >= 0");
    }

    long degree_balance() const { return d == 1 ? 2L * N - k - 3 : 3L * N - 2L * k - 3; }
    bool valid() const { return a + b == degree_balance(); }
};

enum class GwMethod { formula, expanded, stablemap, all };

inline GwMethod parse_method(const std::string& s) {
    if (s == "formula") return GwMethod::formula;
    if (s == "expanded") return GwMethod::expanded;
    if (s == "stablemap") return GwMethod::stablemap;
    if (s == "all") return GwMethod::all;
    throw std::invalid_argument("unknown method '" + s + "'");
}

struct GWResult {
    Rational value;
    std::optional<Rational> formula_path;    // mirror formula through quasimap w's
    std::optional<Rational> expanded_path;   // fully expanded ell-coefficient sums
    std::optional<Rational> stablemap_path;  // stable-map integral via closed lemmas
    bool consistent = true;  // all computed paths agree exactly
    bool warning = false;    // degree-unbalanced query, value forced to 0
};

namespace detail {
inline void finalize(GWResult& r) {
    std::optional<Rational> first;
    for (const auto* p : {&r.expanded_path, &r.formula_path, &r.stablemap_path}) {
        if (!p->has_value()) continue;
        if (!first) {
            first = **p;
        } else if (**p != *first) {
            r.consistent = false;
        }
    }
    if (first) r.value = *first;
}
}  // namespace detail

// degree-1 invariant: w-difference, closed ell-formula, and the
// stable-map integral  int h_0^a h_1^b e^k(h_0, h_1+T)  evaluated termwise
inline GWResult gw_deg1(const GWQuery& q, GwMethod method = GwMethod::all) {
    if (q.d != 1) throw std::invalid_argument("gw_deg1: query has d != 1");
    GWResult r;
    if (!q.valid()) {
        r.warning = true;
        return r;
    }
    const bool all = method == GwMethod::all;
    if (all || method == GwMethod::formula)
        r.formula_path = w_invariant(q.N, q.k, 1, q.a, q.b) - w_invariant(q.N, q.k, 1, q.a + q.b, 0);
    if (all || method == GwMethod::expanded)
        r.expanded_path = ell(q.k, q.N - q.a - 2) - ell(q.k, q.k - q.N + 1);
    if (all || method == GwMethod::stablemap) {
        const int n = q.N - 1;
        Rational s(0);
        for (long i = 0; i < q.k; ++i)
            s += ell(q.k, i) * stablemap::integral_d1_closed(n, q.a + q.k - i, q.b, i + 1);
        r.stablemap_path = s;
    }
    detail::finalize(r);
    return r;
}

// degree-2 invariant: the mirror formula with its 3-point correction, the
// expanded double ell-sum with truncated binomials, and the stable-map
// integral  int (g_0^a - g_1^a) h_2^b e^k(g_0,g_1) e^k(g_1,g_2) / (k g_1)
// evaluated termwise through the closed d=2 integrals
inline GWResult gw_deg2(const GWQuery& q, GwMethod method = GwMethod::all) {
    if (q.d != 2) throw std::invalid_argument("gw_deg2: query has d != 2");
    if (1 + q.k - q.N < 0)
        throw std::invalid_argument("gw_deg2: correction insertion h^{1+k-N} needs k >= N-1");
    GWResult r;
    if (!q.valid()) {
        r.warning = true;
        return r;
    }
    const bool all = method == GwMethod::all;
    const int N = q.N, k = q.k;
    const long a = q.a, b = q.b;
    if (all || method == GwMethod::formula) {
        Rational v = w_invariant(N, k, 2, a, b) - w_invariant(N, k, 2, a + b, 0) -
                     Rational(1, k) * three_point_deg1(N, k, a, b) *
                         w_invariant(N, k, 1, a + b - N + k, 0);
        r.formula_path = v;
    }
    if (all || method == GwMethod::expanded) {
        Rational s(0);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) {
                Rational t = binomial(i + j - N + 1, N - a - k + i - 1) -
                             binomial(i + j - N + 1, N - k + j - 1);
                if (!t.is_zero()) s += ell(k, i) * ell(k, j) * t * Rational::pow2(-(i + j - N + 2));
            }
        s = s * Rational(1, k);
        Rational corr(0);
        for (long i = 0; i < b; ++i) corr += ell(k, i + a + k - N + 1) - ell(k, i + k - N + 1);
        s -= Rational(1, k) * ell(k, k - N + 1) * corr;
        r.expanded_path = s;
    }
    if (all || method == GwMethod::stablemap) {
        const int n = N - 1;
        Rational s(0);
        if (a > 0) {  // for a = 0 every (i,j) bracket cancels identically
            for (long i = 0; i < k; ++i)
                for (long j = 0; j < k; ++j) {
                    Rational t1 = stablemap::integral_d2_closed(n, a + k - i, i + j + 1, k - j, b);
                    Rational t2 = stablemap::integral_d2_closed(n, k - i, a + i + j + 1, k - j, b);
                    if (t1 != t2) s += ell(k, i) * ell(k, j) * (t1 - t2);
                }
        }
        r.stablemap_path = s * Rational(1, k);
    }
    detail::finalize(r);
    return r;
}

inline GWResult gw_invariant(const GWQuery& q, GwMethod method = GwMethod::all) {
    return q.d == 1 ? gw_deg1(q, method) : gw_deg2(q, method);
}

}  // namespace gwcalc
