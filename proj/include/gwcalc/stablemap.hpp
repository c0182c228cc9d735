#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwcalc/binomial.hpp"
#include "gwcalc/polynomial.hpp"
#include "gwcalc/quotient.hpp"
#include "gwcalc/rational.hpp"

namespace gwcalc::stablemap {

// ----- degree 1: A*(Mbar_{0,2}(P^n,1)) in generators H, psi, T -----

inline VarSetPtr d1_vars() {
    static const VarSetPtr v = make_vars({"H", "psi", "T"});
    return v;
}

namespace d1 {
inline Polynomial H() { return Polynomial::variable(d1_vars(), 0); }
inline Polynomial psi() { return Polynomial::variable(d1_vars(), 1); }
inline Polynomial T() { return Polynomial::variable(d1_vars(), 2); }
inline Polynomial h0() { return H(); }
inline Polynomial h1() { return H() + psi(); }
}  // namespace d1

struct StableMapPresentationD1 {
    int n = 0;
    GradedPresentation pres;
};

// relations H^{n+1}, T psi, (H+psi)^{n+1}, and the fraction relation
// ((H+psi+T)^{n+1} - H^{n+1})/(psi+T) realized as pdq(H+psi+T, H, n)
inline StableMapPresentationD1 build_presentation_d1(int n) {
    if (n < 1) throw std::invalid_argument("build_presentation_d1: n must be >= 1");
    using namespace d1;
    std::vector<Polynomial> rels;
    rels.push_back(H().pow(n + 1));
    rels.push_back(T() * psi());
    rels.push_back((H() + psi()).pow(n + 1));
    rels.push_back(power_difference_quotient(H() + psi() + T(), H(), n));
    return {n, GradedPresentation(d1_vars(), std::move(rels), 2L * n)};
}

// ----- degree 2: B*(Mbar_{0,2}(P^n,2)) in generators H, psi, T_1, T_2, U_1, U_2, S_0 -----

inline VarSetPtr d2_vars() {
    static const VarSetPtr v = make_vars({"H", "psi", "T_1", "T_2", "U_1", "U_2", "S_0"});
    return v;
}

namespace d2 {
inline Polynomial H() { return Polynomial::variable(d2_vars(), 0); }
inline Polynomial psi() { return Polynomial::variable(d2_vars(), 1); }
inline Polynomial T1() { return Polynomial::variable(d2_vars(), 2); }
inline Polynomial T2() { return Polynomial::variable(d2_vars(), 3); }
inline Polynomial U1() { return Polynomial::variable(d2_vars(), 4); }
inline Polynomial U2() { return Polynomial::variable(d2_vars(), 5); }
inline Polynomial S0() { return Polynomial::variable(d2_vars(), 6); }
inline Polynomial S1() { return T1() + T2(); }
inline Polynomial S2() { return U1() + U2(); }
inline Polynomial P1() { return T1() * T2(); }
inline Polynomial P2() { return U1() * U2(); }
inline Polynomial P3() { return T1() * U2() + T2() * U1(); }
inline Polynomial h0() { return H(); }
inline Polynomial h1() { return H() + psi(); }
inline Polynomial h2() { return H() + Rational(2) * psi() + S2(); }
inline Polynomial g0() { return h0(); }
inline Polynomial g1() { return h1() + S0(); }
inline Polynomial g2() { return h2() + Rational(2) * S0() + S1(); }
}  // namespace d2

struct StableMapPresentationD2 {
    int n = 0;
    GradedPresentation pres;
};

// the sixteen generators: (rel:1) H^{n+1}; (rel:2) S_0U_1, S_0U_2, U_1U_2;
// (rel:31) T_1T_2(psi+S_0), T_1U_2 psi, T_2U_1 psi; (rel:32) T_1(psi+U_1),
// T_2(psi+U_2), S_0 psi; (rel:4) (H+2psi+U_1+U_2)^{n+1}; and the simplified
// fifth relations assembled from pdq sums
inline StableMapPresentationD2 build_presentation_d2(int n) {
    if (n < 1) throw std::invalid_argument("build_presentation_d2: n must be >= 1");
    using namespace d2;
    const Polynomial Hp = H() + psi();
    const Polynomial HpS0 = Hp + S0();
    const Polynomial H2p = H() + Rational(2) * psi();
    const Polynomial H2p2S0 = H2p + Rational(2) * S0();
    std::vector<Polynomial> rels;
    rels.push_back(H().pow(n + 1));
    rels.push_back(S0() * U1());
    rels.push_back(S0() * U2());
    rels.push_back(U1() * U2());
    rels.push_back(T1() * T2() * (psi() + S0()));
    rels.push_back(T1() * U2() * psi());
    rels.push_back(T2() * U1() * psi());
    rels.push_back(T1() * (psi() + U1()));
    rels.push_back(T2() * (psi() + U2()));
    rels.push_back(S0() * psi());
    rels.push_back((H2p + S2()).pow(n + 1));
    Polynomial rel5e = power_difference_quotient(H2p2S0 + U1() + T1(), HpS0, n) +
                       power_difference_quotient(H2p2S0 + U2() + T2(), HpS0, n) -
                       power_difference_quotient(H2p2S0 + U1(), HpS0, n) -
                       power_difference_quotient(H2p2S0 + U2(), HpS0, n) +
                       power_difference_quotient(H2p + S2(), Hp, n) -
                       power_difference_quotient(H2p, Hp, n) +
                       Rational(2) * power_difference_quotient(H2p2S0, H(), n);
    rels.push_back(std::move(rel5e));
    rels.push_back(T1() * (power_difference_quotient(H() + U2() + T2(), H(), n) +
                           power_difference_quotient(HpS0, H(), n) -
                           power_difference_quotient(H(), H(), n)));
    rels.push_back(T2() * (power_difference_quotient(H() + U1() + T1(), H(), n) +
                           power_difference_quotient(HpS0, H(), n) -
                           power_difference_quotient(H(), H(), n)));
    rels.push_back(U1() * (power_difference_quotient(H() + T2(), H(), n) -
                           power_difference_quotient(H(), H(), n) +
                           power_difference_quotient(Hp, H(), n)));
    rels.push_back(U2() * (power_difference_quotient(H() + T1(), H(), n) -
                           power_difference_quotient(H(), H(), n) +
                           power_difference_quotient(Hp, H(), n)));
    return {n, GradedPresentation(d2_vars(), std::move(rels), 3L * n + 1)};
}

// ----- key transformations -----

struct KeyTransform {
    VarSetPtr ring_vars;  // B*-side generators
    VarSetPtr h_vars;     // transformed generators
    std::vector<std::optional<Polynomial>> from_h;  // h var -> ring polynomial
    std::vector<std::optional<Polynomial>> to_h;    // ring var -> h polynomial (partial for d=2)

    Polynomial apply_from_h(const Polynomial& p) const { return substitute(p, from_h, ring_vars); }
    Polynomial apply_to_h(const Polynomial& p) const { return substitute(p, to_h, h_vars); }
};

// h_0 = H, h_1 = H + psi; invertible on all generators
inline KeyTransform key_transform_d1() {
    KeyTransform t;
    t.ring_vars = d1_vars();
    t.h_vars = make_vars({"h_0", "h_1", "T"});
    auto hv = [&](std::size_t i) { return Polynomial::variable(t.h_vars, i); };
    t.from_h = {d1::H(), d1::H() + d1::psi(), d1::T()};
    t.to_h = {hv(0), hv(1) - hv(0), hv(2)};
    return t;
}

// h_0 = H, h_1 = H + psi, h_2 = H + 2psi + S_2 (S_2 = U_1 + U_2),
// S_1 = T_1 + T_2; to-h covers the subring generated by H, psi, S_0
inline KeyTransform key_transform_d2() {
    KeyTransform t;
    t.ring_vars = d2_vars();
    t.h_vars = make_vars({"h_0", "h_1", "h_2", "S_0", "S_1"});
    auto hv = [&](std::size_t i) { return Polynomial::variable(t.h_vars, i); };
    t.from_h = {d2::h0(), d2::h1(), d2::h2(), d2::S0(), d2::S1()};
    t.to_h = {hv(0), hv(1) - hv(0), std::nullopt, std::nullopt,
              std::nullopt, std::nullopt, hv(3)};
    return t;
}

// ----- closed-form integral evaluators -----

// closed form for int h_0^alpha h_1^beta (h_1+T)^gamma over Mbar_{0,2}(P^n,1),
// with int h_0^n h_1^n = 1; zero off top degree
inline Rational integral_d1_closed(int n, long alpha, long beta, long gamma) {
    if (alpha < 0 || beta < 0 || gamma < 0) return Rational(0);
    if (alpha + beta + gamma != 2L * n) return Rational(0);
    if (alpha == n && gamma != n) return Rational(1);
    if (alpha != n && gamma == n) return Rational(-1);
    return Rational(0);
}

// closed form for int g_0^alpha g_1^beta g_2^gamma h_2^delta over
// Mbar_{0,2}(P^n,2), with int 2 h_0^n h_1^{n+1} h_2^n = 1. Inputs with
// alpha > n reduce to 0 first (g_0^{n+1} = 0); top-degree inputs outside
// the lemma's covered branches are a domain error, never a guess.
inline Rational integral_d2_closed(int n, long alpha, long beta, long gamma, long delta) {
    if (alpha < 0 || beta < 0 || gamma < 0 || delta < 0) return Rational(0);
    if (alpha + beta + gamma + delta != 3L * n + 1) return Rational(0);
    if (alpha > n) return Rational(0);
    if (delta == 0) {
        if (gamma <= 2L * n) return Rational(0);
        throw std::domain_error("integral_d2_closed: uncovered case delta = 0, gamma > 2n");
    }
    if (delta <= n) {
        if (gamma < n || (gamma == n && n - delta + 1 > alpha))
            return (binomial(beta - n - 1, n - alpha) - binomial(beta - n - 1, n - gamma)) *
                   Rational::pow2(-(beta - n));
        if (gamma == n && n - delta + 1 <= alpha && alpha <= n) return Rational(-1);
        if (n + 1 <= gamma && gamma <= 2L * n - delta) return Rational(0);
        throw std::domain_error("integral_d2_closed: uncovered case gamma > 2n - delta");
    }
    throw std::domain_error("integral_d2_closed: uncovered case delta > n");
}

// ----- shared engine instances -----

inline std::shared_ptr<const QuotientRing> d1_ring(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const QuotientRing>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_shared<const QuotientRing>(build_presentation_d1(n).pres)).first;
    return it->second;
}

inline std::shared_ptr<const QuotientRing> d2_ring(int n) {
    static std::mutex mu;
    static std::map<int, std::shared_ptr<const QuotientRing>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_shared<const QuotientRing>(build_presentation_d2(n).pres)).first;
    return it->second;
}

inline IntegralFunctional d1_functional(int n) {
    return IntegralFunctional(d1_ring(n), d1::h0().pow(n) * d1::h1().pow(n), Rational(1));
}

inline IntegralFunctional d2_functional(int n) {
    return IntegralFunctional(
        d2_ring(n), Rational(2) * d2::h0().pow(n) * d2::h1().pow(n + 1) * d2::h2().pow(n),
        Rational(1));
}

// ----- mechanical lemma verification -----

struct SubClaim {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::string id;
    int n = 0;
    std::vector<SubClaim> claims;

    bool all_passed() const {
        for (const auto& c : claims)
            if (!c.pass) return false;
        return true;
    }
};

inline const std::vector<std::string>& lemma_ids() {
    static const std::vector<std::string> ids = {"mp",  "rel14", "ggg",      "s1",
                                                 "p2p3", "dq-expansion", "lemma41", "lemma55"};
    return ids;
}

namespace detail {

inline void check_membership(VerificationReport& rep, const QuotientRing& ring,
                             const std::string& name, const Polynomial& p) {
    bool ok = ring.contains_in_ideal(p);
    rep.claims.push_back({name, ok, ok ? "in ideal" : "NOT in ideal"});
}

inline void check_value(VerificationReport& rep, const std::string& name, const Rational& got,
                        const Rational& expected) {
    bool ok = got == expected;
    rep.claims.push_back({name, ok, "got " + got.str() + ", expected " + expected.str()});
}

// reduction modulo T(h_1 - h_0): in any term carrying T, h_1 and h_0 are
// interchangeable, so move all h_1 exponent onto h_0
inline Polynomial reduce_mod_T_h1_minus_h0(const Polynomial& p) {
    Polynomial out(p.vars());
    for (const auto& [m, c] : p.terms()) {
        std::vector<int> e = m.exps;  // (h_0, h_1, T)
        if (e[2] >= 1) {
            e[0] += e[1];
            e[1] = 0;
        }
        out.add_term(Monomial{std::move(e)}, c);
    }
    return out;
}

}  // namespace detail

// Mechanically verify one of the named ring identities at parameter n.
// Ideal memberships run in the B*-presentation through the key transform;
// integral claims run through the quotient engine functionals.
inline VerificationReport verify_lemma(const std::string& id, int n) {
    using namespace d2;
    VerificationReport rep;
    rep.id = id;
    rep.n = n;
    if (n < 1) throw std::invalid_argument("verify_lemma: n must be >= 1");

    if (id == "mp") {
        auto ring = d2_ring(n);
        detail::check_membership(rep, *ring, "h_0^{n+1} = 0", h0().pow(n + 1));
        detail::check_membership(rep, *ring, "h_1^{n+1}(h_0 - 2h_1 + h_2) = 0",
                                 h1().pow(n + 1) * (h0() - Rational(2) * h1() + h2()));
        detail::check_membership(rep, *ring, "h_2^{n+1} = 0", h2().pow(n + 1));
    } else if (id == "rel14") {
        auto ring = d2_ring(n);
        detail::check_membership(rep, *ring, "P_3 = S_1(h_2 - h_1)", P3() - S1() * (h2() - h1()));
        detail::check_membership(rep, *ring, "P_1(h_2 - h_0) = 0", P1() * (h2() - h0()));
        detail::check_membership(rep, *ring, "P_1(h_1 - h_0 + S_0) = 0", P1() * (h1() - h0() + S0()));
        detail::check_membership(rep, *ring, "S_0(h_1 - h_0) = 0", S0() * (h1() - h0()));
        detail::check_membership(rep, *ring, "S_0(h_1 - h_2) = 0", S0() * (h1() - h2()));
        detail::check_membership(rep, *ring, "S_1(h_1 - h_0)(h_1 - h_2) = 0",
                                 S1() * (h1() - h0()) * (h1() - h2()));
    } else if (id == "ggg") {
        auto ring = d2_ring(n);
        detail::check_membership(rep, *ring, "g_0^{n+1} = 0", g0().pow(n + 1));
        detail::check_membership(rep, *ring, "g_1^{n+1}(g_0 - 2g_1 + g_2) = 0",
                                 g1().pow(n + 1) * (g0() - Rational(2) * g1() + g2()));
        Polynomial s(d2_vars());
        for (int i = 0; i <= n; ++i) s += (g0().pow(i) + g2().pow(i)) * g1().pow(n - i);
        detail::check_membership(rep, *ring, "(g_1 - g_0) sum_i (g_0^i + g_2^i) g_1^{n-i} = 0",
                                 (g1() - g0()) * s);
        detail::check_membership(rep, *ring, "(g_1 - g_0) g_2^{n+1} = 0",
                                 (g1() - g0()) * g2().pow(n + 1));
    } else if (id == "s1") {
        auto f = d2_functional(n);
        for (long a = 1; a < n; ++a)
            for (long b = 0; b <= 3 * n + 1 - a; ++b)
                for (long c = 0; c <= 3 * n + 1 - a - b; ++c) {
                    long dd = 3 * n + 1 - a - b - c;
                    Polynomial cls = S1().pow(a) * h0().pow(b) * h1().pow(c) * h2().pow(dd);
                    detail::check_value(rep,
                                        "int S_1^" + std::to_string(a) + " h_0^" + std::to_string(b) +
                                            " h_1^" + std::to_string(c) + " h_2^" + std::to_string(dd) +
                                            " = 0",
                                        f.top_integral(cls), Rational(0));
                }
        detail::check_value(rep, "int S_1^n h_1 h_0^n h_2^n = -1",
                            f.top_integral(S1().pow(n) * h1() * h0().pow(n) * h2().pow(n)),
                            Rational(-1));
    } else if (id == "p2p3") {
        auto ring = d2_ring(n);
        detail::check_membership(rep, *ring, "P_2 = 0", P2());
        detail::check_membership(rep, *ring, "P_3 = S_1 psi + S_1 S_2",
                                 S1() * psi() + S1() * S2() - P3());
    } else if (id == "dq-expansion") {
        auto kt = key_transform_d1();
        const VarSetPtr& hv = kt.h_vars;
        Polynomial hh0 = Polynomial::variable(hv, 0), hh1 = Polynomial::variable(hv, 1),
                   T = Polynomial::variable(hv, 2);
        Polynomial e = power_difference_quotient(hh1 + T, hh0, n);
        for (int i = 0; i <= n; ++i) e -= hh0.pow(n - i) * hh1.pow(i);
        for (int j = 1; j <= n; ++j)
            e -= binomial(n + 1, j + 1) * hh0.pow(n - j) * T.pow(j);
        Polynomial reduced = detail::reduce_mod_T_h1_minus_h0(e);
        bool ok = reduced.is_zero();
        rep.claims.push_back({"pdq(h_1+T, h_0, n) = sum_i h_0^{n-i} h_1^i + sum_j C(n+1,j+1) h^{n-j} T^j  "
                              "(mod T(h_1 - h_0))",
                              ok, ok ? "reduces to zero" : "remainder " + reduced.str()});
    } else if (id == "lemma41") {
        auto f = d1_functional(n);
        using namespace d1;
        Polynomial h1T = h1() + T();
        for (long a = 0; a <= 2 * n; ++a)
            for (long b = 0; b <= 2 * n - a; ++b) {
                long c = 2 * n - a - b;
                Rational got = f.top_integral(h0().pow(a) * h1().pow(b) * h1T.pow(c));
                detail::check_value(rep,
                                    "int h_0^" + std::to_string(a) + " h_1^" + std::to_string(b) +
                                        " (h_1+T)^" + std::to_string(c),
                                    got, integral_d1_closed(n, a, b, c));
            }
    } else if (id == "lemma55") {
        auto f = d2_functional(n);
        for (long a = 0; a <= 3 * n + 1; ++a)
            for (long b = 0; b <= 3 * n + 1 - a; ++b)
                for (long c = 0; c <= 3 * n + 1 - a - b; ++c) {
                    long dd = 3 * n + 1 - a - b - c;
                    Rational expected;
                    try {
                        expected = integral_d2_closed(n, a, b, c, dd);
                    } catch (const std::domain_error&) {
                        continue;  // outside the lemma's covered domain
                    }
                    Polynomial cls = g0().pow(a) * g1().pow(b) * g2().pow(c) * h2().pow(dd);
                    detail::check_value(rep,
                                        "int g_0^" + std::to_string(a) + " g_1^" + std::to_string(b) +
                                            " g_2^" + std::to_string(c) + " h_2^" + std::to_string(dd),
                                        f.top_integral(cls), expected);
                }
    } else {
        throw std::invalid_argument("verify_lemma: unknown lemma id '" + id + "'");
    }
    return rep;
}

}  // namespace gwcalc::stablemap
