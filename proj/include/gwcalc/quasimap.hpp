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
#include "gwcalc/euler.hpp"
#include "gwcalc/polynomial.hpp"
#include "gwcalc/quotient.hpp"
#include "gwcalc/rational.hpp"

namespace gwcalc {

inline VarSetPtr quasimap_vars(int d) {
    std::vector<std::string> names;
    for (int i = 0; i <= d; ++i) names.push_back("H_" + std::to_string(i));
    return make_vars(std::move(names));
}

// Chow ring of the two-pointed quasimap space: C[H_0..H_d] modulo
// H_0^N, H_k^N(H_{k-1} - 2H_k + H_{k+1}), H_d^N; top degree N(d+1)-2 with
// volume normalization  int d * H_0^{N-1} H_1^N ... H_{d-1}^N H_d^{N-1} = 1.
class QuasimapRing {
public:
    QuasimapRing(int N, int d) : N_(N), d_(d), vars_(quasimap_vars(d)) {
        if (N < 1 || d < 1) throw std::invalid_argument("QuasimapRing: need N >= 1 and d >= 1");
        std::vector<Polynomial> rels;
        auto H = [&](int i) { return Polynomial::variable(vars_, static_cast<std::size_t>(i)); };
        rels.push_back(H(0).pow(N));
        for (int k = 1; k <= d - 1; ++k)
            rels.push_back(H(k).pow(N) * (H(k - 1) - Rational(2) * H(k) + H(k + 1)));
        rels.push_back(H(d).pow(N));
        pres_ = std::make_shared<GradedPresentation>(vars_, std::move(rels), top_degree());
    }

    int N() const { return N_; }
    int d() const { return d_; }
    long top_degree() const { return static_cast<long>(N_) * (d_ + 1) - 2; }
    const VarSetPtr& vars() const { return vars_; }
    const GradedPresentation& presentation() const { return *pres_; }

    Polynomial volume_element() const {
        std::vector<int> e(d_ + 1, N_);
        e[0] = N_ - 1;
        e[d_] = N_ - 1;
        return Polynomial::term(vars_, Monomial{std::move(e)}, Rational(d_));
    }

    std::shared_ptr<const QuotientRing> ring() const {
        std::lock_guard<std::mutex> lock(mu_);
        if (!ring_) ring_ = std::make_shared<QuotientRing>(*pres_);
        return ring_;
    }
    IntegralFunctional functional() const {
        return IntegralFunctional(ring(), volume_element(), Rational(1));
    }

private:
    int N_, d_;
    VarSetPtr vars_;
    std::shared_ptr<GradedPresentation> pres_;
    mutable std::mutex mu_;
    mutable std::shared_ptr<QuotientRing> ring_;
};

enum class FireOrder { lowest_first, highest_first };

// Memoized chip-firing evaluator for quasimap intersection numbers. A
// monomial H_0^{a_0}...H_d^{a_d} dies on a_0 >= N or a_d >= N; an interior
// excess a_j >= N+1 fires as H_j^{N+1} = (1/2) H_j^N (H_{j-1} + H_{j+1});
// the surviving fully reduced top-degree monomial is the volume monomial,
// contributing 1/d.
class QmRewriteEvaluator {
public:
    QmRewriteEvaluator(int N, int d, FireOrder order = FireOrder::lowest_first)
        : N_(N), d_(d), order_(order) {
        if (N < 1 || d < 1) throw std::invalid_argument("QmRewriteEvaluator: need N >= 1 and d >= 1");
        volume_.assign(d + 1, N);
        volume_[0] = N - 1;
        volume_[d] = N - 1;
    }

    Rational eval(const std::vector<int>& exps) {
        if (exps.size() != static_cast<std::size_t>(d_ + 1))
            throw std::invalid_argument("QmRewriteEvaluator: expected d+1 exponents");
        long total = 0;
        for (int e : exps) {
            if (e < 0) throw std::invalid_argument("QmRewriteEvaluator: negative exponent");
            total += e;
        }
        if (total != static_cast<long>(N_) * (d_ + 1) - 2) return Rational(0);
        return go(exps);
    }

    std::size_t memo_size() const { return memo_.size(); }

private:
    Rational go(const std::vector<int>& v) {
        auto it = memo_.find(v);
        if (it != memo_.end()) {
            if (!it->second) throw std::logic_error("QmRewriteEvaluator: rewrite cycle detected");
            return *it->second;
        }
        memo_.emplace(v, std::nullopt);  // in-progress marker
        Rational r(0);
        if (v[0] < N_ && v[d_] < N_) {
            int fire = -1;
            if (order_ == FireOrder::lowest_first) {
                for (int j = 1; j < d_; ++j)
                    if (v[j] >= N_ + 1) {
                        fire = j;
                        break;
                    }
            } else {
                for (int j = d_ - 1; j >= 1; --j)
                    if (v[j] >= N_ + 1) {
                        fire = j;
                        break;
                    }
            }
            if (fire < 0) {
                if (v == volume_) r = Rational(1, d_);
            } else {
                std::vector<int> left = v, right = v;
                left[fire] -= 1;
                left[fire - 1] += 1;
                right[fire] -= 1;
                right[fire + 1] += 1;
                r = Rational(1, 2) * (go(left) + go(right));
            }
        }
        memo_[v] = r;
        return r;
    }

    int N_, d_;
    FireOrder order_;
    std::vector<int> volume_;
    std::map<std::vector<int>, std::optional<Rational>> memo_;
};

inline Rational qm_intersection(int N, int d, const std::vector<int>& exps) {
    return QmRewriteEvaluator(N, d).eval(exps);
}

// closed form for int H_0^alpha H_1^beta H_2^gamma on the d=2 quasimap ring
inline Rational qm_intersection_closed_d2(int N, long alpha, long beta, long gamma) {
    if (alpha < 0 || beta < 0 || gamma < 0) return Rational(0);
    if (alpha + beta + gamma != 3L * N - 2) return Rational(0);
    if (N <= beta && beta <= 3L * N - 2 && alpha <= N - 1 && gamma <= N - 1)
        return binomial(beta - N, N - alpha - 1) * Rational::pow2(-(beta - N + 1));
    return Rational(0);
}

namespace detail {
// integrand H_0^a H_d^b prod_{i=0}^{d-1} e^k(H_i, H_{i+1}) / prod_j (k H_j)
// as a polynomial; the division is coefficient-wise and structurally exact.
inline Polynomial w_integrand(const VarSetPtr& vars, int N, int k, int d, long a, long b) {
    (void)N;
    Polynomial prod = Polynomial::constant(vars, Rational(1));
    EulerCoefficients ek = expand_euler_product(k);
    for (int i = 0; i < d; ++i) {
        Polynomial factor(vars);
        for (int m = 0; m < k; ++m) {
            std::vector<int> e(d + 1, 0);
            e[i] = k - m;
            e[i + 1] = m + 1;
            factor.add_term(Monomial{std::move(e)}, ek.at(m));
        }
        prod = prod * factor;
    }
    Polynomial out(vars);
    Rational scale = Rational(1) / Rational(k).pow(static_cast<unsigned long>(d - 1));
    for (const auto& [m, c] : prod.terms()) {
        std::vector<int> e = m.exps;
        e[0] += static_cast<int>(a);
        e[d] += static_cast<int>(b);
        for (int j = 1; j < d; ++j) {
            if (e[j] < 1) throw std::logic_error("w_integrand: interior exponent not divisible");
            e[j] -= 1;
        }
        out.add_term(Monomial{std::move(e)}, c * scale);
    }
    return out;
}
}  // namespace detail

// w(O_{h^a} O_{h^b})_{0,d} for the degree-k hypersurface in P^{N-1},
// evaluated by the rewrite engine; 0 when the integrand misses top degree.
inline Rational w_invariant(int N, int k, int d, long a, long b) {
    if (k < 1) throw std::invalid_argument("w_invariant: k must be >= 1");
    if (a < 0 || b < 0) throw std::invalid_argument("w_invariant: insertion exponents must be >= 0");
    if (N < 1 || d < 1) throw std::invalid_argument("w_invariant: need N >= 1 and d >= 1");
    VarSetPtr vars = quasimap_vars(d);
    Polynomial integrand = detail::w_integrand(vars, N, k, d, a, b);
    QmRewriteEvaluator ev(N, d);
    Rational out(0);
    for (const auto& [m, c] : integrand.terms()) out += c * ev.eval(m.exps);
    return out;
}

// 3-pointed degree-1 invariant <O_{h^a} O_{h^b} O_{h^{1+k-N}}>_{0,1}:
// integral route over P^{N-1} x P^{N-1} and the telescoping ell route,
// compared whenever the query is at degree balance a+b = 3N-2k-3.
inline Rational three_point_deg1(int N, int k, long a, long b) {
    if (1 + k - N < 0)
        throw std::invalid_argument("three_point_deg1: insertion h^{1+k-N} needs k >= N-1");
    if (k < 1 || a < 0 || b < 0) throw std::invalid_argument("three_point_deg1: bad arguments");
    Rational ell_route(0);
    for (long i = 0; i < b; ++i)
        ell_route += ell(k, i + a + k - N + 1) - ell(k, i + k - N + 1);

    Rational integral_route(0);
    if (b > 0 && k - N >= 0) {
        VarSetPtr vars = quasimap_vars(1);
        Polynomial H0 = Polynomial::variable(vars, 0), H1 = Polynomial::variable(vars, 1);
        Polynomial ekp(vars);
        EulerCoefficients ek = expand_euler_product(k);
        for (int m = 0; m < k; ++m) ekp.add_term(Monomial{{k - m, m + 1}}, ek.at(m));
        Polynomial integrand = (H1 - H0) * ekp * H0.pow(static_cast<unsigned>(a)) *
                               power_difference_quotient(H0, H1, b - 1) *
                               power_difference_quotient(H0, H1, k - N);
        integral_route = integrand.coefficient(Monomial{{N - 1, N - 1}});
    }
    // when b == 0 the pdq factor is the empty sum; when k == N-1 the
    // third insertion is the fundamental class and the quotient factor
    // (H_0^0 - H_1^0)/(H_0 - H_1) vanishes identically
    if (a + b == 3L * N - 2 * k - 3 && integral_route != ell_route)
        throw std::logic_error("three_point_deg1: integral and ell routes disagree at degree balance");
    return integral_route;
}

}  // namespace gwcalc
