#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "gwcalc/polynomial.hpp"
#include "gwcalc/rational.hpp"

namespace gwcalc {

// Coefficients of the Euler product e^k(x,y) = prod_{j=0}^{k} (j x + (k-j) y),
// written as e^k(x,y) = sum_{i=0}^{k-1} ell_i x^{k-i} y^{i+1}.
struct EulerCoefficients {
    int k = 0;
    std::vector<Rational> ell;  // ell_0 .. ell_{k-1}

    // ell_i with the out-of-range convention ell_i = 0 for i < 0 or i >= k
    Rational at(long i) const {
        if (i < 0 || i >= k) return Rational(0);
        return ell[static_cast<std::size_t>(i)];
    }
};

// Expansion by iterated linear-factor multiplication; the product is the
// definition, no closed form is used.
inline EulerCoefficients expand_euler_product(int k) {
    if (k < 1) throw std::invalid_argument("expand_euler_product: k must be >= 1");
    static const VarSetPtr xy = make_vars({"x", "y"});
    Polynomial prod = Polynomial::constant(xy, Rational(1));
    const Polynomial x = Polynomial::variable(xy, 0), y = Polynomial::variable(xy, 1);
    for (int j = 0; j <= k; ++j) prod = prod * (Rational(j) * x + Rational(k - j) * y);

    EulerCoefficients out;
    out.k = k;
    out.ell.reserve(k);
    for (int i = 0; i < k; ++i)
        out.ell.push_back(prod.coefficient(Monomial{{k - i, i + 1}}));
    if (prod.term_count() != static_cast<std::size_t>(k))
        throw std::logic_error("expand_euler_product: unexpected monomial support");
    for (int i = 0; i < k; ++i)
        if (out.ell[i] != out.ell[k - 1 - i])
            throw std::logic_error("expand_euler_product: symmetry violated");
    return out;
}

// cached ell_i^k lookup
inline Rational ell(int k, long i) {
    static std::mutex mu;
    static std::map<int, EulerCoefficients> table;
    std::lock_guard<std::mutex> lock(mu);
    auto it = table.find(k);
    if (it == table.end()) it = table.emplace(k, expand_euler_product(k)).first;
    return it->second.at(i);
}

}  // namespace gwcalc
