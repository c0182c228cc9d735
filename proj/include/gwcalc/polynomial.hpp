#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gwcalc/rational.hpp"

namespace gwcalc {

// Ordered set of named graded variables. All variables in this engine have
// degree 1; the grading is kept general anyway.
class VariableSet {
public:
    explicit VariableSet(std::vector<std::string> names)
        : VariableSet(std::move(names), {}) {}
    VariableSet(std::vector<std::string> names, std::vector<int> degrees)
        : names_(std::move(names)), degrees_(std::move(degrees)) {
        if (degrees_.empty()) degrees_.assign(names_.size(), 1);
        if (degrees_.size() != names_.size())
            throw std::invalid_argument("VariableSet: names/degrees size mismatch");
        for (int dg : degrees_)
            if (dg < 1) throw std::invalid_argument("VariableSet: degrees must be >= 1");
        for (std::size_t i = 0; i < names_.size(); ++i)
            for (std::size_t j = i + 1; j < names_.size(); ++j)
                if (names_[i] == names_[j])
                    throw std::invalid_argument("VariableSet: duplicate name '" + names_[i] + "'");
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    int degree(std::size_t i) const { return degrees_.at(i); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<int>& degrees() const { return degrees_; }

    std::optional<std::size_t> index_of(std::string_view name) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) return i;
        return std::nullopt;
    }

    friend bool operator==(const VariableSet& a, const VariableSet& b) {
        return a.names_ == b.names_ && a.degrees_ == b.degrees_;
    }

private:
    std::vector<std::string> names_;
    std::vector<int> degrees_;
};

using VarSetPtr = std::shared_ptr<const VariableSet>;

inline VarSetPtr make_vars(std::vector<std::string> names) {
    return std::make_shared<const VariableSet>(std::move(names));
}

inline bool same_vars(const VarSetPtr& a, const VarSetPtr& b) {
    return a == b || (a && b && *a == *b);
}

struct Monomial {
    std::vector<int> exps;

    long degree(const VariableSet& vs) const {
        long d = 0;
        for (std::size_t i = 0; i < exps.size(); ++i) d += static_cast<long>(exps[i]) * vs.degree(i);
        return d;
    }
    bool is_one() const {
        return std::all_of(exps.begin(), exps.end(), [](int e) { return e == 0; });
    }
    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps == b.exps; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return a.exps != b.exps; }
};

// Strict order placing the graded-lex greatest monomial first, so map
// iteration yields the leading term first.
struct GradedLexBefore {
    VarSetPtr vars;
    bool operator()(const Monomial& a, const Monomial& b) const {
        long da = a.degree(*vars), db = b.degree(*vars);
        if (da != db) return da > db;
        return a.exps > b.exps;
    }
};

// Sparse multivariate polynomial over Rational with a fixed variable set.
// Terms are kept in descending graded-lex order; zero coefficients are
// never stored.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GradedLexBefore>;

    explicit Polynomial(VarSetPtr vars) : vars_(std::move(vars)), terms_(GradedLexBefore{vars_}) {
        if (!vars_) throw std::invalid_argument("Polynomial: null variable set");
    }

    static Polynomial zero(VarSetPtr vars) { return Polynomial(std::move(vars)); }
    static Polynomial constant(VarSetPtr vars, Rational c) {
        Polynomial p(std::move(vars));
        p.add_term(Monomial{std::vector<int>(p.vars_->size(), 0)}, std::move(c));
        return p;
    }
    static Polynomial variable(VarSetPtr vars, std::size_t i) {
        Polynomial p(std::move(vars));
        if (i >= p.vars_->size()) throw std::invalid_argument("Polynomial: variable index out of range");
        std::vector<int> e(p.vars_->size(), 0);
        e[i] = 1;
        p.add_term(Monomial{std::move(e)}, Rational(1));
        return p;
    }
    static Polynomial variable(const VarSetPtr& vars, std::string_view name) {
        auto idx = vars->index_of(name);
        if (!idx) throw std::invalid_argument("Polynomial: unknown variable '" + std::string(name) + "'");
        return variable(vars, *idx);
    }
    static Polynomial term(VarSetPtr vars, Monomial m, Rational c) {
        Polynomial p(std::move(vars));
        if (m.exps.size() != p.vars_->size())
            throw std::invalid_argument("Polynomial: monomial arity mismatch");
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    const VarSetPtr& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // max weighted degree over terms; -1 for the zero polynomial
    long degree() const {
        long d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree(*vars_));
        return d;
    }
    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        long d = terms_.begin()->first.degree(*vars_);
        for (const auto& [m, c] : terms_)
            if (m.degree(*vars_) != d) return false;
        return true;
    }

    void add_term(Monomial m, Rational c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(std::move(m), c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(vars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    Polynomial& operator+=(const Polynomial& o) {
        check_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Polynomial& operator-=(const Polynomial& o) {
        check_vars(o);
        for (const auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    Polynomial& operator*=(const Polynomial& o) {
        *this = *this * o;
        return *this;
    }
    Polynomial& operator*=(const Rational& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [m, c] : terms_) c *= s;
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_vars(b);
        Polynomial r(a.vars_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m{ma.exps};
                for (std::size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
                r.add_term(std::move(m), ca * cb);
            }
        return r;
    }
    friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
    friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (!same_vars(a.vars_, b.vars_)) return false;
        if (a.terms_.size() != b.terms_.size()) return false;
        return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin());
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    Polynomial pow(unsigned e) const {
        Polynomial r = constant(vars_, Rational(1));
        for (unsigned i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // canonical text: terms in descending graded-lex order
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational ac = c.abs();
            if (first) {
                if (c.sign() < 0) out += "-";
                first = false;
            } else {
                out += c.sign() < 0 ? " - " : " + ";
            }
            std::string mono;
            for (std::size_t i = 0; i < m.exps.size(); ++i) {
                if (m.exps[i] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += vars_->name(i);
                if (m.exps[i] > 1) mono += "^" + std::to_string(m.exps[i]);
            }
            if (mono.empty()) {
                out += ac.str();
            } else {
                if (ac != Rational(1)) out += ac.str() + "*";
                out += mono;
            }
        }
        return out;
    }

private:
    void check_vars(const Polynomial& o) const {
        if (!same_vars(vars_, o.vars_))
            throw std::invalid_argument("Polynomial: mismatched variable sets");
    }

    VarSetPtr vars_;
    TermMap terms_;
};

// Composition p(images): every variable occurring in p must have an image,
// homogeneous of that variable's degree, over a common target set.
inline Polynomial substitute(const Polynomial& p,
                             const std::vector<std::optional<Polynomial>>& images,
                             const VarSetPtr& target) {
    const VariableSet& src = *p.vars();
    if (images.size() != src.size())
        throw std::invalid_argument("substitute: one image slot per source variable required");
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (!images[i]) continue;
        if (!same_vars(images[i]->vars(), target))
            throw std::invalid_argument("substitute: image not over the target variable set");
        if (!images[i]->is_homogeneous() ||
            (!images[i]->is_zero() && images[i]->degree() != src.degree(i)))
            throw std::invalid_argument("substitute: image of '" + src.name(i) +
                                        "' is not homogeneous of degree " +
                                        std::to_string(src.degree(i)));
    }
    // per-variable power caches
    std::vector<std::vector<Polynomial>> pows(src.size());
    Polynomial out(target);
    for (const auto& [m, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0) continue;
            if (!images[i])
                throw std::invalid_argument("substitute: missing image for '" + src.name(i) + "'");
            auto& cache = pows[i];
            if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
            while (static_cast<int>(cache.size()) <= m.exps[i])
                cache.push_back(cache.back() * *images[i]);
            term = term * cache[m.exps[i]];
        }
        out += term;
    }
    return out;
}

// map-by-name convenience overload
inline Polynomial substitute(const Polynomial& p,
                             const std::map<std::string, Polynomial>& images,
                             const VarSetPtr& target) {
    std::vector<std::optional<Polynomial>> v(p.vars()->size());
    for (const auto& [name, img] : images) {
        auto idx = p.vars()->index_of(name);
        if (!idx) throw std::invalid_argument("substitute: '" + name + "' is not a source variable");
        v[*idx] = img;
    }
    return substitute(p, v, target);
}

// sum_{i=0}^{n} A^i B^{n-i}; satisfies (A-B) * pdq(A,B,n) = A^{n+1} - B^{n+1}
inline Polynomial power_difference_quotient(const Polynomial& a, const Polynomial& b, long n) {
    if (n < 0) throw std::invalid_argument("power_difference_quotient: n must be >= 0");
    if (!same_vars(a.vars(), b.vars()))
        throw std::invalid_argument("power_difference_quotient: mismatched variable sets");
    Polynomial out = Polynomial::zero(a.vars());
    Polynomial apow = Polynomial::constant(a.vars(), Rational(1));
    std::vector<Polynomial> bpows{Polynomial::constant(b.vars(), Rational(1))};
    for (long i = 1; i <= n; ++i) bpows.push_back(bpows.back() * b);
    for (long i = 0; i <= n; ++i) {
        out += apow * bpows[n - i];
        if (i < n) apow = apow * a;
    }
    return out;
}

}  // namespace gwcalc
