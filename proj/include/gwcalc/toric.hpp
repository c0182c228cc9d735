#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gwcalc/matrix.hpp"
#include "gwcalc/polynomial.hpp"
#include "gwcalc/rational.hpp"

namespace gwcalc {

// 1-skeleton of the fan Sigma_{N,d}: labeled ray columns v_{i,j}
// (0<=i<=d, 1<=j<=N) followed by u_k (1<=k<=d-1).
struct FanSkeleton {
    int N = 0, d = 0;
    std::size_t lattice_rank = 0;  // (d+1)(N-1) + (d-1)
    IntMatrix rays;                // lattice_rank x num_rays, columns are rays
    std::vector<std::string> labels;

    std::size_t num_rays() const { return rays.cols(); }
    std::size_t v_index(int i, int j) const {
        return static_cast<std::size_t>(i) * N + (j - 1);
    }
    std::size_t u_index(int k) const {
        return static_cast<std::size_t>(d + 1) * N + (k - 1);
    }
    std::vector<mpz_class> ray(std::size_t idx) const {
        std::vector<mpz_class> v(lattice_rank);
        for (std::size_t r = 0; r < lattice_rank; ++r) v[r] = rays.at(r, idx);
        return v;
    }
};

// Block construction of the ray matrix: p_j columns of the P^{N-1} fan stacked per
// index i, Cartan-like tail columns v'_i on the j = N rays, and -e_k tails
// for the u_k rays.
inline FanSkeleton build_fan_skeleton(int N, int d) {
    if (N < 1 || d < 1) throw std::invalid_argument("build_fan_skeleton: need N >= 1 and d >= 1");
    FanSkeleton s;
    s.N = N;
    s.d = d;
    s.lattice_rank = static_cast<std::size_t>(d + 1) * (N - 1) + (d - 1);
    const std::size_t nrays = static_cast<std::size_t>(d + 1) * N + (d - 1);
    s.rays = IntMatrix(s.lattice_rank, nrays);
    s.labels.resize(nrays);
    const std::size_t tail0 = static_cast<std::size_t>(d + 1) * (N - 1);

    auto tail_vprime = [&](int i, std::size_t col) {
        // v'_i = -e_{i-1} + 2 e_i - e_{i+1} in Z^{d-1}, indices outside
        // [1, d-1] dropped; covers v'_0 = -e_1 and v'_d = -e_{d-1}
        auto put = [&](int m, long val) {
            if (m >= 1 && m <= d - 1) s.rays.at(tail0 + (m - 1), col) += val;
        };
        put(i - 1, -1);
        put(i, 2);
        put(i + 1, -1);
    };

    for (int i = 0; i <= d; ++i) {
        for (int j = 1; j <= N; ++j) {
            std::size_t col = s.v_index(i, j);
            s.labels[col] = "v_{" + std::to_string(i) + "," + std::to_string(j) + "}";
            std::size_t block0 = static_cast<std::size_t>(i) * (N - 1);
            if (j < N) {
                s.rays.at(block0 + (j - 1), col) = 1;  // p_j = e_j
            } else {
                for (int r = 0; r < N - 1; ++r) s.rays.at(block0 + r, col) = -1;  // p_N
                tail_vprime(i, col);
            }
        }
    }
    for (int k = 1; k <= d - 1; ++k) {
        std::size_t col = s.u_index(k);
        s.labels[col] = "u_" + std::to_string(k);
        s.rays.at(tail0 + (k - 1), col) = -1;
    }
    return s;
}

struct PrimitiveCollectionSet {
    std::vector<std::vector<std::size_t>> collections;  // ray column indices

    std::vector<std::vector<std::string>> labeled(const FanSkeleton& s) const {
        std::vector<std::vector<std::string>> out;
        for (const auto& c : collections) {
            std::vector<std::string> row;
            for (std::size_t idx : c) row.push_back(s.labels[idx]);
            out.push_back(std::move(row));
        }
        return out;
    }
};

// Primitive collections derived from the ray sum relations: each relation
// sum_j v_{i,j} = u_{i-1} - 2 u_i + u_{i+1}, brought to one side with
// positive coefficients, has support {v_{i,*}} plus the absorbing u_i.
inline PrimitiveCollectionSet primitive_collections(const FanSkeleton& s) {
    PrimitiveCollectionSet out;
    const std::size_t tail0 = static_cast<std::size_t>(s.d + 1) * (s.N - 1);
    for (int i = 0; i <= s.d; ++i) {
        std::vector<mpz_class> sum(s.lattice_rank, mpz_class(0));
        for (int j = 1; j <= s.N; ++j) {
            std::size_t col = s.v_index(i, j);
            for (std::size_t r = 0; r < s.lattice_rank; ++r) sum[r] += s.rays.at(r, col);
        }
        for (std::size_t r = 0; r < tail0; ++r)
            if (sum[r] != 0) throw std::logic_error("primitive_collections: ray sum has block part");
        std::vector<std::size_t> coll;
        for (int j = 1; j <= s.N; ++j) coll.push_back(s.v_index(i, j));
        for (int m = 1; m <= s.d - 1; ++m) {
            // u_m = -e_m: coefficient of u_m in sum is -sum[tail row m]
            mpz_class c = -sum[tail0 + (m - 1)];
            if (c < 0) {
                if (m != i) throw std::logic_error("primitive_collections: unexpected absorbing ray");
                coll.push_back(s.u_index(m));
            }
        }
        out.collections.push_back(std::move(coll));
    }
    return out;
}

struct ToricIdeals {
    VarSetPtr vars;  // x_{i,j} per v-ray, y_k per u-ray, in ray order
    std::vector<Polynomial> sr_generators;     // one squarefree monomial per collection
    std::vector<Polynomial> linear_relations;  // one per dual lattice basis vector
};

inline VarSetPtr cox_vars(const FanSkeleton& s) {
    std::vector<std::string> names;
    for (int i = 0; i <= s.d; ++i)
        for (int j = 1; j <= s.N; ++j)
            names.push_back("x_{" + std::to_string(i) + "," + std::to_string(j) + "}");
    for (int k = 1; k <= s.d - 1; ++k) names.push_back("y_" + std::to_string(k));
    return make_vars(std::move(names));
}

inline ToricIdeals stanley_reisner_and_linear_ideals(const FanSkeleton& s) {
    ToricIdeals out;
    out.vars = cox_vars(s);
    for (const auto& coll : primitive_collections(s).collections) {
        std::vector<int> e(out.vars->size(), 0);
        for (std::size_t idx : coll) e[idx] = 1;
        out.sr_generators.push_back(Polynomial::term(out.vars, Monomial{std::move(e)}, Rational(1)));
    }
    for (std::size_t r = 0; r < s.lattice_rank; ++r) {
        Polynomial rel(out.vars);
        for (std::size_t c = 0; c < s.num_rays(); ++c) {
            const mpz_class& v = s.rays.at(r, c);
            if (v != 0) rel += Rational(v) * Polynomial::variable(out.vars, c);
        }
        out.linear_relations.push_back(std::move(rel));
    }
    return out;
}

struct ClassGroupReport {
    long rank = 0;                          // free rank of the divisor class group
    std::vector<mpz_class> torsion;         // invariant factors > 1 (expected none)
    std::vector<mpz_class> snf_diagonal;    // nonzero invariant factors
    std::vector<std::vector<long>> weights; // per ray: exponents over lambda_0..lambda_d
};

// Divisor class group via Smith normal form of the dual-pairing matrix, and
// the torus weights of the homogeneous coordinates in the lambda basis
// (classes of the rays v_{i,N}).
inline ClassGroupReport class_group_and_weights(const FanSkeleton& s) {
    ClassGroupReport out;
    IntMatrix pairing = s.rays.transposed();  // num_rays x lattice_rank, rows = rays
    auto snf = smith_normal_form(pairing);
    const std::size_t nmin = pairing.rows() < pairing.cols() ? pairing.rows() : pairing.cols();
    std::size_t mat_rank = 0;
    for (std::size_t t = 0; t < nmin; ++t) {
        if (snf.D.at(t, t) == 0) continue;
        ++mat_rank;
        out.snf_diagonal.push_back(snf.D.at(t, t));
        if (snf.D.at(t, t) > 1) out.torsion.push_back(snf.D.at(t, t));
    }
    out.rank = static_cast<long>(s.num_rays() - mat_rank);

    for (int i = 0; i <= s.d; ++i)
        for (int j = 1; j <= s.N; ++j) {
            std::vector<long> w(s.d + 1, 0);
            w[i] = 1;
            out.weights.push_back(std::move(w));
        }
    for (int k = 1; k <= s.d - 1; ++k) {
        std::vector<long> w(s.d + 1, 0);
        w[k - 1] = -1;
        w[k] = 2;
        w[k + 1] = -1;
        out.weights.push_back(std::move(w));
    }

    // certify the weight table: e_ray - sum_i w_i e_{v_{i,N}} must lie in the
    // column space of the pairing matrix (the relation lattice)
    const std::size_t nr = s.num_rays();
    RatMatrix aug(nr, s.lattice_rank + nr);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < s.lattice_rank; ++j) aug.at(i, j) = Rational(pairing.at(i, j));
    for (std::size_t rayi = 0; rayi < nr; ++rayi) {
        std::size_t col = s.lattice_rank + rayi;
        aug.at(rayi, col) += Rational(1);
        for (int i = 0; i <= s.d; ++i)
            aug.at(s.v_index(i, s.N), col) -= Rational(out.weights[rayi][i]);
    }
    auto red = rational_row_reduce(aug);
    for (std::size_t c : red.pivot_cols)
        if (c >= s.lattice_rank)
            throw std::logic_error("class_group_and_weights: weight table certificate failed");
    return out;
}

struct PresentationReport {
    VarSetPtr h_vars;  // H_0..H_d
    // every Cox variable with its image after eliminating I(Sigma)
    std::vector<std::pair<std::string, Polynomial>> identifications;
    std::vector<Polynomial> relations;  // SR generators in H variables, monic, graded-lex
    ClassGroupReport class_group;
};

enum class ElimOrder { forward, reverse };

// Chow presentation of the quasimap space by honest elimination of the linear ideal:
// row-reduce the linear forms with the kept variables x_{l,N} ordered last,
// read off the images of the eliminated variables, rename x_{l,N} -> H_l and
// rewrite the Stanley-Reisner generators.
inline PresentationReport chow_presentation(int N, int d, ElimOrder order = ElimOrder::forward) {
    FanSkeleton s = build_fan_skeleton(N, d);
    ToricIdeals ideals = stanley_reisner_and_linear_ideals(s);
    const std::size_t nv = ideals.vars->size();

    std::vector<std::size_t> kept;  // x_{l,N}, l = 0..d
    for (int l = 0; l <= d; ++l) kept.push_back(s.v_index(l, N));
    std::vector<bool> is_kept(nv, false);
    for (std::size_t kv : kept) is_kept[kv] = true;
    std::vector<std::size_t> col_to_var;
    for (std::size_t v = 0; v < nv; ++v)
        if (!is_kept[v]) col_to_var.push_back(v);
    if (order == ElimOrder::reverse)
        std::reverse(col_to_var.begin(), col_to_var.end());
    const std::size_t n_elim = col_to_var.size();
    for (std::size_t kv : kept) col_to_var.push_back(kv);

    std::vector<std::size_t> var_to_col(nv);
    for (std::size_t c = 0; c < nv; ++c) var_to_col[col_to_var[c]] = c;

    RatMatrix lin(ideals.linear_relations.size(), nv);
    for (std::size_t r = 0; r < ideals.linear_relations.size(); ++r)
        for (const auto& [m, c] : ideals.linear_relations[r].terms())
            for (std::size_t v = 0; v < nv; ++v)
                if (m.exps[v] == 1) lin.at(r, var_to_col[v]) = c;
    auto red = rational_row_reduce(lin);
    if (red.rank != n_elim)
        throw std::logic_error("chow_presentation: linear ideal does not eliminate the expected variables");
    for (std::size_t c : red.pivot_cols)
        if (c >= n_elim) throw std::logic_error("chow_presentation: pivot on a kept variable");

    PresentationReport out;
    std::vector<std::string> hnames;
    for (int l = 0; l <= d; ++l) hnames.push_back("H_" + std::to_string(l));
    out.h_vars = make_vars(std::move(hnames));

    std::vector<std::optional<Polynomial>> images(nv);
    for (int l = 0; l <= d; ++l)
        images[s.v_index(l, N)] = Polynomial::variable(out.h_vars, static_cast<std::size_t>(l));
    for (std::size_t r = 0; r < red.rank; ++r) {
        std::size_t pc = red.pivot_cols[r];
        Polynomial img(out.h_vars);
        for (std::size_t l = 0; l <= static_cast<std::size_t>(d); ++l) {
            const Rational& coef = red.rref.at(r, n_elim + l);
            if (!coef.is_zero()) img -= coef * Polynomial::variable(out.h_vars, l);
        }
        images[col_to_var[pc]] = std::move(img);
    }
    for (std::size_t v = 0; v < nv; ++v)
        out.identifications.emplace_back(ideals.vars->name(v), *images[v]);

    for (const auto& g : ideals.sr_generators) {
        Polynomial rel = substitute(g, images, out.h_vars);
        if (rel.is_zero()) throw std::logic_error("chow_presentation: SR generator collapsed to zero");
        Rational lead = rel.terms().begin()->second;
        rel *= Rational(1) / lead;
        out.relations.push_back(std::move(rel));
    }
    out.class_group = class_group_and_weights(s);
    return out;
}

}  // namespace gwcalc
