#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gwcalc/matrix.hpp"
#include "gwcalc/polynomial.hpp"
#include "gwcalc/rational.hpp"

namespace gwcalc {

// Homogeneous presentation of a graded quotient ring.
class GradedPresentation {
public:
    GradedPresentation(VarSetPtr vars, std::vector<Polynomial> relations,
                       std::optional<long> top_degree = std::nullopt)
        : vars_(std::move(vars)), relations_(std::move(relations)), top_degree_(top_degree) {
        for (const auto& g : relations_) {
            if (!same_vars(g.vars(), vars_))
                throw std::invalid_argument("GradedPresentation: relation over a foreign variable set");
            if (!g.is_homogeneous())
                throw std::invalid_argument("GradedPresentation: inhomogeneous relation generator");
        }
    }

    const VarSetPtr& vars() const { return vars_; }
    const std::vector<Polynomial>& relations() const { return relations_; }
    std::optional<long> top_degree() const { return top_degree_; }

private:
    VarSetPtr vars_;
    std::vector<Polynomial> relations_;
    std::optional<long> top_degree_;
};

// all monomials of the given weighted degree, in descending graded-lex order
inline std::vector<Monomial> monomials_of_degree(const VariableSet& vs, long degree) {
    std::vector<Monomial> out;
    std::vector<int> cur(vs.size(), 0);
    auto rec = [&](auto&& self, std::size_t pos, long rem) -> void {
        if (pos + 1 == vs.size()) {
            if (rem % vs.degree(pos) == 0) {
                cur[pos] = static_cast<int>(rem / vs.degree(pos));
                out.push_back(Monomial{cur});
                cur[pos] = 0;
            }
            return;
        }
        for (long e = rem / vs.degree(pos); e >= 0; --e) {
            cur[pos] = static_cast<int>(e);
            self(self, pos + 1, rem - e * vs.degree(pos));
        }
        cur[pos] = 0;
    };
    if (vs.size() == 0) {
        if (degree == 0) out.push_back(Monomial{{}});
        return out;
    }
    if (degree >= 0) rec(rec, 0, degree);
    return out;
}

// One degree-D slice of a presented quotient: the ideal's degree piece in
// reduced row echelon form, the induced monomial basis of the quotient, and
// the reduction map expressing every degree-D monomial in that basis.
class DegreePiece {
public:
    using SparseRow = std::map<std::size_t, Rational>;

    long degree = 0;
    std::vector<Monomial> monomials;       // descending graded-lex
    std::vector<Monomial> quotient_basis;  // subset of monomials, same order
    std::size_t ideal_rank = 0;            // = monomials.size() - quotient_basis.size()

    // reduction of monomials[i], as dense coefficients over quotient_basis
    const std::vector<Rational>& reduction(std::size_t mono_index) const { return nf_[mono_index]; }

    // rows of the ideal's degree piece (RREF pivot rows) over the monomial list
    RatMatrix ideal_span_matrix() const {
        RatMatrix m(pivot_rows_.size(), monomials.size());
        for (std::size_t i = 0; i < pivot_rows_.size(); ++i)
            for (const auto& [j, c] : pivot_rows_[i]) m.at(i, j) = c;
        return m;
    }

    std::vector<std::vector<Rational>> nf_;   // [monomial] -> dense over basis
    std::vector<std::ptrdiff_t> basis_pos_;   // [monomial] -> basis index, or -1 for pivots
    std::vector<SparseRow> pivot_rows_;       // in increasing pivot index order
};

// Exact degree-by-degree quotient engine (Macaulay-style): the degree-D
// ideal piece is built as sum_i x_i * (degree D-1 piece) + generators of
// degree D, and row-reduced incrementally. Pieces are memoized; concurrent
// callers see bit-identical results.
class QuotientRing {
public:
    explicit QuotientRing(GradedPresentation pres) : pres_(std::move(pres)) {}

    const GradedPresentation& presentation() const { return pres_; }

    std::shared_ptr<const DegreePiece> degree_piece(long d) const {
        if (d < 0) throw std::invalid_argument("degree_piece: negative degree");
        std::lock_guard<std::mutex> lock(mu_);
        while (static_cast<long>(pieces_.size()) <= d) {
            long next = static_cast<long>(pieces_.size());
            const DegreePiece* prev = next == 0 ? nullptr : pieces_[next - 1].get();
            pieces_.push_back(compute_piece(next, prev));
        }
        return pieces_[d];
    }

    // normal form of a homogeneous polynomial over the quotient basis at its degree
    std::pair<std::shared_ptr<const DegreePiece>, std::vector<Rational>> reduce(
        const Polynomial& p) const {
        if (!same_vars(p.vars(), pres_.vars()))
            throw std::invalid_argument("QuotientRing: polynomial over a foreign variable set");
        if (!p.is_homogeneous()) throw std::invalid_argument("QuotientRing: inhomogeneous input");
        if (p.is_zero()) return {nullptr, {}};
        auto piece = degree_piece(p.degree());
        std::vector<Rational> acc(piece->quotient_basis.size(), Rational(0));
        for (const auto& [m, c] : p.terms()) {
            std::size_t idx = mono_index(*piece, m);
            const auto& nf = piece->reduction(idx);
            for (std::size_t b = 0; b < nf.size(); ++b)
                if (!nf[b].is_zero()) acc[b] += c * nf[b];
        }
        return {piece, std::move(acc)};
    }

    bool contains_in_ideal(const Polynomial& p) const {
        if (p.is_zero()) return true;
        auto [piece, vec] = reduce(p);
        for (const auto& c : vec)
            if (!c.is_zero()) return false;
        return true;
    }

private:
    static std::size_t mono_index(const DegreePiece& piece, const Monomial& m) {
        // within one degree, descending graded-lex is plain descending lex on
        // exponent vectors; binary search accordingly
        std::size_t lo = 0, hi = piece.monomials.size();
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (piece.monomials[mid].exps == m.exps) return mid;
            if (piece.monomials[mid].exps > m.exps)
                lo = mid + 1;
            else
                hi = mid;
        }
        throw std::logic_error("DegreePiece: monomial not found at its degree");
    }

    std::shared_ptr<const DegreePiece> compute_piece(long d, const DegreePiece* prev) const {
        auto piece = std::make_shared<DegreePiece>();
        piece->degree = d;
        piece->monomials = monomials_of_degree(*pres_.vars(), d);
        const std::size_t n_mono = piece->monomials.size();
        std::map<std::vector<int>, std::size_t> index;
        for (std::size_t i = 0; i < n_mono; ++i) index.emplace(piece->monomials[i].exps, i);

        using Row = DegreePiece::SparseRow;
        std::map<std::size_t, Row> pivots;

        auto axpy = [](Row& row, const Rational& c, const Row& src) {
            for (const auto& [e, v] : src) {
                auto it = row.find(e);
                if (it == row.end()) {
                    Rational nv = -(c * v);
                    if (!nv.is_zero()) row.emplace_hint(it, e, std::move(nv));
                } else {
                    it->second -= c * v;
                    if (it->second.is_zero()) row.erase(it);
                }
            }
        };
        auto insert = [&](Row row) {
            // forward-reduce the leading entry (smallest index = greatest monomial)
            while (!row.empty()) {
                std::size_t lead = row.begin()->first;
                auto pit = pivots.find(lead);
                if (pit == pivots.end()) break;
                Rational c = row.begin()->second;
                axpy(row, c, pit->second);
            }
            if (row.empty()) return;
            const std::size_t lead = row.begin()->first;
            // clear remaining pivot-column entries; pivot rows carry no other
            // pivot columns and only indices larger than their lead, so one
            // pass over a snapshot suffices
            std::vector<std::size_t> support;
            support.reserve(row.size());
            for (const auto& [e, v] : row) support.push_back(e);
            for (std::size_t e : support) {
                if (e == lead) continue;
                auto it = row.find(e);
                if (it == row.end()) continue;
                auto pit = pivots.find(e);
                if (pit != pivots.end()) axpy(row, it->second, pit->second);
            }
            Rational inv = Rational(1) / row.begin()->second;
            for (auto& [e, v] : row) v *= inv;
            // back-substitute the new pivot into existing rows
            for (auto& [l2, prow] : pivots) {
                auto it = prow.find(lead);
                if (it != prow.end()) {
                    Rational c = it->second;
                    axpy(prow, c, row);
                }
            }
            pivots.emplace(lead, std::move(row));
        };

        // (a) relation generators of degree exactly d
        for (const auto& g : pres_.relations()) {
            if (g.is_zero() || g.degree() != d) continue;
            Row row;
            for (const auto& [m, c] : g.terms()) row.emplace(index.at(m.exps), c);
            insert(std::move(row));
        }
        // (b) variable shifts of the degree d-1 ideal piece
        if (prev != nullptr) {
            const std::size_t nv = pres_.vars()->size();
            for (std::size_t pi = 0; pi < prev->monomials.size(); ++pi) {
                if (prev->basis_pos_[pi] >= 0) continue;
                const auto& nf = prev->nf_[pi];
                for (std::size_t v = 0; v < nv; ++v) {
                    Row row;
                    std::vector<int> e = prev->monomials[pi].exps;
                    e[v] += 1;
                    row.emplace(index.at(e), Rational(1));
                    for (std::size_t b = 0; b < nf.size(); ++b) {
                        if (nf[b].is_zero()) continue;
                        std::vector<int> be = prev->quotient_basis[b].exps;
                        be[v] += 1;
                        std::size_t idx = index.at(be);
                        auto it = row.find(idx);
                        if (it == row.end()) {
                            row.emplace(idx, -nf[b]);
                        } else {
                            it->second -= nf[b];
                            if (it->second.is_zero()) row.erase(it);
                        }
                    }
                    if (!row.empty()) insert(std::move(row));
                }
            }
        }

        piece->ideal_rank = pivots.size();
        piece->basis_pos_.assign(n_mono, -1);
        for (std::size_t i = 0; i < n_mono; ++i) {
            if (pivots.count(i)) continue;
            piece->basis_pos_[i] = static_cast<std::ptrdiff_t>(piece->quotient_basis.size());
            piece->quotient_basis.push_back(piece->monomials[i]);
        }
        piece->nf_.assign(n_mono, {});
        for (std::size_t i = 0; i < n_mono; ++i) {
            std::vector<Rational> vec(piece->quotient_basis.size(), Rational(0));
            auto pit = pivots.find(i);
            if (pit == pivots.end()) {
                vec[piece->basis_pos_[i]] = Rational(1);
            } else {
                for (const auto& [e, c] : pit->second)
                    if (e != i) vec[piece->basis_pos_[e]] = -c;
            }
            piece->nf_[i] = std::move(vec);
        }
        piece->pivot_rows_.reserve(pivots.size());
        for (auto& [lead, row] : pivots) piece->pivot_rows_.push_back(std::move(row));
        return piece;
    }

    GradedPresentation pres_;
    mutable std::mutex mu_;
    mutable std::vector<std::shared_ptr<const DegreePiece>> pieces_;
};

// Linear functional on the one-dimensional top graded piece, pinned by a
// volume element. One-dimensionality is a theorem-level check of the
// presentation and failing it is a hard error.
class IntegralFunctional {
public:
    IntegralFunctional(std::shared_ptr<const QuotientRing> ring, Polynomial volume,
                       Rational normalization)
        : ring_(std::move(ring)), volume_(std::move(volume)), normalization_(std::move(normalization)) {
        if (volume_.is_zero() || !volume_.is_homogeneous())
            throw std::invalid_argument("IntegralFunctional: volume element must be homogeneous and nonzero");
        top_ = volume_.degree();
        auto piece = ring_->degree_piece(top_);
        if (piece->quotient_basis.size() != 1)
            throw std::domain_error("IntegralFunctional: top-degree quotient piece is not one-dimensional (dim = " +
                                    std::to_string(piece->quotient_basis.size()) + ")");
        auto [p, vec] = ring_->reduce(volume_);
        vol_coeff_ = vec[0];
        if (vol_coeff_.is_zero())
            throw std::domain_error("IntegralFunctional: volume element reduces to zero");
    }

    long top_degree() const { return top_; }
    const std::shared_ptr<const QuotientRing>& ring() const { return ring_; }

    // integral of a homogeneous class; classes of non-top degree give 0
    Rational top_integral(const Polynomial& cls) const {
        if (cls.is_zero()) return Rational(0);
        if (!cls.is_homogeneous()) throw std::invalid_argument("top_integral: inhomogeneous class");
        if (cls.degree() != top_) return Rational(0);
        auto [piece, vec] = ring_->reduce(cls);
        return vec[0] / vol_coeff_ * normalization_;
    }

private:
    std::shared_ptr<const QuotientRing> ring_;
    Polynomial volume_;
    Rational normalization_;
    long top_ = 0;
    Rational vol_coeff_;
};

}  // namespace gwcalc
