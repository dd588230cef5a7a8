#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nambu/polynomial.hpp"

namespace nambu {

/// Strictly increasing tuple of coordinate indices naming a basis multivector
/// d_{i1}^...^d_{ik}. The empty tuple is the scalar slot.
using IndexSet = std::vector<int>;

namespace detail {

/// Sorts the concatenation of two strictly increasing tuples. Returns the
/// permutation sign and the merged tuple, or sign 0 on a repeated index.
inline std::pair<int, IndexSet> merge_indices(const IndexSet& a, const IndexSet& b) {
    IndexSet merged;
    merged.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    long inversions = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) return {0, {}};
        if (a[i] < b[j]) {
            merged.push_back(a[i++]);
        } else {
            inversions += static_cast<long>(a.size() - i);  // b[j] jumps the rest of a
            merged.push_back(b[j++]);
        }
    }
    for (; i < a.size(); ++i) merged.push_back(a[i]);
    for (; j < b.size(); ++j) merged.push_back(b[j]);
    return {inversions % 2 == 0 ? 1 : -1, merged};
}

inline IndexSet erase_at(const IndexSet& v, std::size_t pos) {
    IndexSet r;
    r.reserve(v.size() - 1);
    for (std::size_t t = 0; t < v.size(); ++t)
        if (t != pos) r.push_back(v[t]);
    return r;
}

}  // namespace detail

/// Alternating contravariant tensor field of fixed degree k with Polynomial
/// coefficients on a d-dimensional coordinate space. Degree 0 is a bare
/// polynomial; no zero coefficient is stored.
class Multivector {
public:
    Multivector() : dim_(0), degree_(0) {}
    Multivector(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 0 || degree < 0)
            throw std::invalid_argument("Multivector: negative dimension or degree");
    }

    /// Basis multivector d_{i1}^...^d_{ik} for strictly increasing indices.
    static Multivector basis(int dim, const IndexSet& indices) {
        Multivector m(dim, static_cast<int>(indices.size()));
        m.set_term(indices, Polynomial::constant(Rational(1), dim));
        return m;
    }

    static Multivector scalar(const Polynomial& p) {
        Multivector m(p.dimension(), 0);
        if (!p.is_zero()) m.terms_[IndexSet{}] = p;
        return m;
    }

    int dimension() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<IndexSet, Polynomial>& terms() const { return terms_; }

    Polynomial component(const IndexSet& idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Polynomial(dim_) : it->second;
    }

    /// The value of a degree-0 multivector.
    Polynomial as_polynomial() const {
        if (degree_ != 0) throw std::logic_error("as_polynomial: degree is not 0");
        return component(IndexSet{});
    }

    /// Inserts a coefficient on a strictly increasing index tuple.
    void set_term(const IndexSet& idx, const Polynomial& coeff) {
        validate_indices(idx);
        if (coeff.dimension() != dim_)
            throw std::invalid_argument("Multivector: coefficient dimension mismatch");
        if (coeff.is_zero()) terms_.erase(idx);
        else terms_[idx] = coeff;
    }

    /// Adds coeff on an arbitrary index tuple, sorting with permutation sign;
    /// tuples with a repeated index contribute nothing.
    void add_term(const IndexSet& idx, const Polynomial& coeff) {
        if (coeff.dimension() != dim_)
            throw std::invalid_argument("Multivector: coefficient dimension mismatch");
        if (coeff.is_zero()) return;
        auto [s, key] = sort_with_sign(idx);
        if (s == 0) return;
        validate_indices(key);
        auto it = terms_.find(key);
        Polynomial add = s == 1 ? coeff : -coeff;
        if (it == terms_.end()) {
            terms_.emplace(std::move(key), std::move(add));
        } else {
            it->second = it->second + add;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Multivector operator-() const {
        Multivector r(dim_, degree_);
        for (auto& [idx, c] : terms_) r.terms_.emplace(idx, -c);
        return r;
    }

    friend Multivector operator+(const Multivector& a, const Multivector& b) {
        require_compatible(a, b);
        Multivector r = a;
        for (auto& [idx, c] : b.terms_) r.add_term(idx, c);
        return r;
    }

    friend Multivector operator-(const Multivector& a, const Multivector& b) {
        require_compatible(a, b);
        Multivector r = a;
        for (auto& [idx, c] : b.terms_) r.add_term(idx, -c);
        return r;
    }

    /// Coefficient-wise product with a function: f * L.
    Multivector scaled(const Polynomial& f) const {
        Multivector r(dim_, degree_);
        for (auto& [idx, c] : terms_) {
            Polynomial p = c * f;
            if (!p.is_zero()) r.terms_.emplace(idx, p);
        }
        return r;
    }

    Multivector scaled(const Rational& c) const {
        Multivector r(dim_, degree_);
        if (c.is_zero()) return r;
        for (auto& [idx, p] : terms_) r.terms_.emplace(idx, p.scaled(c));
        return r;
    }

    friend bool operator==(const Multivector& a, const Multivector& b) {
        return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Multivector& a, const Multivector& b) { return !(a == b); }

    /// Canonical text form: "(poly)*d1^d2 + ..." with index sets ascending;
    /// single-term coefficients fold their sign into the joining +/-.
    std::string str() const {
        if (degree_ == 0) return as_polynomial().str();
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [idx, c] : terms_) {
            std::string coeff;
            bool neg = false;
            if (c.term_count() == 1) {
                coeff = c.str();
                if (!coeff.empty() && coeff[0] == '-') {
                    neg = true;
                    coeff.erase(coeff.begin());
                }
            } else {
                coeff = "(" + c.str() + ")";
            }
            std::string basis;
            for (int i : idx) {
                if (!basis.empty()) basis += "^";
                basis += "d" + std::to_string(i);
            }
            if (s.empty()) s += neg ? "-" : "";
            else s += neg ? " - " : " + ";
            s += coeff + "*" + basis;
        }
        return s;
    }

private:
    static std::pair<int, IndexSet> sort_with_sign(IndexSet idx) {
        // insertion sort, counting swaps
        long swaps = 0;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            for (std::size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
                std::swap(idx[j], idx[j - 1]);
                ++swaps;
            }
        }
        if (std::adjacent_find(idx.begin(), idx.end()) != idx.end()) return {0, {}};
        return {swaps % 2 == 0 ? 1 : -1, idx};
    }

    void validate_indices(const IndexSet& idx) const {
        if (static_cast<int>(idx.size()) != degree_)
            throw std::invalid_argument("Multivector: index tuple length != degree");
        for (std::size_t t = 0; t < idx.size(); ++t) {
            if (idx[t] < 1 || idx[t] > dim_)
                throw std::out_of_range("Multivector: index out of range");
            if (t > 0 && idx[t] <= idx[t - 1])
                throw std::invalid_argument("Multivector: indices must be strictly increasing");
        }
    }

    static void require_compatible(const Multivector& a, const Multivector& b) {
        if (a.dim_ != b.dim_) throw std::invalid_argument("Multivector: dimension mismatch");
        if (a.degree_ != b.degree_) throw std::invalid_argument("Multivector: degree mismatch");
    }

    int dim_;
    int degree_;
    std::map<IndexSet, Polynomial> terms_;
};

/// Exterior product. Degree adds; the result is 0 whenever an index repeats,
/// in particular when deg(A)+deg(B) > d.
inline Multivector wedge(const Multivector& a, const Multivector& b) {
    if (a.dimension() != b.dimension())
        throw std::invalid_argument("wedge: dimension mismatch");
    Multivector r(a.dimension(), a.degree() + b.degree());
    for (auto& [ia, ca] : a.terms()) {
        for (auto& [ib, cb] : b.terms()) {
            auto [sign, merged] = detail::merge_indices(ia, ib);
            if (sign == 0) continue;
            Polynomial c = ca * cb;
            if (sign < 0) c = -c;
            if (!c.is_zero()) r.add_term(merged, c);
        }
    }
    return r;
}

/// Interior product with df (one contraction step). The component on J picks
/// up sum_i (-1)^(pos-1) * df/dx_i * L_{J+i}, pos the slot of i in J+i.
inline Multivector contract(const Multivector& l, const Polynomial& f) {
    if (l.degree() < 1) throw std::invalid_argument("contract: degree-0 input");
    if (l.dimension() != f.dimension())
        throw std::invalid_argument("contract: dimension mismatch");
    Multivector r(l.dimension(), l.degree() - 1);
    for (auto& [idx, c] : l.terms()) {
        for (std::size_t pos = 0; pos < idx.size(); ++pos) {
            Polynomial df = f.partial(idx[pos]);
            if (df.is_zero()) continue;
            Polynomial piece = c * df;
            if (pos % 2 == 1) piece = -piece;
            r.add_term(detail::erase_at(idx, pos), piece);
        }
    }
    return r;
}

/// Iterated contraction by fs in order, one degree per function.
inline Multivector contract_all(Multivector l, const std::vector<Polynomial>& fs) {
    for (const auto& f : fs) l = contract(l, f);
    return l;
}

/// The n-bracket of functions induced by a degree-n tensor: full contraction
/// down to a scalar. Fully antisymmetric in fs.
inline Polynomial bracket_eval(const Multivector& l, const std::vector<Polynomial>& fs) {
    if (static_cast<int>(fs.size()) != l.degree())
        throw std::invalid_argument("bracket_eval: arity mismatch");
    return contract_all(l, fs).as_polynomial();
}

/// Hamiltonian vector field of an (n-1)-tuple of functions.
inline Multivector hamiltonian(const Multivector& l, const std::vector<Polynomial>& fs) {
    if (static_cast<int>(fs.size()) != l.degree() - 1)
        throw std::invalid_argument("hamiltonian: arity mismatch");
    return contract_all(l, fs);
}

/// Order-zero alternating term built from a degree-(n-1) tensor:
/// s(G)(f_1..f_n) = sum_i (-1)^(i+1) f_i * G_{f_1..^f_i..f_n}.
inline Polynomial s_operator(const Multivector& g, const std::vector<Polynomial>& fs) {
    if (static_cast<int>(fs.size()) != g.degree() + 1)
        throw std::invalid_argument("s_operator: arity mismatch");
    Polynomial acc(g.dimension());
    for (std::size_t i = 0; i < fs.size(); ++i) {
        std::vector<Polynomial> rest;
        rest.reserve(fs.size() - 1);
        for (std::size_t j = 0; j < fs.size(); ++j)
            if (j != i) rest.push_back(fs[j]);
        Polynomial gi = contract_all(g, rest).as_polynomial();
        if (gi.is_zero()) continue;
        Polynomial piece = fs[i] * gi;
        acc = i % 2 == 0 ? acc + piece : acc - piece;
    }
    return acc;
}

/// First-order bracket of a (D, G) tensor pair: D-bracket plus s(G).
inline Polynomial nj_bracket_eval(const Multivector& d, const Multivector& g,
                                  const std::vector<Polynomial>& fs) {
    if (d.degree() != g.degree() + 1)
        throw std::invalid_argument("nj_bracket_eval: deg(D) must be deg(G)+1");
    if (d.dimension() != g.dimension())
        throw std::invalid_argument("nj_bracket_eval: dimension mismatch");
    return bracket_eval(d, fs) + s_operator(g, fs);
}

}  // namespace nambu
