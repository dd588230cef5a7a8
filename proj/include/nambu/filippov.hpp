#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nambu/enumeration.hpp"
#include "nambu/multivector.hpp"
#include "nambu/rational.hpp"
#include "nambu/verdict.hpp"

namespace nambu::filippov {

using Vec = std::vector<Rational>;

/// Skew n-bracket on an m-dimensional vector space, given by structure
/// constants c^k_{i1..in} on strictly increasing basis tuples. Tuples with a
/// repeated index are implicitly zero; values on permuted tuples follow by
/// the permutation sign.
class StructureConstants {
public:
    using Key = std::pair<std::vector<int>, int>;  // (input tuple, output index)

    StructureConstants(int dim, int arity) : dim_(dim), arity_(arity) {
        if (dim < 1 || arity < 1 || arity > dim)
            throw std::invalid_argument("StructureConstants: need 1 <= arity <= dim");
    }

    int dim() const { return dim_; }
    int arity() const { return arity_; }
    const std::map<Key, Rational>& entries() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    void set(const std::vector<int>& tuple, int k, const Rational& value) {
        validate(tuple, k);
        if (value.is_zero()) c_.erase({tuple, k});
        else c_[{tuple, k}] = value;
    }

    Rational get(const std::vector<int>& tuple, int k) const {
        auto it = c_.find({tuple, k});
        return it == c_.end() ? Rational(0) : it->second;
    }

    friend bool operator==(const StructureConstants& a, const StructureConstants& b) {
        return a.dim_ == b.dim_ && a.arity_ == b.arity_ && a.c_ == b.c_;
    }

    /// Multilinear skew extension of the basis brackets to arbitrary vectors:
    /// each stored tuple I contributes c^k_I * det(v_a[i_b]) to coordinate k.
    Vec bracket(const std::vector<Vec>& vs) const {
        if (static_cast<int>(vs.size()) != arity_)
            throw std::invalid_argument("bracket: arity mismatch");
        for (const auto& v : vs)
            if (static_cast<int>(v.size()) != dim_)
                throw std::invalid_argument("bracket: vector dimension mismatch");
        Vec out(static_cast<std::size_t>(dim_), Rational(0));
        std::vector<int> cur_tuple;
        Rational det;
        for (auto it = c_.begin(); it != c_.end(); ++it) {
            const auto& [key, coeff] = *it;
            if (key.first != cur_tuple) {
                cur_tuple = key.first;
                det = minor_det(vs, cur_tuple);
            }
            if (!det.is_zero())
                out[static_cast<std::size_t>(key.second - 1)] += coeff * det;
        }
        return out;
    }

    std::string str() const {
        std::ostringstream os;
        for (auto& [key, value] : c_) {
            os << "c[" << key.second << ";";
            for (std::size_t t = 0; t < key.first.size(); ++t)
                os << (t ? "," : " ") << key.first[t];
            os << "] = " << value.str() << "\n";
        }
        return os.str();
    }

private:
    void validate(const std::vector<int>& tuple, int k) const {
        if (static_cast<int>(tuple.size()) != arity_)
            throw std::invalid_argument("StructureConstants: tuple length != arity");
        if (k < 1 || k > dim_)
            throw std::out_of_range("StructureConstants: output index out of range");
        for (std::size_t t = 0; t < tuple.size(); ++t) {
            if (tuple[t] < 1 || tuple[t] > dim_)
                throw std::out_of_range("StructureConstants: input index out of range");
            if (t > 0 && tuple[t] <= tuple[t - 1])
                throw std::invalid_argument(
                    "StructureConstants: tuple must be strictly increasing");
        }
    }

    Rational minor_det(const std::vector<Vec>& vs, const std::vector<int>& tuple) const {
        std::vector<Vec> m;
        m.reserve(vs.size());
        for (const auto& v : vs) {
            Vec row;
            row.reserve(tuple.size());
            for (int i : tuple) row.push_back(v[static_cast<std::size_t>(i - 1)]);
            m.push_back(std::move(row));
        }
        return det(std::move(m));
    }

    // Laplace expansion along the first column; arity stays desk-scale small.
    static Rational det(std::vector<Vec> m) {
        const std::size_t n = m.size();
        if (n == 0) return Rational(1);
        if (n == 1) return m[0][0];
        Rational acc(0);
        for (std::size_t r = 0; r < n; ++r) {
            if (m[r][0].is_zero()) continue;
            std::vector<Vec> minor;
            minor.reserve(n - 1);
            for (std::size_t rr = 0; rr < n; ++rr) {
                if (rr == r) continue;
                minor.emplace_back(m[rr].begin() + 1, m[rr].end());
            }
            Rational cof = m[r][0] * det(std::move(minor));
            acc += r % 2 == 0 ? cof : -cof;
        }
        return acc;
    }

    int dim_;
    int arity_;
    std::map<Key, Rational> c_;
};

inline Vec basis_vector(int i, int dim) {
    Vec v(static_cast<std::size_t>(dim), Rational(0));
    v[static_cast<std::size_t>(i - 1)] = Rational(1);
    return v;
}

inline bool is_zero(const Vec& v) {
    for (const auto& c : v)
        if (!c.is_zero()) return false;
    return true;
}

namespace detail {

/// Linear coordinate polynomial encoding a vector: e_k <-> x_k. Used to make
/// structure-constant witnesses printable and replayable in the same syntax
/// as tensor inputs.
inline Polynomial encode(const Vec& v) {
    Polynomial p(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            p.add_term(Monomial::var(static_cast<int>(i + 1)), v[i]);
    return p;
}

}  // namespace detail

/// Generalized Jacobi identity over all strictly increasing basis tuples
/// (f-group of size n-1, g-group of size n). Multilinearity plus the skew
/// symmetry of both groups extends a pass to the whole space.
inline Verdict check_filippov(const StructureConstants& s) {
    const int m = s.dim();
    const int n = s.arity();
    if (s.is_zero()) return Verdict::pass();

    auto fcombos = combinations(m, n - 1);
    auto gcombos = combinations(m, n);
    for (const auto& fpick : fcombos) {
        std::vector<Vec> fs;
        for (int i : fpick) fs.push_back(basis_vector(i + 1, m));
        for (const auto& gpick : gcombos) {
            std::vector<Vec> gs;
            for (int j : gpick) gs.push_back(basis_vector(j + 1, m));

            std::vector<Vec> outer = fs;
            outer.push_back(s.bracket(gs));
            Vec residual = s.bracket(outer);
            for (std::size_t i = 0; i < gs.size(); ++i) {
                std::vector<Vec> fg = fs;
                fg.push_back(gs[i]);
                std::vector<Vec> term = gs;
                term[i] = s.bracket(fg);
                Vec rhs = s.bracket(term);
                for (std::size_t k = 0; k < residual.size(); ++k) residual[k] -= rhs[k];
            }
            if (!is_zero(residual)) {
                Witness w;
                for (const auto& f : fs) w.fs.push_back(detail::encode(f));
                for (const auto& g : gs) w.gs.push_back(detail::encode(g));
                w.residual = detail::encode(residual);
                w.detail = "generalized Jacobi identity fails on this basis tuple";
                return Verdict::fail(std::move(w));
            }
        }
    }
    return Verdict::pass();
}

/// Structure constants of the (n-1)-bracket [v_1..v_{n-1}]_x = [x, v_1, ..].
inline StructureConstants contract_algebra(const StructureConstants& s, const Vec& x) {
    const int m = s.dim();
    const int n = s.arity();
    if (n < 3) throw std::invalid_argument("contract_algebra: arity must be >= 3");
    if (static_cast<int>(x.size()) != m)
        throw std::invalid_argument("contract_algebra: vector dimension mismatch");
    StructureConstants out(m, n - 1);
    for (const auto& pick : combinations(m, n - 1)) {
        std::vector<Vec> args;
        args.push_back(x);
        std::vector<int> tuple;
        for (int i : pick) {
            tuple.push_back(i + 1);
            args.push_back(basis_vector(i + 1, m));
        }
        Vec value = s.bracket(args);
        for (int k = 1; k <= m; ++k) {
            const Rational& v = value[static_cast<std::size_t>(k - 1)];
            if (!v.is_zero()) out.set(tuple, k, v);
        }
    }
    return out;
}

/// Degree-n multivector on m coordinates with coefficient sum_k c^k_I x_k on
/// index set I: the linear-tensor encoding of the bracket.
inline Multivector to_linear_multivector(const StructureConstants& s) {
    Multivector l(s.dim(), s.arity());
    for (auto& [key, value] : s.entries()) {
        IndexSet idx(key.first.begin(), key.first.end());
        l.add_term(idx, Polynomial::term(value, Monomial::var(key.second), s.dim()));
    }
    return l;
}

/// Round trip of the linear-tensor encoding.
inline StructureConstants from_linear_multivector(const Multivector& l) {
    StructureConstants s(l.dimension(), l.degree());
    for (auto& [idx, coeff] : l.terms()) {
        std::vector<int> tuple(idx.begin(), idx.end());
        for (auto& [mono, value] : coeff.terms()) {
            if (mono.total_degree() != 1)
                throw std::invalid_argument("from_linear_multivector: coefficient not linear");
            s.set(tuple, mono.factors().front().first, value);
        }
    }
    return s;
}

/// Does every contraction of the bracket give a Filippov (n-1)-bracket?
/// The Jacobi residual of the contracted bracket is a quadratic form in the
/// contraction element x, so vanishing on {e_i} and {e_i + e_j} extends to
/// all of V by polarization.
inline Verdict check_problem_hypothesis(const StructureConstants& s) {
    const int m = s.dim();
    if (s.arity() < 3)
        throw std::invalid_argument("check_problem_hypothesis: arity must be >= 3");
    auto try_element = [&](const Vec& x) -> std::optional<Witness> {
        Verdict sub = check_filippov(contract_algebra(s, x));
        if (sub.passed) return std::nullopt;
        Witness w = sub.witness ? *sub.witness : Witness{};
        w.fs.insert(w.fs.begin(), detail::encode(x));
        w.detail = "contraction by the leading element is not Filippov";
        return w;
    };
    for (int i = 1; i <= m; ++i)
        if (auto w = try_element(basis_vector(i, m))) return Verdict::fail(std::move(*w));
    for (int i = 1; i <= m; ++i) {
        for (int j = i + 1; j <= m; ++j) {
            Vec x = basis_vector(i, m);
            x[static_cast<std::size_t>(j - 1)] = Rational(1);
            if (auto w = try_element(x)) return Verdict::fail(std::move(*w));
        }
    }
    return Verdict::pass();
}

}  // namespace nambu::filippov
