#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nambu/rational.hpp"

namespace nambu {

/// Power product of coordinate variables, e.g. x1^2*x3.
///
/// Stored sparsely as (index, exponent) pairs with 1-based indices in
/// increasing order; no stored exponent is zero, so the empty list is the
/// constant monomial 1.
class Monomial {
public:
    Monomial() = default;

    static Monomial var(int i, int exp = 1) {
        if (i < 1) throw std::out_of_range("Monomial: variable index must be >= 1");
        if (exp < 1) throw std::invalid_argument("Monomial: exponent must be >= 1");
        Monomial m;
        m.factors_.emplace_back(i, exp);
        return m;
    }

    bool is_constant() const { return factors_.empty(); }

    int total_degree() const {
        int d = 0;
        for (auto& [i, e] : factors_) d += e;
        return d;
    }

    int exponent_of(int i) const {
        for (auto& [j, e] : factors_)
            if (j == i) return e;
        return 0;
    }

    int max_index() const { return factors_.empty() ? 0 : factors_.back().first; }

    Monomial mul(const Monomial& o) const {
        Monomial r;
        auto a = factors_.begin(), ae = factors_.end();
        auto b = o.factors_.begin(), be = o.factors_.end();
        while (a != ae && b != be) {
            if (a->first < b->first) r.factors_.push_back(*a++);
            else if (b->first < a->first) r.factors_.push_back(*b++);
            else {
                r.factors_.emplace_back(a->first, a->second + b->second);
                ++a; ++b;
            }
        }
        r.factors_.insert(r.factors_.end(), a, ae);
        r.factors_.insert(r.factors_.end(), b, be);
        return r;
    }

    /// d/dx_i of this monomial: returns (dropped exponent, reduced monomial),
    /// with exponent 0 meaning the derivative vanishes.
    std::pair<int, Monomial> derivative(int i) const {
        Monomial r;
        int coeff = 0;
        for (auto& [j, e] : factors_) {
            if (j == i) {
                coeff = e;
                if (e > 1) r.factors_.emplace_back(j, e - 1);
            } else {
                r.factors_.emplace_back(j, e);
            }
        }
        if (coeff == 0) return {0, Monomial{}};
        return {coeff, r};
    }

    const std::vector<std::pair<int, int>>& factors() const { return factors_; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors_ == b.factors_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    /// Graded order: total degree first, then the exploded index sequence
    /// lexicographically (x1*x3 before x2^2). Gives a stable term order for
    /// maps, printing and enumeration.
    friend bool operator<(const Monomial& a, const Monomial& b) {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db;
        auto ai = a.factors_.begin(); int ar = ai == a.factors_.end() ? 0 : ai->second;
        auto bi = b.factors_.begin(); int br = bi == b.factors_.end() ? 0 : bi->second;
        while (ai != a.factors_.end() && bi != b.factors_.end()) {
            if (ai->first != bi->first) return ai->first < bi->first;
            int step = std::min(ar, br);
            ar -= step; br -= step;
            if (ar == 0) { ++ai; ar = ai == a.factors_.end() ? 0 : ai->second; }
            if (br == 0) { ++bi; br = bi == b.factors_.end() ? 0 : bi->second; }
        }
        return false;  // equal degree, one exhausted => identical sequences
    }

    std::string str() const {
        if (factors_.empty()) return "1";
        std::string s;
        for (auto& [i, e] : factors_) {
            if (!s.empty()) s += "*";
            s += "x" + std::to_string(i);
            if (e > 1) s += "^" + std::to_string(e);
        }
        return s;
    }

private:
    std::vector<std::pair<int, int>> factors_;
};

/// Sparse multivariate polynomial with exact rational coefficients on a
/// declared d-dimensional coordinate space.
///
/// Canonical form: no zero coefficient is ever stored, and the term map is
/// ordered by the graded monomial order, so equality is structural.
class Polynomial {
public:
    Polynomial() : dim_(0) {}
    explicit Polynomial(int dim) : dim_(check_dim(dim)) {}

    static Polynomial constant(const Rational& c, int dim) {
        Polynomial p(dim);
        if (!c.is_zero()) p.terms_[Monomial{}] = c;
        return p;
    }

    static Polynomial variable(int i, int dim) {
        Polynomial p(dim);
        if (i < 1 || i > dim) throw std::out_of_range("Polynomial: variable index out of range");
        p.terms_[Monomial::var(i)] = Rational(1);
        return p;
    }

    static Polynomial term(const Rational& c, const Monomial& m, int dim) {
        Polynomial p(dim);
        if (m.max_index() > dim)
            throw std::out_of_range("Polynomial: monomial index exceeds dimension");
        if (!c.is_zero()) p.terms_[m] = c;
        return p;
    }

    int dimension() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    int total_degree() const {  // -1 for the zero polynomial
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m.total_degree());
        return d;
    }

    Rational coeff(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Polynomial operator-() const {
        Polynomial r(dim_);
        for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        require_same_dim(a, b);
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, c);
        return r;
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        require_same_dim(a, b);
        Polynomial r = a;
        for (auto& [m, c] : b.terms_) r.add_term(m, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        require_same_dim(a, b);
        Polynomial r(a.dim_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma.mul(mb), ca * cb);
        return r;
    }

    Polynomial scaled(const Rational& c) const {
        Polynomial r(dim_);
        if (c.is_zero()) return r;
        for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial acc = constant(Rational(1), dim_), base = *this;
        for (; e; e >>= 1) {
            if (e & 1) acc = acc * base;
            if (e > 1) base = base * base;
        }
        return acc;
    }

    /// Exact partial derivative with respect to x_i.
    Polynomial partial(int i) const {
        if (i < 1 || i > dim_) throw std::out_of_range("partial: coordinate index out of range");
        Polynomial r(dim_);
        for (auto& [m, c] : terms_) {
            auto [e, dm] = m.derivative(i);
            if (e != 0) r.add_term(dm, c * Rational(e));
        }
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Canonical text form, highest term first: "3*x1^2*x2 - 1/2".
    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [m, c] = *it;
            Rational mag = c.sign() < 0 ? -c : c;
            if (s.empty()) s += c.sign() < 0 ? "-" : "";
            else s += c.sign() < 0 ? " - " : " + ";
            if (m.is_constant()) s += mag.str();
            else if (mag == Rational(1)) s += m.str();
            else s += mag.str() + "*" + m.str();
        }
        return s;
    }

private:
    static int check_dim(int d) {
        if (d < 0) throw std::invalid_argument("Polynomial: negative dimension");
        return d;
    }
    static void require_same_dim(const Polynomial& a, const Polynomial& b) {
        if (a.dim_ != b.dim_)
            throw std::invalid_argument("Polynomial: dimension mismatch");
    }

    int dim_;
    std::map<Monomial, Rational> terms_;
};

}  // namespace nambu
