#include <catch2/catch.hpp>

#include "generators.hpp"
#include "nambu/search.hpp"
#include "nambu/verify.hpp"

using namespace nambu;
using namespace nambu::filippov;

namespace {

/// 4-dimensional ternary bracket [e_i, e_j, e_k] = sign * e_l with l the
/// missing index and sign the parity of (i, j, k, l).
StructureConstants ternary4() {
    StructureConstants s(4, 3);
    s.set({1, 2, 3}, 4, Rational(1));
    s.set({1, 2, 4}, 3, Rational(-1));
    s.set({1, 3, 4}, 2, Rational(1));
    s.set({2, 3, 4}, 1, Rational(-1));
    return s;
}

StructureConstants so3() {
    StructureConstants s(3, 2);
    s.set({1, 2}, 3, Rational(1));
    s.set({2, 3}, 1, Rational(1));
    s.set({1, 3}, 2, Rational(-1));
    return s;
}

Vec e(int i, int dim) { return basis_vector(i, dim); }

StructureConstants random_constants(gen::Rng& rng, int dim, int arity, int entries) {
    StructureConstants s(dim, arity);
    for (int t = 0; t < entries; ++t) {
        auto pick = gen::index_set(rng, dim, arity);
        std::vector<int> tuple(pick.begin(), pick.end());
        s.set(tuple, gen::pick(rng, 1, dim), gen::rational(rng, -2, 2));
    }
    return s;
}

/// The generalized Jacobi identity of the induced bracket on coordinate
/// functions of the linear tensor encoding; the independent route for
/// check_filippov.
bool filippov_via_linear_tensor(const StructureConstants& s) {
    Multivector l = to_linear_multivector(s);
    const int m = s.dim();
    const int n = s.arity();
    auto coord = [&](int i) { return Polynomial::variable(i, m); };
    for (const auto& fpick : combinations(m, n - 1)) {
        std::vector<Polynomial> fs;
        for (int i : fpick) fs.push_back(coord(i + 1));
        for (const auto& gpick : combinations(m, n)) {
            std::vector<Polynomial> gs;
            for (int j : gpick) gs.push_back(coord(j + 1));
            if (!fi_residual(l, nullptr, fs, gs).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("bracket on basis tuples") {
    auto s = ternary4();
    CHECK(s.bracket({e(1, 4), e(2, 4), e(3, 4)}) == e(4, 4));
    CHECK(s.bracket({e(1, 4), e(2, 4), e(4, 4)}) ==
          Vec{Rational(0), Rational(0), Rational(-1), Rational(0)});
    CHECK(is_zero(s.bracket({e(1, 4), e(2, 4), e(2, 4)})));

    StructureConstants sparse(4, 3);
    sparse.set({1, 2, 3}, 1, Rational(1));
    CHECK(is_zero(sparse.bracket({e(1, 4), e(2, 4), e(4, 4)})));
    CHECK_THROWS_AS(s.bracket({e(1, 4), e(2, 4)}), std::invalid_argument);
}

TEST_CASE("skew access through the multilinear extension") {
    gen::Rng rng(9101);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_constants(rng, 4, 3, 3);
        std::vector<Vec> vs = {e(1, 4), e(3, 4), e(4, 4)};
        auto base = s.bracket(vs);
        std::swap(vs[0], vs[2]);
        auto swapped = s.bracket(vs);
        for (std::size_t k = 0; k < base.size(); ++k) CHECK(swapped[k] == -base[k]);
    }
}

TEST_CASE("check_filippov fixtures") {
    CHECK(check_filippov(ternary4()).passed);
    CHECK(check_filippov(so3()).passed);
    CHECK(check_filippov(StructureConstants(4, 3)).passed);

    // top arity: a single bracket [e_1..e_m] = v always satisfies the identity
    gen::Rng rng(9102);
    for (int trial = 0; trial < 10; ++trial) {
        StructureConstants s(3, 3);
        for (int k = 1; k <= 3; ++k) s.set({1, 2, 3}, k, gen::rational(rng));
        CHECK(check_filippov(s).passed);
    }

    // [e1,e2,e3] = e1, [e1,e2,e4] = e4 violates the identity
    StructureConstants bad(4, 3);
    bad.set({1, 2, 3}, 1, Rational(1));
    bad.set({1, 2, 4}, 4, Rational(1));
    auto verdict = check_filippov(bad);
    REQUIRE_FALSE(verdict.passed);
    REQUIRE(verdict.witness.has_value());
    auto residual = std::get<Polynomial>(verdict.witness->residual);
    CHECK_FALSE(residual.is_zero());
}

TEST_CASE("filippov witness replays through the linear tensor encoding") {
    StructureConstants bad(4, 3);
    bad.set({1, 2, 3}, 1, Rational(1));
    bad.set({1, 2, 4}, 4, Rational(1));
    auto verdict = check_filippov(bad);
    REQUIRE_FALSE(verdict.passed);
    const auto& w = *verdict.witness;
    auto l = to_linear_multivector(bad);
    auto replay = check_fi_direct(l, nullptr, w.fs, w.gs);
    REQUIRE_FALSE(replay.passed);
    CHECK(std::get<Polynomial>(replay.witness->residual) == std::get<Polynomial>(w.residual));
}

TEST_CASE("contract_algebra") {
    auto s = ternary4();
    auto c4 = contract_algebra(s, e(4, 4));
    // hand-derived so(3)-type constants: [e1,e2] = -e3, [e1,e3] = e2, [e2,e3] = -e1
    StructureConstants expected(4, 2);
    expected.set({1, 2}, 3, Rational(-1));
    expected.set({1, 3}, 2, Rational(1));
    expected.set({2, 3}, 1, Rational(-1));
    CHECK(c4 == expected);
    CHECK(check_filippov(c4).passed);

    Vec zero(4, Rational(0));
    CHECK(contract_algebra(s, zero).is_zero());
    CHECK_THROWS_AS(contract_algebra(so3(), e(1, 3)), std::invalid_argument);

    // double contraction agrees with fixing two arguments directly
    gen::Rng rng(9103);
    for (int trial = 0; trial < 10; ++trial) {
        auto r = random_constants(rng, 4, 3, 3);
        Vec x = {gen::rational(rng), gen::rational(rng), gen::rational(rng), gen::rational(rng)};
        Vec y = {gen::rational(rng), gen::rational(rng), gen::rational(rng), gen::rational(rng)};
        auto rx = contract_algebra(r, x);
        for (int a = 1; a <= 4; ++a) {
            Vec lhs = rx.bracket({y, e(a, 4)});
            Vec rhs = r.bracket({x, y, e(a, 4)});
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("to_linear_multivector") {
    auto l = to_linear_multivector(so3());
    // x3*d1^d2 + x1*d2^d3 + x2*d3^d1, canonically -x2 on (1,3)
    Multivector expected(3, 2);
    expected.set_term({1, 2}, Polynomial::variable(3, 3));
    expected.set_term({1, 3}, -Polynomial::variable(2, 3));
    expected.set_term({2, 3}, Polynomial::variable(1, 3));
    CHECK(l == expected);
    CHECK(to_linear_multivector(StructureConstants(3, 3)).is_zero());
    CHECK(from_linear_multivector(l) == so3());

    gen::Rng rng(9104);
    for (int trial = 0; trial < 15; ++trial) {
        auto s = random_constants(rng, 4, 3, 4);
        CHECK(from_linear_multivector(to_linear_multivector(s)) == s);
    }
}

TEST_CASE("check_filippov agrees with the linear tensor route") {
    CHECK(filippov_via_linear_tensor(ternary4()));
    gen::Rng rng(9105);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = gen::pick(rng, 3, 4);
        auto s = random_constants(rng, dim, 3, gen::pick(rng, 1, 3));
        CHECK(check_filippov(s).passed == filippov_via_linear_tensor(s));
    }
}

TEST_CASE("check_problem_hypothesis") {
    CHECK(check_problem_hypothesis(ternary4()).passed);
    CHECK(check_problem_hypothesis(StructureConstants(4, 3)).passed);
    CHECK_THROWS_AS(check_problem_hypothesis(so3()), std::invalid_argument);

    // direct sum of two copies of the ternary algebra: Filippov, hypothesis
    // holds, and the linear tensor is not decomposable
    StructureConstants sum(8, 3);
    const auto t4 = ternary4();
    for (auto& [key, value] : t4.entries()) {
        sum.set(key.first, key.second, value);
        std::vector<int> shifted;
        for (int i : key.first) shifted.push_back(i + 4);
        sum.set(shifted, key.second + 4, value);
    }
    CHECK(check_filippov(sum).passed);
    CHECK(check_problem_hypothesis(sum).passed);
    CHECK_FALSE(check_decomposable(to_linear_multivector(sum)).passed);
}

TEST_CASE("hypothesis holds for every Filippov fixture") {
    std::vector<StructureConstants> fixtures = {ternary4(), StructureConstants(4, 3)};
    gen::Rng rng(9106);
    for (int trial = 0; trial < 10; ++trial) {
        StructureConstants s(3, 3);
        for (int k = 1; k <= 3; ++k) s.set({1, 2, 3}, k, gen::rational(rng));
        fixtures.push_back(s);
    }
    for (const auto& s : fixtures) {
        REQUIRE(check_filippov(s).passed);
        CHECK(check_problem_hypothesis(s).passed);
    }
}

TEST_CASE("exhaustive search over the (3,3) space") {
    SearchConfig cfg;
    cfg.dim = 3;
    cfg.arity = 3;
    auto report = search(cfg);
    CHECK(report.total_assignments == 27);
    CHECK(report.enumerated == 27);
    CHECK(report.hypothesis_pass == 27);
    CHECK(report.filippov_pass == 27);
    CHECK(report.counterexamples.empty());

    // byte-identical on re-run
    CHECK(search(cfg).str() == report.str());
}

TEST_CASE("search slices and guards") {
    SearchConfig cfg;
    cfg.dim = 4;
    cfg.arity = 3;
    cfg.coefficients = {Rational(0), Rational(1)};
    cfg.range_end = 512;
    auto report = search(cfg);
    CHECK(report.total_assignments == 65536);
    CHECK(report.enumerated == 512);
    CHECK(report.hypothesis_pass == report.filippov_pass + report.counterexamples.size());
    CHECK(search(cfg).str() == report.str());

    // parallel slice merges to the identical report
    SearchConfig par = cfg;
    par.workers = 3;
    CHECK(search(par).str() == report.str());

    SearchConfig guard = cfg;
    guard.range_end = 65536;
    guard.max_enumerated = 1000;
    CHECK_THROWS_AS(search(guard), std::invalid_argument);

    SearchConfig bad = cfg;
    bad.arity = 2;
    CHECK_THROWS_AS(search(bad), std::invalid_argument);
}

TEST_CASE("random search is reproducible by seed") {
    SearchConfig cfg;
    cfg.dim = 4;
    cfg.arity = 3;
    cfg.coefficients = {Rational(-1), Rational(0), Rational(1)};
    cfg.mode = SearchConfig::Mode::Random;
    cfg.samples = 200;
    cfg.seed = 20240817;
    auto r1 = search(cfg);
    auto r2 = search(cfg);
    CHECK(r1.str() == r2.str());
    CHECK(r1.enumerated == 200);
}
