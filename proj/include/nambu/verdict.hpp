#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "nambu/multivector.hpp"
#include "nambu/polynomial.hpp"

namespace nambu {

/// How an enumeration-based check explores its argument space.
struct CheckConfig {
    enum class Mode { Exhaustive, Randomized };

    int max_degree = 2;  // >= 2 keeps exhaustive mode a complete decision procedure
    Mode mode = Mode::Exhaustive;
    std::uint64_t samples = 0;  // randomized mode only
    std::uint64_t seed = 0;     // recorded for reproducibility
    int workers = 1;

    static CheckConfig randomized(std::uint64_t samples, std::uint64_t seed) {
        CheckConfig c;
        c.mode = Mode::Randomized;
        c.samples = samples;
        c.seed = seed;
        return c;
    }
};

/// Reproducible evidence for a failed check: the violating argument tuple
/// (split into the two bracket groups when the identity has two) and the
/// nonzero residual it produces.
struct Witness {
    std::vector<Polynomial> fs;
    std::vector<Polynomial> gs;
    std::variant<Polynomial, Multivector> residual;
    std::string detail;

    std::vector<Polynomial> argument_tuple() const {
        std::vector<Polynomial> all = fs;
        all.insert(all.end(), gs.begin(), gs.end());
        return all;
    }

    bool residual_is_zero() const {
        if (std::holds_alternative<Polynomial>(residual))
            return std::get<Polynomial>(residual).is_zero();
        return std::get<Multivector>(residual).is_zero();
    }

    std::string residual_str() const {
        if (std::holds_alternative<Polynomial>(residual))
            return std::get<Polynomial>(residual).str();
        return std::get<Multivector>(residual).str();
    }
};

struct Verdict {
    bool passed = true;
    std::optional<Witness> witness;

    static Verdict pass() { return Verdict{}; }
    static Verdict fail(Witness w) { return Verdict{false, std::move(w)}; }
    explicit operator bool() const { return passed; }
};

namespace detail {

/// Evaluates fn over [0, count) and returns the failure with the smallest
/// index, or nullopt. Work is handed out through an atomic cursor; a thread
/// stops once every remaining index exceeds the best failure found, so the
/// result is independent of scheduling.
inline std::optional<Witness> first_failure(
    std::size_t count, int workers,
    const std::function<std::optional<Witness>(std::size_t)>& fn) {
    if (workers <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            if (auto w = fn(i)) return w;
        return std::nullopt;
    }

    std::atomic<std::size_t> cursor{0};
    std::atomic<std::size_t> best{count};
    std::vector<std::optional<Witness>> found(static_cast<std::size_t>(workers));
    std::vector<std::size_t> found_at(static_cast<std::size_t>(workers), count);
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t] {
            for (;;) {
                std::size_t i = cursor.fetch_add(1);
                if (i >= count || i > best.load()) return;
                if (auto w = fn(i)) {
                    if (i < found_at[static_cast<std::size_t>(t)]) {
                        found_at[static_cast<std::size_t>(t)] = i;
                        found[static_cast<std::size_t>(t)] = std::move(w);
                    }
                    std::size_t cur = best.load();
                    while (i < cur && !best.compare_exchange_weak(cur, i)) {}
                }
            }
        });
    }
    for (auto& th : pool) th.join();

    std::optional<Witness> result;
    std::size_t at = count;
    for (int t = 0; t < workers; ++t) {
        if (found[static_cast<std::size_t>(t)] && found_at[static_cast<std::size_t>(t)] < at) {
            at = found_at[static_cast<std::size_t>(t)];
            result = found[static_cast<std::size_t>(t)];
        }
    }
    return result;
}

}  // namespace detail

}  // namespace nambu
