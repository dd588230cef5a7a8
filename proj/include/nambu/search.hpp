#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "nambu/filippov.hpp"
#include "nambu/version.hpp"

namespace nambu::filippov {

/// Assignment space for the counterexample search: every structure-constant
/// slot (I, k) -- I a strictly increasing n-tuple, k an output index, ordered
/// by (I, k) -- takes a value from the coefficient set. Assignment indices
/// decode little-endian in that slot order, so a report is reproducible from
/// (space, range) or (space, seed) alone.
struct SearchConfig {
    enum class Mode { Exhaustive, Random };

    int dim = 3;
    int arity = 3;
    std::vector<Rational> coefficients = {Rational(-1), Rational(0), Rational(1)};
    Mode mode = Mode::Exhaustive;
    std::uint64_t samples = 0;      // random mode
    std::uint64_t seed = 0;         // random mode
    std::uint64_t range_begin = 0;  // exhaustive mode slice
    std::uint64_t range_end = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t max_enumerated = 1ull << 24;  // refusal guard
    int workers = 1;
};

struct Counterexample {
    std::uint64_t index;
    StructureConstants constants;
    Witness witness;
};

struct SearchReport {
    SearchConfig config;
    std::uint64_t total_assignments = 0;
    std::uint64_t range_begin = 0, range_end = 0;  // actually enumerated slice
    std::uint64_t enumerated = 0;
    std::uint64_t hypothesis_pass = 0;
    std::uint64_t filippov_pass = 0;
    std::vector<Counterexample> counterexamples;

    /// Canonical, timing-free text body; byte-identical across reruns.
    std::string str() const {
        std::ostringstream os;
        os << "filippov-search report (version " << NAMBU_VERSION << ")\n";
        os << "space: dim=" << config.dim << " arity=" << config.arity << " coefficients={";
        for (std::size_t i = 0; i < config.coefficients.size(); ++i)
            os << (i ? "," : "") << config.coefficients[i].str();
        os << "} total=" << total_assignments << "\n";
        if (config.mode == SearchConfig::Mode::Exhaustive)
            os << "mode: exhaustive range=[" << range_begin << "," << range_end << ")\n";
        else
            os << "mode: random samples=" << config.samples << " seed=" << config.seed << "\n";
        os << "counts: enumerated=" << enumerated << " hypothesis_pass=" << hypothesis_pass
           << " filippov_pass=" << filippov_pass
           << " counterexamples=" << counterexamples.size() << "\n";
        for (const auto& ce : counterexamples) {
            os << "counterexample at assignment " << ce.index << ":\n" << ce.constants.str();
            os << "  violating tuple: fs = [";
            for (std::size_t i = 0; i < ce.witness.fs.size(); ++i)
                os << (i ? ", " : "") << ce.witness.fs[i].str();
            os << "], gs = [";
            for (std::size_t i = 0; i < ce.witness.gs.size(); ++i)
                os << (i ? ", " : "") << ce.witness.gs[i].str();
            os << "], residual = " << ce.witness.residual_str() << "\n";
        }
        return os.str();
    }
};

namespace detail {

inline std::vector<StructureConstants::Key> slot_order(int dim, int arity) {
    std::vector<StructureConstants::Key> slots;
    for (const auto& pick : combinations(dim, arity)) {
        std::vector<int> tuple;
        for (int i : pick) tuple.push_back(i + 1);
        for (int k = 1; k <= dim; ++k) slots.emplace_back(tuple, k);
    }
    return slots;
}

inline StructureConstants decode_assignment(std::uint64_t index,
                                            const std::vector<StructureConstants::Key>& slots,
                                            const SearchConfig& cfg) {
    StructureConstants s(cfg.dim, cfg.arity);
    const std::uint64_t base = cfg.coefficients.size();
    for (const auto& [tuple, k] : slots) {
        const Rational& v = cfg.coefficients[static_cast<std::size_t>(index % base)];
        index /= base;
        if (!v.is_zero()) s.set(tuple, k, v);
    }
    return s;
}

/// |C|^slots, saturating at uint64 max.
inline std::uint64_t space_size(std::uint64_t base, std::size_t slots) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < slots; ++i) {
        if (total > std::numeric_limits<std::uint64_t>::max() / base)
            return std::numeric_limits<std::uint64_t>::max();
        total *= base;
    }
    return total;
}

}  // namespace detail

/// Enumerates (or samples) structure constants with entries in the
/// coefficient set; for every bracket whose contractions are all Filippov it
/// evaluates the full identity, and reports counts plus every
/// hypothesis-satisfying non-Filippov assignment in full. The contract is
/// faithful reporting: a counterexample is listed, never suppressed, and
/// "none found at this scale" is an equally valid outcome.
inline SearchReport search(const SearchConfig& cfg) {
    if (cfg.arity < 3) throw std::invalid_argument("search: arity must be >= 3");
    if (cfg.dim < cfg.arity) throw std::invalid_argument("search: dim must be >= arity");
    if (cfg.coefficients.empty()) throw std::invalid_argument("search: empty coefficient set");
    for (std::size_t i = 1; i < cfg.coefficients.size(); ++i)
        if (!(cfg.coefficients[i - 1] < cfg.coefficients[i]))
            throw std::invalid_argument("search: coefficients must be strictly increasing");

    const auto slots = detail::slot_order(cfg.dim, cfg.arity);
    SearchReport report;
    report.config = cfg;
    report.total_assignments = detail::space_size(cfg.coefficients.size(), slots.size());

    auto visit = [&](std::uint64_t index, SearchReport& into) {
        StructureConstants s = detail::decode_assignment(index, slots, cfg);
        ++into.enumerated;
        if (!check_problem_hypothesis(s).passed) return;
        ++into.hypothesis_pass;
        Verdict full = check_filippov(s);
        if (full.passed) {
            ++into.filippov_pass;
        } else {
            into.counterexamples.push_back(
                {index, std::move(s), full.witness ? *full.witness : Witness{}});
        }
    };

    if (cfg.mode == SearchConfig::Mode::Random) {
        report.range_begin = report.range_end = 0;
        std::mt19937_64 rng(cfg.seed);
        std::uniform_int_distribution<std::uint64_t> pick(0, report.total_assignments - 1);
        if (cfg.samples > cfg.max_enumerated)
            throw std::invalid_argument("search: samples exceed the enumeration guard");
        for (std::uint64_t s = 0; s < cfg.samples; ++s) visit(pick(rng), report);
        return report;
    }

    const std::uint64_t begin = std::min(cfg.range_begin, report.total_assignments);
    const std::uint64_t end = std::min(cfg.range_end, report.total_assignments);
    if (begin > end) throw std::invalid_argument("search: empty range");
    if (end - begin > cfg.max_enumerated)
        throw std::invalid_argument(
            "search: assignment range exceeds the enumeration guard; narrow the range or "
            "raise the guard");
    report.range_begin = begin;
    report.range_end = end;

    const int workers = std::max(1, cfg.workers);
    if (workers == 1 || end - begin < 2) {
        for (std::uint64_t i = begin; i < end; ++i) visit(i, report);
        return report;
    }

    std::vector<SearchReport> parts(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    const std::uint64_t count = end - begin;
    for (int t = 0; t < workers; ++t) {
        const std::uint64_t lo = begin + count * static_cast<std::uint64_t>(t) /
                                             static_cast<std::uint64_t>(workers);
        const std::uint64_t hi = begin + count * static_cast<std::uint64_t>(t + 1) /
                                             static_cast<std::uint64_t>(workers);
        pool.emplace_back([&, t, lo, hi] {
            for (std::uint64_t i = lo; i < hi; ++i) visit(i, parts[static_cast<std::size_t>(t)]);
        });
    }
    for (auto& th : pool) th.join();
    for (auto& part : parts) {  // merge preserves assignment order
        report.enumerated += part.enumerated;
        report.hypothesis_pass += part.hypothesis_pass;
        report.filippov_pass += part.filippov_pass;
        for (auto& ce : part.counterexamples) report.counterexamples.push_back(std::move(ce));
    }
    return report;
}

}  // namespace nambu::filippov
