#pragma once

#include <chrono>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nambu/parse.hpp"
#include "nambu/search.hpp"
#include "nambu/verify.hpp"
#include "nambu/version.hpp"

namespace nambu::cli {

/// A parsed command-line request: raw expression texts plus the check
/// configuration. Inputs are parsed and validated inside run(), so every
/// malformed input surfaces as a usage error (exit 2).
struct Job {
    std::string command;
    int dim = 0;
    int arity = 0;
    std::vector<std::string> tensors;  // --tensor occurrences
    std::string delta, gamma;          // --delta / --gamma
    std::string fields;                // --fields (comma-separated polynomials)
    std::string fs_text, gs_text;      // --fs / --gs
    std::vector<std::string> constants;  // --constants entries
    std::string constants_file;         // --constants-file
    std::string vector_text;            // --vector
    std::string coeffs = "-1,0,1";      // --coeffs (search)
    CheckConfig cfg;
    filippov::SearchConfig search;
    bool json = false;
    bool timing = false;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;  // canonical echoes
    std::string config_echo;
    std::optional<bool> passed;         // checks only
    std::optional<std::string> result;  // computations only
    std::optional<Witness> witness;
    std::string replay;  // copy-paste reproduction of a failure
    std::string search_body;
    long long elapsed_ms = 0;
    std::string version = NAMBU_VERSION;

    std::string text(bool with_timing) const {
        std::ostringstream os;
        os << "command: " << command << "\n";
        for (const auto& [k, v] : inputs) os << k << ": " << v << "\n";
        if (!config_echo.empty()) os << "config: " << config_echo << "\n";
        if (!search_body.empty()) os << search_body;
        if (passed.has_value()) os << "verdict: " << (*passed ? "PASS" : "FAIL") << "\n";
        if (result.has_value()) os << "result: " << *result << "\n";
        if (witness.has_value()) {
            const Witness& w = *witness;
            if (!w.fs.empty()) os << "witness fs: " << join(w.fs) << "\n";
            if (!w.gs.empty()) os << "witness gs: " << join(w.gs) << "\n";
            os << "witness residual: " << w.residual_str() << "\n";
            if (!w.detail.empty()) os << "detail: " << w.detail << "\n";
            if (!replay.empty()) os << "replay: " << replay << "\n";
        }
        if (with_timing) os << "elapsed_ms: " << elapsed_ms << "\n";
        os << "version: " << version << "\n";
        return os.str();
    }

    nlohmann::json to_json(bool with_timing) const {
        nlohmann::json j;
        j["command"] = command;
        nlohmann::json in = nlohmann::json::object();
        for (const auto& [k, v] : inputs) in[k] = v;
        j["inputs"] = in;
        if (!config_echo.empty()) j["config"] = config_echo;
        if (passed.has_value()) j["verdict"] = *passed ? "pass" : "fail";
        if (result.has_value()) j["result"] = *result;
        if (witness.has_value()) {
            const Witness& w = *witness;
            nlohmann::json wj;
            wj["fs"] = poly_strings(w.fs);
            wj["gs"] = poly_strings(w.gs);
            wj["residual"] = w.residual_str();
            wj["detail"] = w.detail;
            if (!replay.empty()) wj["replay"] = replay;
            j["witness"] = wj;
        }
        if (!search_body.empty()) j["search_report"] = search_body;
        if (with_timing) j["elapsed_ms"] = elapsed_ms;
        j["version"] = version;
        return j;
    }

private:
    static std::string join(const std::vector<Polynomial>& ps) {
        std::string s = "[";
        for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].str();
        return s + "]";
    }
    static std::vector<std::string> poly_strings(const std::vector<Polynomial>& ps) {
        std::vector<std::string> out;
        for (const auto& p : ps) out.push_back(p.str());
        return out;
    }
};

namespace detail {

inline std::string comma_join(const std::vector<Polynomial>& ps) {
    std::string s;
    for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? "," : "") + ps[i].str();
    return s;
}

inline std::string config_echo(const CheckConfig& cfg) {
    std::ostringstream os;
    os << "max_degree=" << cfg.max_degree << " mode=";
    if (cfg.mode == CheckConfig::Mode::Exhaustive) {
        os << "exhaustive";
    } else {
        os << "random samples=" << cfg.samples << " seed=" << cfg.seed;
    }
    os << " workers=" << cfg.workers;
    return os.str();
}

inline std::string fi_replay(const Job& job, const std::string& tensor_echo,
                             const std::string& gamma_echo, const Witness& w) {
    std::ostringstream os;
    os << "check-fi-direct --dim " << job.dim << " --tensor \"" << tensor_echo << "\"";
    if (!gamma_echo.empty()) os << " --gamma \"" << gamma_echo << "\"";
    os << " --fs \"" << comma_join(w.fs) << "\" --gs \"" << comma_join(w.gs) << "\"";
    return os.str();
}

inline filippov::StructureConstants parse_constants(const Job& job) {
    if (job.dim < 1 || job.arity < 1)
        throw std::invalid_argument("structure constants need --dim and --arity");
    std::string text;
    if (!job.constants_file.empty()) {
        std::ifstream in(job.constants_file);
        if (!in) throw std::invalid_argument("cannot open file: " + job.constants_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    for (const auto& entry : job.constants) {
        if (!text.empty() && text.back() != '\n') text += "\n";
        text += entry + "\n";
    }
    return parse_structure_constants(text, job.dim, job.arity);
}

inline std::vector<Rational> parse_coeff_set(const std::string& text) {
    std::vector<Rational> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t comma = text.find(',', start);
        std::string piece = comma == std::string::npos ? text.substr(start)
                                                       : text.substr(start, comma - start);
        std::size_t a = piece.find_first_not_of(" \t");
        std::size_t b = piece.find_last_not_of(" \t");
        if (a == std::string::npos) throw std::invalid_argument("empty coefficient in --coeffs");
        out.push_back(Rational::from_string(piece.substr(a, b - a + 1)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace detail

/// Dispatches a job. Throws ParseError / std::invalid_argument /
/// std::out_of_range on malformed requests; the caller maps those to exit 2.
inline std::pair<Report, int> run(const Job& job) {
    Report report;
    report.command = job.command;
    const auto t0 = std::chrono::steady_clock::now();
    int exit_code = 0;

    auto need_dim = [&] {
        if (job.dim < 1) throw std::invalid_argument("--dim is required and must be >= 1");
    };
    auto one_tensor = [&](int expected_degree = -1) {
        need_dim();
        if (job.tensors.size() != 1)
            throw std::invalid_argument("exactly one --tensor is required");
        Multivector m = parse_multivector(job.tensors[0], job.dim, expected_degree);
        report.inputs.emplace_back("tensor", m.str());
        return m;
    };
    auto finish_check = [&](const Verdict& v, const std::string& tensor_echo = "",
                            const std::string& gamma_echo = "") {
        report.passed = v.passed;
        if (!v.passed && v.witness) {
            report.witness = v.witness;
            if (!tensor_echo.empty() && !v.witness->fs.empty() && !v.witness->gs.empty())
                report.replay = detail::fi_replay(job, tensor_echo, gamma_echo, *v.witness);
            exit_code = 1;
        } else if (!v.passed) {
            exit_code = 1;
        }
    };

    if (job.command == "contract") {
        Multivector m = one_tensor();
        auto fs = parse_polynomial_list(job.fields, job.dim);
        report.inputs.emplace_back("fields", "[" + detail::comma_join(fs) + "]");
        report.result = contract_all(m, fs).str();
    } else if (job.command == "wedge" || job.command == "schouten") {
        need_dim();
        if (job.tensors.size() != 2)
            throw std::invalid_argument(job.command + " requires exactly two --tensor inputs");
        Multivector a = parse_multivector(job.tensors[0], job.dim);
        Multivector b = parse_multivector(job.tensors[1], job.dim);
        report.inputs.emplace_back("tensor_a", a.str());
        report.inputs.emplace_back("tensor_b", b.str());
        report.result = (job.command == "wedge" ? wedge(a, b) : schouten(a, b)).str();
    } else if (job.command == "bracket") {
        Multivector m = one_tensor();
        auto fs = parse_polynomial_list(job.fields, job.dim);
        report.inputs.emplace_back("fields", "[" + detail::comma_join(fs) + "]");
        if (!job.gamma.empty()) {
            Multivector g = parse_multivector(job.gamma, job.dim, m.degree() - 1);
            report.inputs.emplace_back("gamma", g.str());
            report.result = nj_bracket_eval(m, g, fs).str();
        } else {
            report.result = bracket_eval(m, fs).str();
        }
    } else if (job.command == "check-poisson") {
        Multivector m = one_tensor(2);
        finish_check(check_poisson(m));
    } else if (job.command == "check-np") {
        Multivector m = one_tensor();
        report.config_echo = detail::config_echo(job.cfg);
        finish_check(check_nambu_poisson(m, job.cfg), m.str());
    } else if (job.command == "check-nj") {
        need_dim();
        if (job.delta.empty() || job.gamma.empty())
            throw std::invalid_argument("check-nj requires --delta and --gamma");
        Multivector d = parse_multivector(job.delta, job.dim);
        Multivector g = parse_multivector(job.gamma, job.dim, d.degree() - 1);
        report.inputs.emplace_back("delta", d.str());
        report.inputs.emplace_back("gamma", g.str());
        report.config_echo = detail::config_echo(job.cfg);
        Verdict v = check_nambu_jacobi(d, g, job.cfg);
        report.passed = v.passed;
        if (!v.passed && v.witness) {
            report.witness = v.witness;
            if (!v.witness->fs.empty() && !v.witness->gs.empty())
                report.replay = detail::fi_replay(job, d.str(), g.str(), *v.witness);
            exit_code = 1;
        } else if (!v.passed) {
            exit_code = 1;
        }
    } else if (job.command == "check-decomposable") {
        Multivector m = one_tensor();
        finish_check(check_decomposable(m));
    } else if (job.command == "check-involutive") {
        need_dim();
        if (job.tensors.empty())
            throw std::invalid_argument("check-involutive requires --tensor vector fields");
        std::vector<Multivector> xs;
        for (std::size_t i = 0; i < job.tensors.size(); ++i) {
            xs.push_back(parse_multivector(job.tensors[i], job.dim, 1));
            report.inputs.emplace_back("field_" + std::to_string(i + 1), xs.back().str());
        }
        finish_check(check_involutive(xs));
    } else if (job.command == "check-ham") {
        Multivector m = one_tensor();
        auto fs = parse_polynomial_list(job.fs_text, job.dim);
        auto gs = parse_polynomial_list(job.gs_text, job.dim);
        report.inputs.emplace_back("fs", "[" + detail::comma_join(fs) + "]");
        report.inputs.emplace_back("gs", "[" + detail::comma_join(gs) + "]");
        finish_check(check_ham_identity(m, fs, gs));
    } else if (job.command == "check-fi-direct") {
        Multivector m = one_tensor();
        auto fs = parse_polynomial_list(job.fs_text, job.dim);
        auto gs = parse_polynomial_list(job.gs_text, job.dim);
        report.inputs.emplace_back("fs", "[" + detail::comma_join(fs) + "]");
        report.inputs.emplace_back("gs", "[" + detail::comma_join(gs) + "]");
        if (!job.gamma.empty()) {
            Multivector g = parse_multivector(job.gamma, job.dim, m.degree() - 1);
            report.inputs.emplace_back("gamma", g.str());
            finish_check(check_fi_direct(m, &g, fs, gs));
        } else {
            finish_check(check_fi_direct(m, nullptr, fs, gs));
        }
    } else if (job.command == "theorem1-crosscheck") {
        Multivector m = one_tensor();
        report.config_echo = detail::config_echo(job.cfg);
        finish_check(theorem1_crosscheck(m, job.cfg));
    } else if (job.command == "filippov-check") {
        auto s = detail::parse_constants(job);
        report.inputs.emplace_back("constants", s.str());
        Verdict v = check_filippov(s);
        report.passed = v.passed;
        if (!v.passed && v.witness) {
            report.witness = v.witness;
            report.replay = detail::fi_replay(job, to_linear_multivector(s).str(), "", *v.witness);
            exit_code = 1;
        }
    } else if (job.command == "filippov-hypothesis") {
        auto s = detail::parse_constants(job);
        report.inputs.emplace_back("constants", s.str());
        Verdict v = filippov::check_problem_hypothesis(s);
        report.passed = v.passed;
        if (!v.passed && v.witness) {
            report.witness = v.witness;
            exit_code = 1;
        }
    } else if (job.command == "filippov-contract") {
        auto s = detail::parse_constants(job);
        report.inputs.emplace_back("constants", s.str());
        auto x = parse_vector(job.vector_text, job.dim);
        report.inputs.emplace_back("vector", job.vector_text);
        auto contracted = filippov::contract_algebra(s, x);
        report.result = contracted.is_zero() ? std::string("(zero bracket)\n") : contracted.str();
    } else if (job.command == "filippov-search") {
        filippov::SearchConfig cfg = job.search;
        cfg.dim = job.dim;
        cfg.arity = job.arity;
        cfg.coefficients = detail::parse_coeff_set(job.coeffs);
        cfg.workers = job.cfg.workers;
        auto rep = filippov::search(cfg);
        report.search_body = rep.str();
        report.passed = std::nullopt;  // the search reports, it does not judge
    } else {
        throw std::invalid_argument("unknown command: " + job.command);
    }

    report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return {std::move(report), exit_code};
}

/// run() plus error mapping: the pair is (full stdout text, exit code), with
/// parse/usage problems reported as exit 2.
inline std::pair<std::string, int> execute(const Job& job) {
    try {
        auto [report, code] = run(job);
        std::string out = job.json ? report.to_json(job.timing).dump(2) + "\n"
                                   : report.text(job.timing);
        return {std::move(out), code};
    } catch (const ParseError& e) {
        return {std::string("error: ") + e.what() + "\n", 2};
    } catch (const std::invalid_argument& e) {
        return {std::string("error: ") + e.what() + "\n", 2};
    } catch (const std::out_of_range& e) {
        return {std::string("error: ") + e.what() + "\n", 2};
    }
}

}  // namespace nambu::cli
