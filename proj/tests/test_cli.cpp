#include <catch2/catch.hpp>

#include "nambu/cli.hpp"

using namespace nambu;
using cli::Job;

namespace {
Job make(const std::string& command, int dim) {
    Job j;
    j.command = command;
    j.dim = dim;
    return j;
}
}  // namespace

TEST_CASE("exit code contract") {
    // 0: property holds
    Job pass = make("check-np", 3);
    pass.tensors = {"1*d1^d2^d3"};
    CHECK(cli::execute(pass).second == 0);

    // 1: property fails, witness in the report
    Job fail = make("check-np", 6);
    fail.tensors = {"1*d1^d2^d3 + 1*d4^d5^d6"};
    auto [out, code] = cli::execute(fail);
    CHECK(code == 1);
    CHECK(out.find("verdict: FAIL") != std::string::npos);
    CHECK(out.find("witness fs:") != std::string::npos);
    CHECK(out.find("replay: check-fi-direct") != std::string::npos);

    // 2: parse errors and usage errors
    Job bad = make("check-np", 3);
    bad.tensors = {"1*d1^d9"};
    CHECK(cli::execute(bad).second == 2);
    Job wrong_degree = make("check-poisson", 3);
    wrong_degree.tensors = {"1*d1^d2^d3"};
    CHECK(cli::execute(wrong_degree).second == 2);
    Job missing = make("wedge", 3);
    missing.tensors = {"1*d1"};
    CHECK(cli::execute(missing).second == 2);
    Job unknown = make("frobnicate", 3);
    CHECK(cli::execute(unknown).second == 2);
}

TEST_CASE("reports are deterministic and timing is opt-in") {
    Job j = make("check-nj", 3);
    j.delta = "1*d1^d2^d3";
    j.gamma = "1*d1^d2";
    auto r1 = cli::execute(j);
    auto r2 = cli::execute(j);
    CHECK(r1.first == r2.first);
    CHECK(r1.first.find("elapsed_ms") == std::string::npos);

    j.json = true;
    auto j1 = cli::execute(j);
    auto j2 = cli::execute(j);
    CHECK(j1.first == j2.first);

    j.json = false;
    j.timing = true;
    CHECK(cli::execute(j).first.find("elapsed_ms") != std::string::npos);
}

TEST_CASE("random mode is surfaced in the report") {
    Job j = make("check-np", 6);
    j.tensors = {"1*d1^d2^d3 + 1*d4^d5^d6"};
    j.cfg = CheckConfig::randomized(128, 99);
    auto r1 = cli::execute(j);
    auto r2 = cli::execute(j);
    CHECK(r1.first == r2.first);
    CHECK(r1.first.find("mode=random samples=128 seed=99") != std::string::npos);
}

TEST_CASE("witness replays through check-fi-direct with the identical residual") {
    Job fail = make("check-np", 6);
    fail.tensors = {"1*d1^d2^d3 + 1*d4^d5^d6"};
    auto [report, code] = cli::run(fail);
    REQUIRE(code == 1);
    REQUIRE(report.witness.has_value());

    Job replay = make("check-fi-direct", 6);
    replay.tensors = fail.tensors;
    replay.fs_text = cli::detail::comma_join(report.witness->fs);
    replay.gs_text = cli::detail::comma_join(report.witness->gs);
    auto [replay_report, replay_code] = cli::run(replay);
    REQUIRE(replay_code == 1);
    REQUIRE(replay_report.witness.has_value());
    CHECK(std::get<Polynomial>(replay_report.witness->residual) ==
          std::get<Polynomial>(report.witness->residual));
}

TEST_CASE("computation commands") {
    Job c = make("contract", 3);
    c.tensors = {"1*d1^d2^d3"};
    c.fields = "x2";
    auto [r1, code1] = cli::run(c);
    CHECK(code1 == 0);
    CHECK(r1.result == "-1*d1^d3");

    Job w = make("wedge", 3);
    w.tensors = {"1*d2", "1*d1"};
    CHECK(cli::run(w).first.result == "-1*d1^d2");

    Job s = make("schouten", 4);
    s.tensors = {"1*d1^d2", "x1*d3^d4"};
    CHECK(cli::run(s).first.result == "-1*d2^d3^d4");

    Job b = make("bracket", 3);
    b.tensors = {"1*d1^d2^d3"};
    b.fields = "x1^2, x2, x3";
    CHECK(cli::run(b).first.result == "2*x1");

    Job nj = make("bracket", 3);
    nj.tensors = {"1*d1^d2^d3"};
    nj.gamma = "1*d1^d2";
    nj.fields = "x1, x2, x3";
    CHECK(cli::run(nj).first.result == "x3 + 1");
}

TEST_CASE("remaining check commands through the dispatcher") {
    Job dec = make("check-decomposable", 6);
    dec.tensors = {"1*d1^d2^d3 + 1*d4^d5^d6"};
    CHECK(cli::execute(dec).second == 1);
    dec.tensors = {"1*d1^d2^d3 + 1*d2^d3^d4"};
    dec.dim = 4;
    CHECK(cli::execute(dec).second == 0);

    Job inv = make("check-involutive", 3);
    inv.tensors = {"1*d1", "x1*d2"};
    CHECK(cli::execute(inv).second == 0);
    inv.tensors = {"1*d1 + x2*d3", "1*d2"};
    CHECK(cli::execute(inv).second == 1);

    Job ham = make("check-ham", 3);
    ham.tensors = {"1*d1^d2^d3"};
    ham.fs_text = "x1^2, x2";
    ham.gs_text = "x2^2, x3";
    CHECK(cli::execute(ham).second == 0);

    Job cross = make("theorem1-crosscheck", 6);
    cross.tensors = {"1*d1^d2^d3 + 1*d4^d5^d6"};
    cross.cfg.workers = 2;
    CHECK(cli::execute(cross).second == 0);

    Job pois = make("check-poisson", 2);
    pois.tensors = {"x1*d1^d2"};
    CHECK(cli::execute(pois).second == 0);

    Job iter = make("contract", 3);
    iter.tensors = {"1*d1^d2^d3"};
    iter.fields = "x1, x2";
    CHECK(cli::run(iter).first.result == "1*d3");
}

TEST_CASE("filippov commands") {
    const std::vector<std::string> ternary = {
        "c[4; 1,2,3] = 1", "c[3; 1,2,4] = -1", "c[2; 1,3,4] = 1", "c[1; 2,3,4] = -1"};

    Job check = make("filippov-check", 4);
    check.arity = 3;
    check.constants = ternary;
    CHECK(cli::execute(check).second == 0);

    Job hyp = make("filippov-hypothesis", 4);
    hyp.arity = 3;
    hyp.constants = ternary;
    CHECK(cli::execute(hyp).second == 0);

    Job contract = make("filippov-contract", 4);
    contract.arity = 3;
    contract.constants = ternary;
    contract.vector_text = "0,0,0,1";
    auto [rep, code] = cli::run(contract);
    CHECK(code == 0);
    CHECK(*rep.result == "c[3; 1,2] = -1\nc[2; 1,3] = 1\nc[1; 2,3] = -1\n");

    Job bad = make("filippov-check", 4);
    bad.arity = 3;
    bad.constants = {"c[1; 1,2,3] = 1", "c[4; 1,2,4] = 1"};
    auto [out, bad_code] = cli::execute(bad);
    CHECK(bad_code == 1);
    CHECK(out.find("replay: check-fi-direct") != std::string::npos);

    Job search = make("filippov-search", 3);
    search.arity = 3;
    auto [sout, scode] = cli::execute(search);
    CHECK(scode == 0);
    CHECK(sout.find("counts: enumerated=27 hypothesis_pass=27 filippov_pass=27 "
                    "counterexamples=0") != std::string::npos);
    CHECK(cli::execute(search).first == sout);

    Job guard = make("filippov-search", 4);
    guard.arity = 3;
    guard.coeffs = "0,1";
    guard.search.max_enumerated = 100;
    CHECK(cli::execute(guard).second == 2);
}

TEST_CASE("filippov witness replay through the linear encoding") {
    Job bad = make("filippov-check", 4);
    bad.arity = 3;
    bad.constants = {"c[1; 1,2,3] = 1", "c[4; 1,2,4] = 1"};
    auto [report, code] = cli::run(bad);
    REQUIRE(code == 1);
    REQUIRE(report.witness.has_value());
    REQUIRE(!report.replay.empty());

    // the replay line names the linear tensor; rebuild the job it describes
    auto s = parse_structure_constants("c[1; 1,2,3] = 1\nc[4; 1,2,4] = 1", 4, 3);
    Job replay = make("check-fi-direct", 4);
    replay.tensors = {filippov::to_linear_multivector(s).str()};
    replay.fs_text = cli::detail::comma_join(report.witness->fs);
    replay.gs_text = cli::detail::comma_join(report.witness->gs);
    auto [rr, rc] = cli::run(replay);
    REQUIRE(rc == 1);
    CHECK(std::get<Polynomial>(rr.witness->residual) ==
          std::get<Polynomial>(report.witness->residual));
}
