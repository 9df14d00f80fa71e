#include "treediag/oracle.hpp"
#include "treediag/treedecomp.hpp"

#include "testutil.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

using namespace treediag;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// Runs the installed CLI with the given arguments, capturing both streams.
RunResult run_cli(const std::string& args) {
    static int serial = 0;
    std::string tag = "/tmp/treediag_cli_test_" + std::to_string(++serial);
    std::string cmd = std::string(TREEDIAG_CLI_PATH) + " " + args + " >" + tag + ".out 2>" +
                      tag + ".err";
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(tag + ".out");
    r.err = slurp(tag + ".err");
    std::remove((tag + ".out").c_str());
    std::remove((tag + ".err").c_str());
    return r;
}

std::string golden_inputs() {
    return "--matrix " + testutil::data_path("worked6.mm") + " --td " +
           testutil::data_path("worked6.td");
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        lines.push_back(line);
    return lines;
}

} // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("validate reports the width") {
    RunResult r = run_cli("validate " + golden_inputs());
    CHECK(r.code == 0);
    CHECK(r.out == "valid, width 2\n");
    CHECK(r.err.empty());

    RunResult j = run_cli("validate --json " + golden_inputs());
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["valid"] == true);
    CHECK(doc["width"] == 2);
}

TEST_CASE("validate rejects a decomposition missing an edge") {
    RunResult r = run_cli("validate --matrix " + testutil::data_path("worked6.mm") + " --td " +
                          testutil::data_path("uncovered_edge.td"));
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(r.err == "error: uncovered edge 3 4\n");
}

TEST_CASE("malformed input files fail with a parse location") {
    RunResult td = run_cli("validate --matrix " + testutil::data_path("worked6.mm") + " --td " +
                           testutil::data_path("bad_header.td"));
    CHECK(td.code == 2);
    CHECK(td.err.find("line 1") != std::string::npos);

    RunResult mm = run_cli("validate --matrix " + testutil::data_path("bad_header.mm") +
                           " --td " + testutil::data_path("worked6.td"));
    CHECK(mm.code == 2);
    CHECK(mm.err.find("line 1") != std::string::npos);
}

TEST_CASE("nicify emits a readable nice decomposition") {
    RunResult r = run_cli("nicify --td " + testutil::data_path("chain2.td"));
    CHECK(r.code == 0);

    std::istringstream in(r.out);
    TreeDecomposition plain = read_td(in);
    CHECK(plain.node_count == 8);
    NiceTreeDecomposition nice =
        NiceTreeDecomposition::from_structure(plain.bags, plain.edges, plain.declared_root());
    CHECK(nice.width() == 2);
    CHECK(nice.node(nice.root()).bag.empty());
    // kinds ride along as comments
    CHECK(r.out.find("c kind 1 Leaf") != std::string::npos);

    RunResult j = run_cli("nicify --json --td " + testutil::data_path("chain2.td"));
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["node_count"] == 8);
    CHECK(doc["width"] == 2);
    CHECK(doc["nodes"].size() == 8);
    CHECK(doc["edges"].size() == 7);
    CHECK(doc["nodes"][0]["kind"] == "Leaf");
}

TEST_CASE("diag prints the diagonal and the summary line") {
    RunResult r = run_cli("diag --no-relabel " + golden_inputs());
    CHECK(r.code == 0);
    CHECK(r.err.empty());
    std::vector<std::string> want = {
        "5 1", "6 0", "4 -1", "2 1", "3 -2", "1 2", "rank 5 det 0 inertia (3,2,1)",
    };
    CHECK(lines_of(r.out) == want);

    // default (relabeled) run reports the same per-vertex values
    RunResult rel = run_cli("diag " + golden_inputs());
    CHECK(rel.code == 0);
    auto lines = lines_of(rel.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines.back() == "rank 5 det 0 inertia (3,2,1)");
    std::map<std::string, std::string> got;
    for (size_t i = 0; i + 1 < lines.size(); ++i) {
        std::istringstream ls(lines[i]);
        std::string v, val;
        ls >> v >> val;
        got[v] = val;
    }
    std::map<std::string, std::string> vals = {{"1", "2"},  {"2", "1"}, {"3", "-2"},
                                               {"4", "-1"}, {"5", "1"}, {"6", "0"}};
    CHECK(got == vals);
}

TEST_CASE("diag --json carries the same numbers") {
    RunResult r = run_cli("diag --json --no-relabel " + golden_inputs());
    CHECK(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc["rank"] == 5);
    CHECK(doc["det"] == "0");
    CHECK(doc["inertia"]["positive"] == 3);
    CHECK(doc["inertia"]["negative"] == 2);
    CHECK(doc["inertia"]["zero"] == 1);
    REQUIRE(doc["diagonal"].size() == 6);
    CHECK(doc["diagonal"][0]["vertex"] == 5);
    CHECK(doc["diagonal"][0]["value"] == "1");
    CHECK(doc["diagonal"][5]["vertex"] == 1);
    CHECK(doc["diagonal"][5]["value"] == "2");
    CHECK(!doc.contains("numerically_unverified"));
}

TEST_CASE("inertia reports the summary without the diagonal") {
    RunResult r = run_cli("inertia " + golden_inputs());
    CHECK(r.code == 0);
    CHECK(r.out == "rank 5 det 0 inertia (3,2,1)\n");

    RunResult j = run_cli("inertia --json " + golden_inputs());
    json doc = json::parse(j.out);
    CHECK(doc["rank"] == 5);
    CHECK(!doc.contains("diagonal"));
}

TEST_CASE("diag --trace writes a replayable operation log") {
    std::string trace_path = "/tmp/treediag_cli_trace.txt";
    RunResult r = run_cli("diag --trace " + trace_path + " " + golden_inputs());
    CHECK(r.code == 0);

    std::ifstream trace(trace_path);
    REQUIRE(trace.good());
    TraceReplay rep = replay_trace(trace, testutil::worked_matrix());
    CHECK(rep.matrix.is_diagonal());
    REQUIRE(rep.emitted.size() == 6);
    for (const auto& [v, val] : rep.emitted)
        CHECK(val == rep.matrix.at(v, v));
    std::remove(trace_path.c_str());
}

TEST_CASE("locate counts eigenvalues in half-open intervals") {
    RunResult r = run_cli("locate 0 inf " + golden_inputs());
    CHECK(r.code == 0);
    CHECK(r.out == "3\n");

    // "-inf" needs the usual end-of-options marker so it is read as a positional
    RunResult all = run_cli("locate " + golden_inputs() + " -- -inf inf");
    CHECK(all.code == 0);
    CHECK(all.out == "6\n");

    RunResult neg = run_cli("locate -3 3 " + golden_inputs());
    CHECK(neg.code == 0);
    CHECK(neg.out == "4\n");

    RunResult j = run_cli("locate --json 0 1/2 " + golden_inputs());
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["count"].is_number_integer());

    RunResult bad = run_cli("locate 1 1 " + golden_inputs());
    CHECK(bad.code == 2);
    CHECK(bad.err.find("interval") != std::string::npos);
}

TEST_CASE("--tol is a real-mode option") {
    RunResult r = run_cli("inertia --tol 0.5 " + golden_inputs());
    CHECK(r.code == 2);
    CHECK(r.err.find("--real") != std::string::npos);
}

TEST_CASE("--real computes in floating point and says so on stderr") {
    RunResult r = run_cli("inertia --real " + golden_inputs());
    CHECK(r.code == 0);
    CHECK(r.out == "rank 5 det 0 inertia (3,2,1)\n");
    CHECK(r.err.find("numerically unverified") != std::string::npos);

    RunResult j = run_cli("diag --json --real --tol 1e-9 " + golden_inputs());
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["numerically_unverified"] == true);
    CHECK(doc["tolerance_sensitive"] == false);
}

TEST_CASE("verify cross-checks random instances") {
    RunResult r = run_cli("verify --seed 7 --count 3");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 4);
    CHECK(lines[0].find("seed 7") == 0);
    CHECK(lines[0].find(" agree ops ") != std::string::npos);
    CHECK(lines[3] == "verified 3 instances, all agree");

    RunResult j = run_cli("verify --json --seed 7 --count 2");
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["all_agree"] == true);
    CHECK(doc["instances"].size() == 2);
    CHECK(doc["instances"][0]["agree"] == true);
}

TEST_CASE("bench measures operation growth per size") {
    RunResult r = run_cli("bench --seed 3 --count 1 --n 20,40 --k 3");
    CHECK(r.code == 0);
    auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(lines[0].find("n 20 k 3 instances 1 mean_ops ") == 0);
    CHECK(lines[1].find("n 40 k 3 instances 1 mean_ops ") == 0);
    CHECK(lines[2].find("ratio n=40/n=20 ") == 0);
    CHECK(lines[3].find("ops_per_vertex_slope ") == 0);
    CHECK((lines[4] == "growth linear" || lines[4] == "growth super-linear"));

    RunResult j = run_cli("bench --json --seed 3 --count 1 --n 20,40 --k 3");
    CHECK(j.code == 0);
    json doc = json::parse(j.out);
    CHECK(doc["rows"].size() == 2);
    CHECK(doc["ratios"].size() == 1);
    CHECK(doc["rows"][0]["n"] == 20);
    CHECK(doc.contains("ops_per_vertex_slope"));

    RunResult empty = run_cli("bench --count 0 --n 20");
    CHECK(empty.code == 0);
    CHECK(empty.out.empty());

    RunResult bad = run_cli("bench --n 2 --k 3 --count 1");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("n > k") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("").code == 2);                                   // no subcommand
    CHECK(run_cli("diag " + golden_inputs() + " --bogus").code == 2);
    CHECK(run_cli("diag --td " + testutil::data_path("worked6.td")).code == 2); // no matrix
    CHECK(run_cli("diag --matrix /nonexistent.mm --td " + testutil::data_path("worked6.td"))
              .code == 2);
    CHECK(run_cli("locate 0 inf --json").code == 2); // missing inputs
}

TEST_SUITE_END();
