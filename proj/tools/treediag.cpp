#include "treediag/boxes.hpp"
#include "treediag/oracle.hpp"
#include "treediag/spectral.hpp"
#include "treediag/trace.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace treediag;
using nlohmann::json;

namespace {

// Text mode renders numbers exactly as the JSON encoder would, so the two
// output modes agree digit for digit.
std::string num(double x) { return json(x).dump(); }

SparseSymmetricMatrix load_matrix(const std::string& path, bool want_real, double tol) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    SparseSymmetricMatrix m = read_matrix_market(in);
    if (want_real && m.mode() == ScalarMode::Exact) {
        std::vector<SparseSymmetricMatrix::Entry> converted;
        for (auto& e : m.entries())
            converted.push_back({e.u, e.v, e.value.to_real()});
        m = SparseSymmetricMatrix::from_entries(m.order(), converted, ScalarMode::Real);
    }
    if (tol > 0) {
        if (m.mode() != ScalarMode::Real)
            throw Error("--tol only applies in real mode (pass --real)");
        m.set_zero_tolerance(tol);
    }
    return m;
}

TreeDecomposition load_td(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open " + path);
    return read_td(in);
}

void warn_real_mode(const SparseSymmetricMatrix& m, const DiagonalArray* d) {
    if (m.mode() != ScalarMode::Real)
        return;
    std::cerr << "warning: real-mode results are numerically unverified (zero tolerance "
              << num(m.zero_tolerance()) << ")\n";
    if (d && tolerance_sensitive(*d, m.zero_tolerance()))
        std::cerr << "warning: diagonal entries within 10x of the zero tolerance; "
                     "inertia and rank may be unreliable\n";
}

json inertia_json(const Inertia& in) {
    return {{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}};
}

std::string inertia_text(const Inertia& in) {
    std::ostringstream os;
    os << "(" << in.positive << "," << in.negative << "," << in.zero << ")";
    return os.str();
}

IntervalEndpoint parse_endpoint(const std::string& text, ScalarMode mode) {
    if (text == "inf" || text == "+inf")
        return IntervalEndpoint::pos_inf();
    if (text == "-inf")
        return IntervalEndpoint::neg_inf();
    return IntervalEndpoint::at(Scalar::parse(text, mode));
}

struct SpectralRun {
    DiagonalArray diagonal;
    Inertia inertia;
    Scalar det;
};

SpectralRun run_diag(const SparseSymmetricMatrix& m, const TreeDecomposition& td, bool relabel,
                     const std::string& trace_path) {
    validate(td, m.underlying_graph());
    NiceTreeDecomposition nice = nicify(td);
    std::ofstream trace_file;
    std::optional<TraceWriter> trace;
    DiagonalizeOptions opt;
    opt.relabel = relabel;
    if (!trace_path.empty()) {
        trace_file.open(trace_path);
        if (!trace_file)
            throw Error("cannot open " + trace_path + " for writing");
        trace.emplace(trace_file);
        opt.trace = &*trace;
    }
    SpectralRun run{congruent_diagonal(m, nice, opt), {}, Scalar::zero(m.mode())};
    run.inertia = inertia_of(run.diagonal, m.zero_tolerance());
    run.det = determinant_of(run.diagonal);
    return run;
}

int cmd_validate(const std::string& matrix_path, const std::string& td_path, bool real, double tol,
                 bool as_json) {
    SparseSymmetricMatrix m = load_matrix(matrix_path, real, tol);
    TreeDecomposition td = load_td(td_path);
    int width = validate(td, m.underlying_graph());
    if (as_json)
        std::cout << json{{"valid", true}, {"width", width}}.dump() << "\n";
    else
        std::cout << "valid, width " << width << "\n";
    return 0;
}

int cmd_nicify(const std::string& td_path, bool as_json) {
    NiceTreeDecomposition nice = nicify(load_td(td_path));
    if (!as_json) {
        write_td(std::cout, nice);
        return 0;
    }
    json nodes = json::array();
    for (int i = 1; i <= nice.node_count(); ++i) {
        const NiceNode& nd = nice.node(i);
        json entry = {{"id", i}, {"kind", kind_name(nd.kind)}, {"bag", nd.bag}};
        if (nd.vertex)
            entry["vertex"] = nd.vertex;
        nodes.push_back(std::move(entry));
    }
    json edges = json::array();
    for (int i = 1; i <= nice.node_count(); ++i)
        if (nice.node(i).parent)
            edges.push_back({i, nice.node(i).parent});
    std::cout << json{{"node_count", nice.node_count()},
                      {"width", nice.width()},
                      {"root", nice.root()},
                      {"nodes", nodes},
                      {"edges", edges}}
                     .dump()
              << "\n";
    return 0;
}

int cmd_diag(const std::string& matrix_path, const std::string& td_path, bool real, double tol,
             bool relabel, const std::string& trace_path, bool as_json, bool diagonal_lines) {
    SparseSymmetricMatrix m = load_matrix(matrix_path, real, tol);
    TreeDecomposition td = load_td(td_path);
    SpectralRun run = run_diag(m, td, relabel, trace_path);
    warn_real_mode(m, &run.diagonal);
    if (as_json) {
        json out;
        if (diagonal_lines) {
            json diag = json::array();
            for (const auto& e : run.diagonal.entries())
                diag.push_back({{"vertex", e.vertex}, {"value", e.value.str()}});
            out["diagonal"] = std::move(diag);
        }
        out["rank"] = run.inertia.rank();
        out["det"] = run.det.str();
        out["inertia"] = inertia_json(run.inertia);
        if (m.mode() == ScalarMode::Real) {
            out["numerically_unverified"] = true;
            out["tolerance_sensitive"] = tolerance_sensitive(run.diagonal, m.zero_tolerance());
        }
        std::cout << out.dump() << "\n";
        return 0;
    }
    if (diagonal_lines)
        for (const auto& e : run.diagonal.entries())
            std::cout << e.vertex << " " << e.value.str() << "\n";
    std::cout << "rank " << run.inertia.rank() << " det " << run.det.str() << " inertia "
              << inertia_text(run.inertia) << "\n";
    return 0;
}

int cmd_locate(const std::string& matrix_path, const std::string& td_path, bool real, double tol,
               const std::string& a_text, const std::string& b_text, bool as_json) {
    SparseSymmetricMatrix m = load_matrix(matrix_path, real, tol);
    TreeDecomposition td = load_td(td_path);
    validate(td, m.underlying_graph());
    NiceTreeDecomposition nice = nicify(td);
    IntervalEndpoint a = parse_endpoint(a_text, m.mode());
    IntervalEndpoint b = parse_endpoint(b_text, m.mode());
    long long count = count_eigenvalues_in(m, nice, a, b);
    warn_real_mode(m, nullptr);
    if (as_json)
        std::cout << json{{"count", count}}.dump() << "\n";
    else
        std::cout << count << "\n";
    return 0;
}

// One randomized round-trip: tree DP vs the dense oracle vs Bareiss, plus a
// from-scratch replay of the recorded row operations.
bool verify_one(unsigned seed, int n, int k, long long& ops_out, std::string& why) {
    Instance inst = random_instance(n, k, seed);
    NiceTreeDecomposition nice = nicify(inst.decomposition);

    OperationCounter counter;
    std::ostringstream trace_text;
    TraceWriter trace(trace_text);
    DiagonalizeOptions opt;
    opt.counter = &counter;
    opt.trace = &trace;
    DiagonalArray d = congruent_diagonal(inst.matrix, nice, opt);
    ops_out = counter.total.field_ops();

    Inertia dp = inertia_of(d, 0.0);
    Scalar dp_det = determinant_of(d);

    auto dense_diag = dense_congruent_diagonalize(dense_from(inst.matrix));
    Inertia dense;
    Scalar dense_det = Scalar::one(ScalarMode::Exact);
    for (int v = 1; v <= inst.matrix.order(); ++v) {
        switch (sign_of(dense_diag[v])) {
        case Sign::Positive:
            ++dense.positive;
            break;
        case Sign::Negative:
            ++dense.negative;
            break;
        case Sign::Zero:
            ++dense.zero;
            break;
        }
        dense_det *= dense_diag[v];
    }
    if (!(dp == dense)) {
        why = "inertia differs from the dense oracle";
        return false;
    }
    if (dp_det != dense_det) {
        why = "determinant differs from the dense oracle";
        return false;
    }
    if (dp_det != bareiss_determinant(dense_from(inst.matrix))) {
        why = "determinant differs from Bareiss elimination";
        return false;
    }
    std::istringstream in(trace_text.str());
    TraceReplay replay = replay_trace(in, inst.matrix);
    if (!replay.matrix.is_diagonal()) {
        why = "replayed trace is not diagonal";
        return false;
    }
    for (const auto& e : d.entries())
        if (!(replay.matrix.at(e.vertex, e.vertex) == e.value)) {
            why = "replayed diagonal disagrees with the emitted one";
            return false;
        }
    return true;
}

int cmd_verify(unsigned seed, long long count, bool as_json) {
    json rows = json::array();
    bool all_agree = true;
    for (long long i = 0; i < count; ++i) {
        unsigned s = seed + static_cast<unsigned>(i);
        int n = 4 + static_cast<int>(s % 9); // 4..12
        int k = 1 + static_cast<int>(s % 3); // 1..3
        long long ops = 0;
        std::string why;
        bool ok = verify_one(s, n, k, ops, why);
        all_agree = all_agree && ok;
        if (as_json) {
            json row = {{"seed", s}, {"n", n}, {"k", k}, {"agree", ok}, {"ops", ops}};
            if (!ok)
                row["why"] = why;
            rows.push_back(std::move(row));
        } else {
            std::cout << "seed " << s << " n " << n << " k " << k
                      << (ok ? " agree" : " DISAGREE") << " ops " << ops;
            if (!ok)
                std::cout << " (" << why << ")";
            std::cout << "\n";
        }
    }
    if (as_json)
        std::cout << json{{"instances", rows}, {"all_agree", all_agree}}.dump() << "\n";
    else if (count > 0)
        std::cout << "verified " << count << " instance" << (count == 1 ? "" : "s") << ", "
                  << (all_agree ? "all agree" : "DISAGREEMENT FOUND") << "\n";
    if (!all_agree)
        throw InternalInvariantViolation("verify found a disagreement with the oracle");
    return 0;
}

int cmd_bench(unsigned seed, long long count, const std::vector<long long>& sizes, int k,
              bool as_json) {
    struct Row {
        long long n;
        long long instances;
        double mean_ops;
    };
    std::vector<Row> rows;
    for (long long n : sizes) {
        if (n <= k)
            throw Error("bench needs n > k (got n=" + std::to_string(n) +
                        ", k=" + std::to_string(k) + ")");
        long long total = 0;
        for (long long i = 0; i < count; ++i) {
            Instance inst = random_instance(static_cast<int>(n), k,
                                            seed + static_cast<unsigned>(i));
            NiceTreeDecomposition nice = nicify(inst.decomposition);
            OperationCounter counter;
            DiagonalizeOptions opt;
            opt.counter = &counter;
            congruent_diagonal(inst.matrix, nice, opt);
            total += counter.total.field_ops();
        }
        if (count > 0)
            rows.push_back({n, count, static_cast<double>(total) / static_cast<double>(count)});
    }

    // Per-step growth ratios and a least-squares ops-per-vertex slope.
    json ratio_rows = json::array();
    bool super_linear = false;
    for (size_t i = 1; i < rows.size(); ++i) {
        double ratio = rows[i].mean_ops / rows[i - 1].mean_ops;
        double size_ratio = static_cast<double>(rows[i].n) / static_cast<double>(rows[i - 1].n);
        bool flagged = ratio > 1.25 * size_ratio;
        super_linear = super_linear || flagged;
        ratio_rows.push_back({{"from_n", rows[i - 1].n},
                              {"to_n", rows[i].n},
                              {"ratio", ratio},
                              {"super_linear", flagged}});
    }
    double slope = 0;
    if (rows.size() >= 2) {
        double mean_n = 0, mean_ops = 0;
        for (const Row& r : rows) {
            mean_n += static_cast<double>(r.n);
            mean_ops += r.mean_ops;
        }
        mean_n /= static_cast<double>(rows.size());
        mean_ops /= static_cast<double>(rows.size());
        double cov = 0, var = 0;
        for (const Row& r : rows) {
            cov += (static_cast<double>(r.n) - mean_n) * (r.mean_ops - mean_ops);
            var += (static_cast<double>(r.n) - mean_n) * (static_cast<double>(r.n) - mean_n);
        }
        slope = var > 0 ? cov / var : 0;
    }

    if (as_json) {
        json out = {{"k", k}, {"rows", json::array()}, {"ratios", ratio_rows}};
        for (const Row& r : rows)
            out["rows"].push_back(
                {{"n", r.n}, {"instances", r.instances}, {"mean_ops", r.mean_ops}});
        if (rows.size() >= 2) {
            out["ops_per_vertex_slope"] = slope;
            out["super_linear"] = super_linear;
        }
        std::cout << out.dump() << "\n";
        return 0;
    }
    for (const Row& r : rows)
        std::cout << "n " << r.n << " k " << k << " instances " << r.instances << " mean_ops "
                  << num(r.mean_ops) << "\n";
    for (const auto& rr : ratio_rows) {
        std::cout << "ratio n=" << rr["to_n"].get<long long>() << "/n="
                  << rr["from_n"].get<long long>() << " " << num(rr["ratio"].get<double>());
        if (rr["super_linear"].get<bool>())
            std::cout << " SUPER-LINEAR";
        std::cout << "\n";
    }
    if (rows.size() >= 2)
        std::cout << "ops_per_vertex_slope " << num(slope) << "\ngrowth "
                  << (super_linear ? "super-linear" : "linear") << "\n";
    return 0;
}

std::vector<long long> parse_sizes(const std::string& text) {
    std::vector<long long> sizes;
    std::istringstream in(text);
    std::string part;
    while (std::getline(in, part, ',')) {
        try {
            size_t used = 0;
            long long n = std::stoll(part, &used);
            if (used != part.size() || n < 1)
                throw Error("");
            sizes.push_back(n);
        } catch (const std::exception&) {
            throw Error("bad --n list entry '" + part + "' (want comma-separated sizes)");
        }
    }
    if (sizes.empty())
        throw Error("--n list is empty");
    return sizes;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symmetric-matrix diagonalization by congruence along a tree decomposition"};
    app.require_subcommand(1);

    std::string matrix_path, td_path, trace_path, a_text, b_text;
    std::string sizes_text = "200,400,800";
    bool real = false, no_relabel = false, as_json = false;
    double tol = -1;
    unsigned seed = 1;
    long long count = -1;
    int bench_k = 3;

    auto add_matrix = [&](CLI::App* sub) {
        sub->add_option("--matrix", matrix_path, "symmetric matrix (Matrix Market coordinate)")
            ->required()
            ->check(CLI::ExistingFile);
    };
    auto add_td = [&](CLI::App* sub) {
        sub->add_option("--td", td_path, "tree decomposition (.td)")
            ->required()
            ->check(CLI::ExistingFile);
    };
    auto add_mode = [&](CLI::App* sub) {
        sub->add_flag("--real", real, "compute in floating point instead of exact rationals");
        sub->add_option("--tol", tol, "absolute zero tolerance for real mode");
    };
    auto add_json = [&](CLI::App* sub) {
        sub->add_flag("--json", as_json, "machine-readable output");
    };

    CLI::App* validate_cmd = app.add_subcommand("validate", "check a decomposition against a matrix");
    add_matrix(validate_cmd);
    add_td(validate_cmd);
    add_mode(validate_cmd);
    add_json(validate_cmd);

    CLI::App* nicify_cmd = app.add_subcommand("nicify", "rewrite a decomposition in nice form");
    add_td(nicify_cmd);
    add_json(nicify_cmd);

    CLI::App* diag_cmd = app.add_subcommand("diag", "diagonalize and report rank/det/inertia");
    add_matrix(diag_cmd);
    add_td(diag_cmd);
    add_mode(diag_cmd);
    add_json(diag_cmd);
    diag_cmd->add_flag("--no-relabel", no_relabel, "keep original vertex labels internally");
    diag_cmd->add_option("--trace", trace_path, "write the row-operation trace to this file");

    CLI::App* inertia_cmd = app.add_subcommand("inertia", "report rank/det/inertia only");
    add_matrix(inertia_cmd);
    add_td(inertia_cmd);
    add_mode(inertia_cmd);
    add_json(inertia_cmd);
    inertia_cmd->add_flag("--no-relabel", no_relabel, "keep original vertex labels internally");

    CLI::App* locate_cmd =
        app.add_subcommand("locate", "count eigenvalues in a half-open interval (a, b]");
    locate_cmd->add_option("a", a_text, "lower endpoint (number or -inf)")->required();
    locate_cmd->add_option("b", b_text, "upper endpoint (number or inf)")->required();
    add_matrix(locate_cmd);
    add_td(locate_cmd);
    add_mode(locate_cmd);
    add_json(locate_cmd);

    CLI::App* verify_cmd =
        app.add_subcommand("verify", "cross-check random instances against dense oracles");
    verify_cmd->add_option("--seed", seed, "first random seed");
    verify_cmd->add_option("--count", count, "number of instances (default 50)");
    add_json(verify_cmd);

    CLI::App* bench_cmd = app.add_subcommand("bench", "measure field-operation growth");
    bench_cmd->add_option("--seed", seed, "first random seed");
    bench_cmd->add_option("--count", count, "instances per size (default 3)");
    bench_cmd->add_option("--n", sizes_text, "comma-separated instance sizes");
    bench_cmd->add_option("--k", bench_k, "decomposition width")->check(CLI::PositiveNumber);
    add_json(bench_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(validate_cmd))
            return cmd_validate(matrix_path, td_path, real, tol, as_json);
        if (app.got_subcommand(nicify_cmd))
            return cmd_nicify(td_path, as_json);
        if (app.got_subcommand(diag_cmd))
            return cmd_diag(matrix_path, td_path, real, tol, !no_relabel, trace_path, as_json,
                            /*diagonal_lines=*/true);
        if (app.got_subcommand(inertia_cmd))
            return cmd_diag(matrix_path, td_path, real, tol, !no_relabel, "", as_json,
                            /*diagonal_lines=*/false);
        if (app.got_subcommand(locate_cmd))
            return cmd_locate(matrix_path, td_path, real, tol, a_text, b_text, as_json);
        if (app.got_subcommand(verify_cmd))
            return cmd_verify(seed, count < 0 ? 50 : count, as_json);
        if (app.got_subcommand(bench_cmd))
            return cmd_bench(seed, count < 0 ? 3 : count, parse_sizes(sizes_text), bench_k,
                             as_json);
        std::cerr << "internal error: no subcommand dispatched\n";
        return 1;
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}
