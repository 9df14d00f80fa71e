#include "treediag/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace treediag {

void SparseSymmetricMatrix::check_vertex(int v) const {
    if (v < 1 || v > n_)
        throw IndexOutOfRange(v, n_);
}

SparseSymmetricMatrix SparseSymmetricMatrix::from_entries(int n, const std::vector<Entry>& entries,
                                                          ScalarMode mode) {
    if (n < 0)
        throw IndexOutOfRange(n, 0);
    SparseSymmetricMatrix m;
    m.n_ = n;
    m.mode_ = mode;
    m.diag_.assign(n + 1, Scalar::zero(mode));
    m.adj_.assign(n + 1, {});

    std::map<std::pair<int, int>, Scalar> canon;
    for (const Entry& e : entries) {
        if (e.u < 1 || e.u > n)
            throw IndexOutOfRange(e.u, n);
        if (e.v < 1 || e.v > n)
            throw IndexOutOfRange(e.v, n);
        if (e.value.mode() != mode)
            throw ModeMismatch();
        if (is_zero(e.value, 0.0))
            continue;
        auto key = std::minmax(e.u, e.v);
        auto [it, fresh] = canon.emplace(key, e.value);
        if (!fresh && !(it->second == e.value))
            throw AsymmetricInput(e.u, e.v);
    }

    for (const auto& [key, value] : canon) {
        auto [u, v] = key;
        double mag = std::fabs(value.to_double());
        m.max_abs_ = std::max(m.max_abs_, mag);
        if (u == v) {
            m.diag_[u] = value;
        } else {
            m.adj_[u].emplace_back(v, value);
            m.adj_[v].emplace_back(u, value);
        }
    }
    for (auto& row : m.adj_)
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    return m;
}

Scalar SparseSymmetricMatrix::at(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v)
        return diag_[u];
    const auto& row = adj_[u];
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const auto& p, int key) { return p.first < key; });
    if (it != row.end() && it->first == v)
        return it->second;
    return Scalar::zero(mode_);
}

const Scalar& SparseSymmetricMatrix::diagonal(int v) const {
    check_vertex(v);
    return diag_[v];
}

const std::vector<std::pair<int, Scalar>>& SparseSymmetricMatrix::row_offdiag(int v) const {
    check_vertex(v);
    return adj_[v];
}

std::vector<SparseSymmetricMatrix::Entry> SparseSymmetricMatrix::entries() const {
    std::vector<Entry> out;
    for (int u = 1; u <= n_; ++u) {
        if (!is_zero(diag_[u], 0.0))
            out.push_back({u, u, diag_[u]});
        for (const auto& [v, value] : adj_[u])
            if (u < v)
                out.push_back({u, v, value});
    }
    std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
        return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    return out;
}

long SparseSymmetricMatrix::nonzero_count() const {
    long diag = 0, off = 0;
    for (int u = 1; u <= n_; ++u) {
        if (!is_zero(diag_[u], 0.0))
            ++diag;
        off += static_cast<long>(adj_[u].size());
    }
    return diag + off / 2; // adjacency stores each off-diagonal pair twice
}

UnderlyingGraph SparseSymmetricMatrix::underlying_graph() const {
    UnderlyingGraph g;
    g.n = n_;
    g.adjacency.assign(n_ + 1, {});
    for (int u = 1; u <= n_; ++u) {
        g.adjacency[u].reserve(adj_[u].size());
        for (const auto& [v, value] : adj_[u]) {
            g.adjacency[u].push_back(v);
            if (u < v)
                g.edges.emplace_back(u, v);
        }
    }
    return g;
}

SparseSymmetricMatrix SparseSymmetricMatrix::shift_diagonal(const Scalar& c) const {
    if (c.mode() != mode_)
        throw ModeMismatch();
    SparseSymmetricMatrix m = *this;
    m.max_abs_ = 0.0;
    for (int v = 1; v <= n_; ++v) {
        m.diag_[v] = diag_[v] - c;
        m.max_abs_ = std::max(m.max_abs_, std::fabs(m.diag_[v].to_double()));
    }
    for (int u = 1; u <= n_; ++u)
        for (const auto& [v, value] : adj_[u])
            m.max_abs_ = std::max(m.max_abs_, std::fabs(value.to_double()));
    return m; // tol_override_ carries over; default tolerance recomputes
}

SparseSymmetricMatrix SparseSymmetricMatrix::permuted(const std::vector<int>& to_new) const {
    if (static_cast<int>(to_new.size()) != n_ + 1)
        throw IndexOutOfRange(static_cast<int>(to_new.size()), n_ + 1);
    std::vector<Entry> remapped;
    for (const Entry& e : entries())
        remapped.push_back({to_new[e.u], to_new[e.v], e.value});
    SparseSymmetricMatrix m = from_entries(n_, remapped, mode_);
    m.tol_override_ = tol_override_;
    return m;
}

double SparseSymmetricMatrix::zero_tolerance() const {
    if (mode_ == ScalarMode::Exact)
        return 0.0;
    if (tol_override_ >= 0.0)
        return tol_override_;
    return max_abs_ > 0.0 ? 1e-12 * max_abs_ : 1e-12;
}

void SparseSymmetricMatrix::set_zero_tolerance(double tol) {
    if (tol <= 0.0)
        throw Error("zero tolerance must be positive");
    tol_override_ = tol;
}

bool SparseSymmetricMatrix::operator==(const SparseSymmetricMatrix& other) const {
    if (n_ != other.n_ || mode_ != other.mode_)
        return false;
    for (int v = 1; v <= n_; ++v)
        if (!(diag_[v] == other.diag_[v]) || adj_[v] != other.adj_[v])
            return false;
    return true;
}

namespace {

// Strips a trailing '\r' so CRLF files parse the same as LF files.
bool next_line(std::istream& in, std::string& line, long& lineno) {
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        return true;
    }
    return false;
}

} // namespace

SparseSymmetricMatrix read_matrix_market(std::istream& in) {
    std::string line;
    long lineno = 0;
    if (!next_line(in, line, lineno))
        throw ParseError(1, "missing header");

    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
        throw ParseError(lineno, "expected '%%MatrixMarket matrix coordinate ...' header");
    ScalarMode mode;
    if (field == "rational")
        mode = ScalarMode::Exact;
    else if (field == "real")
        mode = ScalarMode::Real;
    else
        throw ParseError(lineno, "unsupported field '" + field + "' (want rational or real)");
    if (symmetry != "symmetric")
        throw ParseError(lineno, "unsupported symmetry '" + symmetry + "' (want symmetric)");

    long rows = -1, cols = -1, nnz = -1;
    while (next_line(in, line, lineno)) {
        if (!line.empty() && line[0] == '%')
            continue;
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::istringstream sizes(line);
        if (!(sizes >> rows >> cols >> nnz))
            throw ParseError(lineno, "bad size line '" + line + "'");
        break;
    }
    if (rows < 0)
        throw ParseError(lineno, "missing size line");
    if (rows != cols)
        throw ParseError(lineno, "matrix must be square");

    std::vector<SparseSymmetricMatrix::Entry> entries;
    entries.reserve(static_cast<size_t>(nnz));
    long seen = 0;
    while (seen < nnz) {
        if (!next_line(in, line, lineno))
            throw ParseError(lineno, "expected " + std::to_string(nnz) + " entries, got " +
                                         std::to_string(seen));
        if (!line.empty() && line[0] == '%')
            continue;
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::istringstream row(line);
        int u = 0, v = 0;
        std::string value;
        if (!(row >> u >> v >> value))
            throw ParseError(lineno, "bad entry line '" + line + "'");
        std::string extra;
        if (row >> extra)
            throw ParseError(lineno, "trailing tokens on entry line");
        try {
            entries.push_back({u, v, Scalar::parse(value, mode)});
        } catch (const Error& e) {
            throw ParseError(lineno, e.what());
        }
        ++seen;
    }
    return SparseSymmetricMatrix::from_entries(static_cast<int>(rows), entries, mode);
}

void write_matrix_market(std::ostream& out, const SparseSymmetricMatrix& m) {
    auto entries = m.entries();
    out << "%%MatrixMarket matrix coordinate "
        << (m.mode() == ScalarMode::Exact ? "rational" : "real") << " symmetric\n";
    out << m.order() << " " << m.order() << " " << entries.size() << "\n";
    for (const auto& e : entries)
        out << e.v << " " << e.u << " " << e.value.str() << "\n";
}

} // namespace treediag
