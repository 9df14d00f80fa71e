#include "treediag/oracle.hpp"

#include <algorithm>
#include <cassert>
#include <istream>
#include <random>
#include <set>
#include <sstream>
#include <string>

namespace treediag {

void DenseSymmetric::add_row_col(int t, int s, const Scalar& c) {
    assert(t != s && t >= 1 && t <= n_ && s >= 1 && s <= n_);
    for (int j = 1; j <= n_; ++j)
        at(t, j) += c * at(s, j);
    for (int i = 1; i <= n_; ++i)
        at(i, t) += c * at(i, s);
}

void DenseSymmetric::swap_row_col(int a, int b) {
    if (a == b)
        return;
    for (int j = 1; j <= n_; ++j)
        std::swap(at(a, j), at(b, j));
    for (int i = 1; i <= n_; ++i)
        std::swap(at(i, a), at(i, b));
}

bool DenseSymmetric::is_diagonal(double tol) const {
    for (int i = 1; i <= n_; ++i)
        for (int j = i + 1; j <= n_; ++j)
            if (!is_zero(at(i, j), tol) || !is_zero(at(j, i), tol))
                return false;
    return true;
}

std::vector<Scalar> DenseSymmetric::diagonal() const {
    std::vector<Scalar> d(n_ + 1, Scalar::zero(mode_));
    for (int v = 1; v <= n_; ++v)
        d[v] = at(v, v);
    return d;
}

DenseSymmetric dense_from(const SparseSymmetricMatrix& m) {
    DenseSymmetric d(m.order(), m.mode());
    for (const auto& e : m.entries()) {
        d.at(e.u, e.v) = e.value;
        d.at(e.v, e.u) = e.value;
    }
    return d;
}

std::vector<Scalar> dense_congruent_diagonalize(DenseSymmetric a) {
    if (a.mode() != ScalarMode::Exact)
        throw ModeMismatch();
    const int n = a.order();
    for (int i = 1; i <= n; ++i) {
        if (is_zero(a.at(i, i))) {
            int j = 0;
            for (int jj = i + 1; jj <= n && !j; ++jj)
                if (!is_zero(a.at(jj, jj)))
                    j = jj;
            if (j) {
                a.swap_row_col(i, j);
            } else {
                // The whole trailing diagonal is zero; look for an
                // off-diagonal pair to pivot on.
                int p = 0, q = 0;
                for (int pp = i; pp <= n && !p; ++pp)
                    for (int qq = pp + 1; qq <= n; ++qq)
                        if (!is_zero(a.at(pp, qq))) {
                            p = pp;
                            q = qq;
                            break;
                        }
                if (!p)
                    break; // trailing block is zero: remaining diagonal stays 0
                if (p != i)
                    a.swap_row_col(i, p);
                if (q != i + 1)
                    a.swap_row_col(i + 1, q);
                // (i,i) and (i+1,i+1) are zero, (i,i+1) = alpha != 0:
                // turn the pair into pivots -alpha and alpha.
                a.add_row_col(i + 1, i, Scalar::exact(1, 2));
                a.add_row_col(i, i + 1, Scalar::exact(-1));
            }
        }
        const Scalar pivot = a.at(i, i);
        for (int r = i + 1; r <= n; ++r)
            if (!is_zero(a.at(r, i)))
                a.add_row_col(r, i, -div(a.at(r, i), pivot));
    }
    return a.diagonal();
}

Scalar bareiss_determinant(const DenseSymmetric& a) {
    if (a.mode() != ScalarMode::Exact)
        throw ModeMismatch();
    const int n = a.order();
    if (n == 0)
        return Scalar::one(ScalarMode::Exact);
    std::vector<std::vector<mpq_class>> m(n + 1, std::vector<mpq_class>(n + 1, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m[i][j] = a.at(i, j).rat();

    int sign = 1;
    mpq_class prev = 1;
    for (int k = 1; k < n; ++k) {
        if (m[k][k] == 0) {
            int r = 0;
            for (int rr = k + 1; rr <= n && !r; ++rr)
                if (m[rr][k] != 0)
                    r = rr;
            if (!r)
                return Scalar::exact(mpq_class(0)); // zero pivot column
            std::swap(m[k], m[r]);
            sign = -sign;
        }
        for (int i = k + 1; i <= n; ++i)
            for (int j = k + 1; j <= n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    mpq_class det = m[n][n] * sign;
    det.canonicalize();
    return Scalar::exact(det);
}

// --- trace replay ---------------------------------------------------------

TraceReplay replay_trace(std::istream& trace, const SparseSymmetricMatrix& source,
                         const std::function<void(int, const DenseSymmetric&)>& at_node) {
    const int n = source.order();
    TraceReplay res{DenseSymmetric(n, source.mode()), {}};
    std::vector<char> pulled(static_cast<size_t>(n + 1) * (n + 1), 0);

    auto index_ok = [n](long v) { return v >= 1 && v <= n; };
    std::string line;
    long lineno = 0;
    while (std::getline(trace, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos)
            continue;
        std::istringstream ss(line);
        std::string op;
        ss >> op;
        auto parse_value = [&](const std::string& text) {
            try {
                return Scalar::parse(text, source.mode());
            } catch (const Error& e) {
                throw MalformedTrace(lineno, e.what());
            }
        };
        auto require_end = [&]() {
            std::string extra;
            if (ss >> extra)
                throw MalformedTrace(lineno, "trailing tokens");
        };

        if (op == "addrow") {
            long t = 0, s = 0;
            std::string c;
            if (!(ss >> t >> s >> c) || !index_ok(t) || !index_ok(s) || t == s)
                throw MalformedTrace(lineno, "bad addrow");
            require_end();
            res.matrix.add_row_col(static_cast<int>(t), static_cast<int>(s), parse_value(c));
        } else if (op == "swap") {
            long x = 0, y = 0;
            if (!(ss >> x >> y) || !index_ok(x) || !index_ok(y))
                throw MalformedTrace(lineno, "bad swap");
            require_end();
            res.matrix.swap_row_col(static_cast<int>(x), static_cast<int>(y));
        } else if (op == "emit") {
            long v = 0;
            std::string d;
            if (!(ss >> v >> d) || !index_ok(v))
                throw MalformedTrace(lineno, "bad emit");
            require_end();
            res.emitted.emplace_back(static_cast<int>(v), parse_value(d));
        } else if (op == "entry") {
            long u = 0, v = 0;
            if (!(ss >> u >> v) || !index_ok(u) || !index_ok(v))
                throw MalformedTrace(lineno, "bad entry");
            require_end();
            auto [lo, hi] = std::minmax(u, v);
            size_t key = static_cast<size_t>(lo) * (n + 1) + static_cast<size_t>(hi);
            if (pulled[key])
                throw MalformedTrace(lineno, "entry " + std::to_string(u) + " " +
                                                 std::to_string(v) + " pulled twice");
            pulled[key] = 1;
            Scalar val = source.at(static_cast<int>(u), static_cast<int>(v));
            res.matrix.at(static_cast<int>(u), static_cast<int>(v)) += val;
            if (u != v)
                res.matrix.at(static_cast<int>(v), static_cast<int>(u)) += val;
        } else if (op == "node") {
            long i = 0;
            if (!(ss >> i) || i < 1)
                throw MalformedTrace(lineno, "bad node marker");
            require_end();
            if (at_node)
                at_node(static_cast<int>(i), res.matrix);
        } else {
            throw MalformedTrace(lineno, "unknown operation '" + op + "'");
        }
    }
    return res;
}

// --- random instances -------------------------------------------------------

namespace {

// mt19937_64 plus rejection sampling, so streams are identical on every
// platform (uniform_int_distribution is implementation-defined).
class Rng {
public:
    explicit Rng(unsigned long long seed) : eng_(seed) {}

    std::uint64_t below(std::uint64_t bound) {
        assert(bound > 0);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        for (;;) {
            std::uint64_t x = eng_();
            if (x < limit)
                return x % bound;
        }
    }
    int int_in(int lo, int hi) { // inclusive
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }
    bool chance(double p) {
        if (p <= 0)
            return false;
        if (p >= 1)
            return true;
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53 < p;
    }

private:
    std::mt19937_64 eng_;
};

} // namespace

Instance random_instance(int n, int k, unsigned long long seed, const InstanceOptions& options) {
    if (n < 1)
        throw IndexOutOfRange(n, 1);
    if (k < 0)
        throw IndexOutOfRange(k, n);
    assert(options.value_bound >= 1);
    const int kk = std::min(k, n - 1);
    const int base = kk + 1; // every bag gets exactly this many vertices
    Rng rng(seed);

    TreeDecomposition td;
    td.bags.assign(1, {});
    td.bags.push_back([&] {
        std::vector<int> first(base);
        for (int v = 1; v <= base; ++v)
            first[v - 1] = v;
        return first;
    }());
    for (int v = base + 1; v <= n; ++v) {
        int t = rng.int_in(1, static_cast<int>(td.bags.size()) - 1);
        std::vector<int> pool = td.bags[t];
        for (int i = 0; i < kk; ++i) // partial shuffle: first kk = random sample
            std::swap(pool[i], pool[i + static_cast<int>(rng.below(pool.size() - i))]);
        std::vector<int> bag(pool.begin(), pool.begin() + kk);
        bag.push_back(v);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        td.edges.emplace_back(t, static_cast<int>(td.bags.size()) - 1);
    }
    td.node_count = static_cast<int>(td.bags.size()) - 1;
    td.root = 0;

    std::set<std::pair<int, int>> candidates;
    for (int i = 1; i <= td.node_count; ++i) {
        const auto& bag = td.bags[i];
        for (size_t x = 0; x < bag.size(); ++x)
            for (size_t y = x + 1; y < bag.size(); ++y)
                candidates.emplace(bag[x], bag[y]);
    }

    auto value = [&] {
        int v = rng.int_in(1, options.value_bound);
        if (rng.chance(0.5))
            v = -v;
        return options.mode == ScalarMode::Exact ? Scalar::exact(v)
                                                 : Scalar::real(static_cast<double>(v));
    };
    std::vector<SparseSymmetricMatrix::Entry> entries;
    for (int v = 1; v <= n; ++v)
        if (!rng.chance(options.zero_diag_fraction))
            entries.push_back({v, v, value()});
    for (auto [u, v] : candidates)
        if (rng.chance(options.pair_density))
            entries.push_back({u, v, value()});

    return Instance{SparseSymmetricMatrix::from_entries(n, entries, options.mode),
                    std::move(td)};
}

TreeDecomposition random_decomposition(int n, int max_width, unsigned long long seed) {
    if (n < 1)
        throw IndexOutOfRange(n, 1);
    if (max_width < 0)
        throw IndexOutOfRange(max_width, n);
    const int cap = max_width + 1;
    Rng rng(seed);

    const int needed = (n + cap - 1) / cap;
    const int m = needed + rng.int_in(0, n + 2);
    std::vector<std::vector<int>> adj(m + 1);
    TreeDecomposition td;
    td.node_count = m;
    td.bags.assign(m + 1, {});
    for (int i = 2; i <= m; ++i) {
        int p = rng.int_in(1, i - 1);
        td.edges.emplace_back(p, i);
        adj[p].push_back(i);
        adj[i].push_back(p);
    }
    td.root = rng.int_in(1, m);

    // Every vertex gets a home bag first (m*cap >= n, so a slot always
    // exists), then occurrence sets grow along tree edges while room lasts,
    // keeping them connected.
    std::vector<int> home(n + 1, 0);
    for (int v = 1; v <= n; ++v) {
        int r = rng.int_in(1, m);
        while (static_cast<int>(td.bags[r].size()) >= cap)
            r = r % m + 1;
        home[v] = r;
        td.bags[r].push_back(v);
    }
    std::vector<int> mark(m + 1, 0);
    for (int v = 1; v <= n; ++v) {
        std::vector<int> occ = {home[v]};
        mark[home[v]] = v;
        while (rng.chance(0.5)) {
            std::vector<int> frontier; // repeats just bias the pick a little
            for (int x : occ)
                for (int y : adj[x])
                    if (mark[y] != v && static_cast<int>(td.bags[y].size()) < cap)
                        frontier.push_back(y);
            if (frontier.empty())
                break;
            int y = frontier[rng.below(frontier.size())];
            mark[y] = v;
            occ.push_back(y);
            td.bags[y].push_back(v);
        }
    }
    for (auto& bag : td.bags)
        std::sort(bag.begin(), bag.end());
    return td;
}

} // namespace treediag
