#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

#include "treediag/matrix.hpp"
#include "treediag/treedecomp.hpp"

namespace treediag {

// Straightforward dense symmetric matrix used by the reference algorithms and
// by trace replay. Indices are 1-based like everywhere else.
class DenseSymmetric {
public:
    DenseSymmetric() : DenseSymmetric(0, ScalarMode::Exact) {}
    DenseSymmetric(int n, ScalarMode mode)
        : n_(n), mode_(mode),
          a_(static_cast<size_t>(n + 1) * (n + 1), Scalar::zero(mode)) {}

    int order() const { return n_; }
    ScalarMode mode() const { return mode_; }

    Scalar& at(int u, int v) { return a_[static_cast<size_t>(u) * (n_ + 1) + v]; }
    const Scalar& at(int u, int v) const { return a_[static_cast<size_t>(u) * (n_ + 1) + v]; }

    // row t += c * row s, then column t += c * column s (a congruence step)
    void add_row_col(int t, int s, const Scalar& c);
    void swap_row_col(int a, int b);

    bool is_diagonal(double tol = 0.0) const;
    std::vector<Scalar> diagonal() const; // [1..n], index 0 unused

private:
    int n_;
    ScalarMode mode_;
    std::vector<Scalar> a_;
};

DenseSymmetric dense_from(const SparseSymmetricMatrix& m);

// Reference diagonalization by congruence, no decomposition involved: pivot
// on the diagonal, repairing zero pivots with a symmetric swap or, when the
// whole remaining diagonal is zero, the two-sided trick that turns an
// off-diagonal pair (alpha) into the pivots -alpha, +alpha. Exact mode only.
// The returned diagonal is congruent to the input, so it has the same
// inertia, and — all transforms having determinant +-1 — the same
// determinant (the product of its entries).
std::vector<Scalar> dense_congruent_diagonalize(DenseSymmetric a);

// Fraction-free elimination determinant (exact mode only). Independent of
// any congruence machinery; used to cross-check determinants.
Scalar bareiss_determinant(const DenseSymmetric& a);

// Replay of a textual operation trace (see trace.hpp) against source's
// entries, starting from the all-zero matrix. Ops use source's scalar mode.
// The at_node callback, when set, observes the working matrix right after
// each "node <i>" line. Throws MalformedTrace on syntax errors, unknown ops,
// out-of-range indices, or an entry pulled in twice.
struct TraceReplay {
    DenseSymmetric matrix;
    std::vector<std::pair<int, Scalar>> emitted; // in emission order
};
TraceReplay replay_trace(std::istream& trace, const SparseSymmetricMatrix& source,
                         const std::function<void(int, const DenseSymmetric&)>& at_node = {});

// Random test instances: a symmetric matrix together with a (non-nice) tree
// decomposition of its underlying graph, built by growing bags of width at
// most k along a random tree so validity holds by construction. Entry values
// are nonzero integers in [-value_bound, value_bound]; each diagonal entry is
// zeroed with probability zero_diag_fraction, and each candidate off-diagonal
// pair (one co-occurring in some bag) is kept with probability pair_density.
// Deterministic for a given (n, k, seed, options).
struct InstanceOptions {
    double zero_diag_fraction = 0.5;
    double pair_density = 0.5;
    int value_bound = 4;
    ScalarMode mode = ScalarMode::Exact;
};
struct Instance {
    SparseSymmetricMatrix matrix;
    TreeDecomposition decomposition;
};
Instance random_instance(int n, int k, unsigned long long seed,
                         const InstanceOptions& options = {});

// Random raw decomposition exercising the nicifier: a random tree whose bags
// are grown as connected vertex subtrees (occurrence connectivity holds by
// construction), with bag sizes capped at max_width + 1. Bags may be empty,
// duplicated, or nested; every vertex 1..n appears somewhere.
TreeDecomposition random_decomposition(int n, int max_width, unsigned long long seed);

} // namespace treediag
