#pragma once

#include "treediag/boxes.hpp"

namespace treediag {

// Signs of a diagonal, which by Sylvester's law are the signs of the
// eigenvalues of any matrix congruent to it.
struct Inertia {
    long long positive = 0;
    long long negative = 0;
    long long zero = 0;

    long long rank() const { return positive + negative; }
    bool operator==(const Inertia&) const = default;
};

Inertia inertia_of(const DiagonalArray& d, double tol = 0.0);

// Product of the diagonal; row operations with unit determinant and paired
// swaps preserve it, so this is the determinant of the original matrix.
Scalar determinant_of(const DiagonalArray& d);

// True when a real-mode diagonal has entries close enough to the zero
// threshold that the reported inertia should be treated with suspicion.
bool tolerance_sensitive(const DiagonalArray& d, double tol);

struct IntervalEndpoint {
    enum Kind { NegativeInfinity, Finite, PositiveInfinity };
    Kind kind = Finite;
    Scalar value; // meaningful only when kind == Finite

    static IntervalEndpoint neg_inf() { return {NegativeInfinity, Scalar()}; }
    static IntervalEndpoint pos_inf() { return {PositiveInfinity, Scalar()}; }
    static IntervalEndpoint at(Scalar c) { return {Finite, std::move(c)}; }
};

// Number of eigenvalues of m that are <= c, by the inertia of m - cI.
long long count_eigenvalues_leq(const SparseSymmetricMatrix& m, const NiceTreeDecomposition& t,
                                const Scalar& c, const DiagonalizeOptions& options = {});

// Number of eigenvalues in the half-open interval (a, b]. Throws
// InvalidInterval unless a < b.
long long count_eigenvalues_in(const SparseSymmetricMatrix& m, const NiceTreeDecomposition& t,
                               const IntervalEndpoint& a, const IntervalEndpoint& b,
                               const DiagonalizeOptions& options = {});

} // namespace treediag
