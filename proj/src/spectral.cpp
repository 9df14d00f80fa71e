#include "treediag/spectral.hpp"

#include <cmath>

namespace treediag {

Inertia inertia_of(const DiagonalArray& d, double tol) {
    Inertia in;
    for (const auto& e : d.entries())
        switch (sign_of(e.value, tol)) {
        case Sign::Positive:
            ++in.positive;
            break;
        case Sign::Negative:
            ++in.negative;
            break;
        case Sign::Zero:
            ++in.zero;
            break;
        }
    return in;
}

Scalar determinant_of(const DiagonalArray& d) {
    Scalar det = Scalar::one(d.mode());
    for (const auto& e : d.entries())
        det *= e.value;
    return det;
}

bool tolerance_sensitive(const DiagonalArray& d, double tol) {
    if (d.mode() != ScalarMode::Real || tol <= 0.0)
        return false;
    for (const auto& e : d.entries()) {
        double a = std::fabs(e.value.dbl());
        if (a > tol && a <= 10.0 * tol)
            return true;
    }
    return false;
}

long long count_eigenvalues_leq(const SparseSymmetricMatrix& m, const NiceTreeDecomposition& t,
                                const Scalar& c, const DiagonalizeOptions& options) {
    SparseSymmetricMatrix shifted = m.shift_diagonal(c);
    DiagonalArray d = congruent_diagonal(shifted, t, options);
    Inertia in = inertia_of(d, shifted.zero_tolerance());
    return in.negative + in.zero; // eigenvalue <= c iff eigenvalue of m - cI <= 0
}

namespace {

bool endpoint_less(const IntervalEndpoint& a, const IntervalEndpoint& b) {
    if (a.kind == IntervalEndpoint::NegativeInfinity)
        return b.kind != IntervalEndpoint::NegativeInfinity;
    if (a.kind == IntervalEndpoint::PositiveInfinity)
        return false;
    if (b.kind == IntervalEndpoint::PositiveInfinity)
        return true;
    if (b.kind == IntervalEndpoint::NegativeInfinity)
        return false;
    return a.value < b.value;
}

} // namespace

long long count_eigenvalues_in(const SparseSymmetricMatrix& m, const NiceTreeDecomposition& t,
                               const IntervalEndpoint& a, const IntervalEndpoint& b,
                               const DiagonalizeOptions& options) {
    if (!endpoint_less(a, b))
        throw InvalidInterval();
    long long upto_b = b.kind == IntervalEndpoint::PositiveInfinity
                           ? m.order()
                           : count_eigenvalues_leq(m, t, b.value, options);
    long long upto_a = a.kind == IntervalEndpoint::NegativeInfinity
                           ? 0
                           : count_eigenvalues_leq(m, t, a.value, options);
    return upto_b - upto_a;
}

} // namespace treediag
