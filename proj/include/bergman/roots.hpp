#ifndef BERGMAN_ROOTS_HPP
#define BERGMAN_ROOTS_HPP

#include <vector>

#include "bergman/complex_poly.hpp"
#include "bergman/config.hpp"

namespace bergman {

enum class DiskPosition { Inside, OnCircle, Outside };

const char* to_string(DiskPosition pos);

struct Root {
    Complex location;
    int multiplicity = 1;
    double residual = 0.0;  ///< |P(location)| / max|coeff|
    DiskPosition position = DiskPosition::Inside;
};

/// All roots of a polynomial with multiplicities (cluster-merged) and
/// unit-disk classification. Sum of multiplicities equals the degree.
struct RootSet {
    std::vector<Root> roots;

    int total_multiplicity() const;
    /// Roots repeated `multiplicity` times, for matching.
    std::vector<Complex> expanded() const;
};

/// Classify a point against the unit circle with the configured band:
/// Inside iff |z| < 1 − band, OnCircle iff ||z| − 1| ≤ band.
DiskPosition classify_against_circle(Complex z, double boundary_band);

/// Aberth–Ehrlich simultaneous iteration from perturbed-circle starts,
/// followed by 3 guarded Newton polish steps per root. Exact zero roots
/// are factored out up front; clusters within cluster_tol merge into one
/// multiple root. Throws NonConvergence when the iteration cap is hit
/// with residuals above tolerance.
RootSet find_roots(const ComplexPoly& poly, const Config& config = {});

struct DiskCount {
    int inside = 0;
    bool on_circle = false;
};

/// Sum of multiplicities of in-disk roots; the argument-principle zero
/// count behind every winding number here. Degree 0: (0, false) for a
/// nonzero constant, ZeroPolynomial for the zero polynomial.
DiskCount count_in_disk(const ComplexPoly& poly, const Config& config = {});

struct RootPair {
    int index_a = 0;   ///< into the multiplicity-expanded list of A
    int index_b = 0;   ///< into the multiplicity-expanded list of B
    double distance = 0.0;
};

struct RootMatching {
    std::vector<RootPair> pairs;
    double total_distance = 0.0;
    bool exact = true;  ///< Hungarian (degree ≤ 12) vs greedy + 2-swap
};

/// Minimal-total-distance bijection between the multiplicity-expanded
/// root lists. Exact assignment (Hungarian) up to 12 roots, greedy
/// nearest-neighbour with 2-swap refinement above, flagged approximate.
/// Throws DegreeMismatch when the expanded sizes differ.
RootMatching match_roots(const RootSet& a, const RootSet& b);

}  // namespace bergman

#endif
