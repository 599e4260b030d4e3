#ifndef BERGMAN_CONFIG_HPP
#define BERGMAN_CONFIG_HPP

#include <cstdint>

namespace bergman {

/// All tunable tolerances and sizes in one place. Every knob has the
/// default its module documents; the CLI exposes each one as a flag with
/// an environment-variable fallback. Results are deterministic for a
/// fixed Config.
struct Config {
    // polynomial
    double root_residual_tol = 1e-11;  ///< on |P(root)| / max|coeff|
    double cluster_tol = 1e-7;         ///< roots closer than this are one multiple root
    double boundary_band = 1e-9;       ///< |‖root‖ − 1| band for ON_CIRCLE
    int max_root_iters = 200;          ///< Aberth iteration cap
    bool high_precision = false;       ///< raises iteration caps (no big-float fallback)

    // spectral
    double eigen_condition_tol = 1e-8;   ///< on |z²p'(z) − (n+2)/(n+1)|
    double indeterminacy_band = 1e-4;    ///< |v − 1| below this cannot pick an n ≤ n_cap
    double dedup_tol = 1e-9;             ///< λ deduplication in enumerate_lambda
    int n_cap = 10000;                   ///< largest n tried when matching Eq. (1)
    int n_max = 100;                     ///< enumeration depth default
    int arg_samples = 4096;              ///< curve samples for the Δarg cross-check
    int max_arg_samples = 1 << 16;       ///< doubling cap before CrossCheckMismatch
    double screen_margin = 1e-6;         ///< hyponormality: NOT_HYPONORMAL iff min < 1 − margin
    double range_tol = 5e-2;             ///< range_inclusion_check distance tolerance
    int range_grid = 256;                ///< default polar grid for range_inclusion_check

    // matrix
    int section_size = 200;       ///< N default
    int series_length = 400;      ///< M default
    double series_margin = 0.02;  ///< DECAYING/GROWING band around ratio 1
    double qr_deflation_rel = 1e-12;  ///< × ‖A‖_F
    int qr_max_sweeps_per_eig = 80;

    // raster
    int raster_width = 512;
    int raster_height = 512;

    // shared
    std::uint64_t seed = 0x42D1CE5EEDULL;  ///< for randomized test vectors
    int threads = 0;                       ///< 0 = hardware concurrency

    int root_iter_cap() const { return high_precision ? 10 * max_root_iters : max_root_iters; }
};

}  // namespace bergman

#endif
