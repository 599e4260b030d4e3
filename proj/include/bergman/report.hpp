#ifndef BERGMAN_REPORT_HPP
#define BERGMAN_REPORT_HPP

#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/constructions.hpp"
#include "bergman/spectral.hpp"
#include "bergman/symbol.hpp"

namespace bergman::report {

/// One winding-atlas entry: a probe point and its winding (or the
/// on-curve flag when the query was ambiguous there).
struct AtlasEntry {
    Complex point;
    int winding = 0;
    bool on_curve = false;
};

/// The full analysis artifact: essential curve, certified Λ, winding
/// atlas over a coarse probe grid, Weyl verdict, truncation provenance.
struct SpectralReport {
    HarmonicSymbol symbol;
    std::vector<Complex> essential_samples;
    std::vector<spectral::EigenCertificate> lambda_set;
    std::vector<AtlasEntry> winding_atlas;
    spectral::WeylReport weyl;
    std::string hardy_relation_note;
    int n_max = 0;
    bool complete = false;
    std::string completeness_reason;
    Config config;
};

/// Assemble the report: essential samples, enumerate_lambda(n_max),
/// weyl_report, and a 16×16 winding atlas over the inflated curve box.
SpectralReport analyze(const HarmonicSymbol& s, int n_max, const Config& config = {});

/// Range inclusion consistency check (degree ≤ 2 only; UnsupportedDegree
/// otherwise): every spectrum point the report carries lies within
/// range_tol of the sampled image φ(𝔻) on a grid×grid polar mesh plus
/// the boundary ring at the report's sample resolution.
bool range_inclusion_check(const HarmonicSymbol& s, const SpectralReport& report, int grid,
                           const Config& config = {});

std::string to_json(const SpectralReport& report);

/// Two-section CSV: essential samples (theta,re,im) then the Λ table.
std::string to_csv(const SpectralReport& report);

std::string to_json(const constructions::ConstructionParams& params);
constructions::ConstructionParams construction_from_json(const std::string& text);

std::string to_json(const spectral::Classification& cls, Complex lambda);
std::string to_json(const spectral::InvertibilityWitness& witness);
std::string to_json(const spectral::WeylReport& weyl, bool conditional_flag_known = true);
std::string to_json(const spectral::HyponormalScreen& screen);

}  // namespace bergman::report

#endif
