#ifndef BERGMAN_RASTER_HPP
#define BERGMAN_RASTER_HPP

#include <string>
#include <vector>

#include "bergman/config.hpp"
#include "bergman/spectral.hpp"
#include "bergman/symbol.hpp"

namespace bergman::raster {

enum class CellCode : unsigned char {
    EssentialBand = 0,
    FilledPositiveWinding = 1,
    EigenRegion = 2,
    Resolvent = 3,
    IsolatedMark = 4,
    Ambiguous = 5,
};

const char* to_string(CellCode code);

struct BBox {
    double re_min = -2.0, re_max = 2.0;
    double im_min = -2.0, im_max = 2.0;

    bool degenerate() const { return !(re_max > re_min) || !(im_max > im_min); }
};

/// Pixel-center classification of a λ grid. Row 0 is the top of the
/// image (largest imaginary part); cells are row-major. Classification
/// is bit-identical across runs and worker counts for a fixed Config.
struct RasterGrid {
    BBox bbox;
    int width = 0;
    int height = 0;
    std::vector<CellCode> cells;
    HarmonicSymbol symbol;
    int n_max = 0;
    Config config;

    Complex pixel_center(int col, int row) const;
    CellCode at(int col, int row) const { return cells[static_cast<std::size_t>(row) * width + col]; }
};

/// Classify every pixel center via classify_point, then stamp certified
/// Λ points as ISOLATED_MARK on their nearest pixel. Per-pixel errors
/// become AMBIGUOUS cells; the grid never aborts. Resolution ≤ 4096².
RasterGrid rasterize(const HarmonicSymbol& s, BBox bbox, int width, int height, int n_max,
                     const Config& config = {});

/// Essential-curve bounding box inflated 25%, the default raster window.
BBox default_bbox(const HarmonicSymbol& s, const Config& config = {});

enum class RenderFormat { Pgm, Svg, Json };

/// PGM: binary P5, one documented gray level per code. SVG: winding
/// regions as row-run rectangles, the essential curve as a polyline,
/// Λ as circled markers. JSON: raw grid + metadata. All byte-stable.
std::string render(const RasterGrid& grid, RenderFormat format);

/// Inverse of render(·, Json); round-trips byte-identically.
RasterGrid parse_grid_json(const std::string& text);

/// Gray level of a cell code in the PGM mapping.
unsigned char pgm_gray(CellCode code);

}  // namespace bergman::raster

#endif
