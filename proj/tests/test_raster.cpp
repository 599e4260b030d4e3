#include <doctest.h>

#include <array>
#include <cmath>

#include "bergman/constructions.hpp"
#include "bergman/errors.hpp"
#include "bergman/raster.hpp"

using namespace bergman;
using namespace bergman::raster;

namespace {

HarmonicSymbol zbar() { return HarmonicSymbol{ComplexPoly{{0.0}}}; }

RasterGrid all_resolvent_2x2() {
    RasterGrid grid;
    grid.bbox = {0.0, 1.0, 0.0, 1.0};
    grid.width = grid.height = 2;
    grid.cells.assign(4, CellCode::Resolvent);
    grid.symbol = zbar();
    return grid;
}

}  // namespace

TEST_CASE("T_zbar picture: disk of eigenvalues, resolvent outside") {
    RasterGrid grid = rasterize(zbar(), BBox{-2.0, 2.0, -2.0, 2.0}, 128, 128, 10);
    std::array<long, 6> counts{};
    for (int row = 0; row < 128; ++row)
        for (int col = 0; col < 128; ++col) {
            CellCode code = grid.at(col, row);
            ++counts[static_cast<std::size_t>(code)];
            double m = std::abs(grid.pixel_center(col, row));
            if (m < 1.0 - 1e-9) CHECK(code == CellCode::EigenRegion);
            if (m > 1.0 + 1e-9) CHECK(code == CellCode::Resolvent);
        }
    long total = 0;
    for (long c : counts) total += c;
    CHECK(total == 128L * 128L);  // partition property
}

TEST_CASE("(3,1) grid: exactly one isolated mark on the origin pixel") {
    auto params = constructions::build_counterexample(3, 1);
    RasterGrid grid = rasterize(params.symbol(), BBox{-0.1, 0.1, -0.1, 0.1}, 33, 33, 60);
    int marks = 0;
    for (int row = 0; row < 33; ++row)
        for (int col = 0; col < 33; ++col)
            if (grid.at(col, row) == CellCode::IsolatedMark) {
                ++marks;
                Complex center = grid.pixel_center(col, row);
                CHECK(std::abs(center) < 0.1 * 2.0 / 33.0 * 2.0);
            }
    CHECK(marks == 1);
}

TEST_CASE("real coefficients give a vertically symmetric picture") {
    HarmonicSymbol s{ComplexPoly{{0.1, -0.4, 0.3}}};
    RasterGrid grid = rasterize(s, BBox{-2.0, 2.0, -1.5, 1.5}, 64, 48, 20);
    for (int row = 0; row < 48; ++row)
        for (int col = 0; col < 64; ++col)
            CHECK(grid.at(col, row) == grid.at(col, 47 - row));
}

TEST_CASE("PGM bytes for a 2x2 resolvent grid") {
    std::string pgm = render(all_resolvent_2x2(), RenderFormat::Pgm);
    std::string header = "P5\n2 2\n255\n";
    REQUIRE(pgm.size() == header.size() + 4);
    CHECK(pgm.substr(0, header.size()) == header);
    for (std::size_t i = header.size(); i < pgm.size(); ++i) CHECK(pgm[i] == pgm[header.size()]);
}

TEST_CASE("SVG carries exactly one marker per isolated cell") {
    RasterGrid grid = all_resolvent_2x2();
    grid.cells[3] = CellCode::IsolatedMark;
    std::string svg = render(grid, RenderFormat::Svg);
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("lambda-mark", pos)) != std::string::npos) {
        ++count;
        pos += 1;
    }
    CHECK(count == 1);
    CHECK(svg.find("essential-curve") != std::string::npos);
}

TEST_CASE("JSON render round-trips byte-identically") {
    auto params = constructions::build_counterexample(3, 1);
    RasterGrid grid = rasterize(params.symbol(), BBox{-0.05, 0.05, -0.05, 0.05}, 16, 16, 30);
    std::string once = render(grid, RenderFormat::Json);
    RasterGrid parsed = parse_grid_json(once);
    CHECK(render(parsed, RenderFormat::Json) == once);
    CHECK(parsed.cells == grid.cells);
}

TEST_CASE("refinement stability away from classification boundaries") {
    auto params = constructions::build_counterexample(3, 1);
    BBox box{-0.3, 0.3, -0.3, 0.3};
    RasterGrid coarse = rasterize(params.symbol(), box, 48, 48, 40);
    RasterGrid fine = rasterize(params.symbol(), box, 96, 96, 40);
    for (int row = 2; row < 46; ++row)
        for (int col = 2; col < 46; ++col) {
            CellCode code = coarse.at(col, row);
            bool interior = true;
            for (int dr = -2; dr <= 2 && interior; ++dr)
                for (int dc = -2; dc <= 2 && interior; ++dc)
                    if (coarse.at(col + dc, row + dr) != code) interior = false;
            if (!interior) continue;
            for (int dr = 0; dr < 2; ++dr)
                for (int dc = 0; dc < 2; ++dc)
                    CHECK(fine.at(2 * col + dc, 2 * row + dr) == code);
        }
}

TEST_CASE("worker counts do not change the grid") {
    auto params = constructions::build_counterexample(3, 1);
    Config one, four;
    one.threads = 1;
    four.threads = 4;
    BBox box{-0.2, 0.2, -0.2, 0.2};
    RasterGrid g1 = rasterize(params.symbol(), box, 40, 40, 30, one);
    RasterGrid g4 = rasterize(params.symbol(), box, 40, 40, 30, four);
    CHECK(g1.cells == g4.cells);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(rasterize(zbar(), BBox{1.0, 1.0, 0.0, 1.0}, 8, 8, 5), InvalidParams);
    CHECK_THROWS_AS(rasterize(zbar(), BBox{0.0, 1.0, 0.0, 1.0}, 5000, 5000, 5), InvalidParams);
}
