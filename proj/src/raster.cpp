#include "bergman/raster.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <thread>

#include <json.hpp>

#include "bergman/errors.hpp"

namespace bergman::raster {

const char* to_string(CellCode code) {
    switch (code) {
        case CellCode::EssentialBand: return "ESSENTIAL_BAND";
        case CellCode::FilledPositiveWinding: return "FILLED_POSITIVE_WINDING";
        case CellCode::EigenRegion: return "EIGEN_REGION";
        case CellCode::Resolvent: return "RESOLVENT";
        case CellCode::IsolatedMark: return "ISOLATED_MARK";
        case CellCode::Ambiguous: return "AMBIGUOUS";
    }
    return "?";
}

unsigned char pgm_gray(CellCode code) {
    switch (code) {
        case CellCode::EssentialBand: return 0;
        case CellCode::IsolatedMark: return 32;
        case CellCode::FilledPositiveWinding: return 96;
        case CellCode::EigenRegion: return 160;
        case CellCode::Ambiguous: return 224;
        case CellCode::Resolvent: return 255;
    }
    return 255;
}

Complex RasterGrid::pixel_center(int col, int row) const {
    double x = bbox.re_min + (col + 0.5) * (bbox.re_max - bbox.re_min) / width;
    double y = bbox.im_max - (row + 0.5) * (bbox.im_max - bbox.im_min) / height;
    return {x, y};
}

BBox default_bbox(const HarmonicSymbol& s, const Config& config) {
    spectral::Analyzer analyzer(s, config);
    BBox box{1e300, -1e300, 1e300, -1e300};
    for (const Complex& c : analyzer.curve_samples()) {
        box.re_min = std::min(box.re_min, c.real());
        box.re_max = std::max(box.re_max, c.real());
        box.im_min = std::min(box.im_min, c.imag());
        box.im_max = std::max(box.im_max, c.imag());
    }
    double dre = 0.25 * (box.re_max - box.re_min), dim = 0.25 * (box.im_max - box.im_min);
    if (dre == 0.0) dre = 0.5;
    if (dim == 0.0) dim = 0.5;
    box.re_min -= dre / 2.0;
    box.re_max += dre / 2.0;
    box.im_min -= dim / 2.0;
    box.im_max += dim / 2.0;
    return box;
}

RasterGrid rasterize(const HarmonicSymbol& s, BBox bbox, int width, int height, int n_max,
                     const Config& config) {
    if (bbox.degenerate()) throw InvalidParams("rasterize: degenerate bbox");
    if (width < 1 || height < 1 || static_cast<long>(width) * height > 4096L * 4096L)
        throw InvalidParams("rasterize: resolution out of range (max 4096^2)");

    RasterGrid grid;
    grid.bbox = bbox;
    grid.width = width;
    grid.height = height;
    grid.symbol = s;
    grid.n_max = n_max;
    grid.config = config;
    grid.cells.assign(static_cast<std::size_t>(width) * height, CellCode::Resolvent);

    spectral::Analyzer analyzer(s, config);

    auto classify_row = [&](int row) {
        for (int col = 0; col < width; ++col) {
            Complex lambda = grid.pixel_center(col, row);
            CellCode code;
            try {
                spectral::Classification cls = analyzer.classify_point(lambda, n_max);
                switch (cls.kind) {
                    case spectral::PointClass::Essential: code = CellCode::EssentialBand; break;
                    case spectral::PointClass::FilledWinding: code = CellCode::FilledPositiveWinding; break;
                    case spectral::PointClass::EigenRegionIndexPositive: code = CellCode::EigenRegion; break;
                    case spectral::PointClass::Resolvent: code = CellCode::Resolvent; break;
                    case spectral::PointClass::IsolatedEigen: code = CellCode::IsolatedMark; break;
                    case spectral::PointClass::Ambiguous: code = CellCode::Ambiguous; break;
                    default: code = CellCode::Ambiguous; break;
                }
            } catch (const Error&) {
                code = CellCode::Ambiguous;
            }
            grid.cells[static_cast<std::size_t>(row) * width + col] = code;
        }
    };

    int workers = config.threads > 0 ? config.threads
                                     : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, std::min(workers, height));
    if (workers == 1) {
        for (int row = 0; row < height; ++row) classify_row(row);
    } else {
        // static row partition: each worker owns disjoint rows, so the
        // result is independent of the worker count
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t] {
                for (int row = t; row < height; row += workers) classify_row(row);
            });
        for (auto& th : pool) th.join();
    }

    // stamp certified Λ points on their nearest pixel
    spectral::LambdaSet lambda_set = analyzer.enumerate_lambda(n_max);
    for (const spectral::EigenCertificate& cert : lambda_set.lambdas) {
        double re = cert.lambda.real(), im = cert.lambda.imag();
        if (re < bbox.re_min || re > bbox.re_max || im < bbox.im_min || im > bbox.im_max) continue;
        int col = std::clamp(static_cast<int>((re - bbox.re_min) / (bbox.re_max - bbox.re_min) * width), 0,
                             width - 1);
        int row = std::clamp(static_cast<int>((bbox.im_max - im) / (bbox.im_max - bbox.im_min) * height), 0,
                             height - 1);
        grid.cells[static_cast<std::size_t>(row) * width + col] = CellCode::IsolatedMark;
    }
    return grid;
}

namespace {

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

std::string render_pgm(const RasterGrid& grid) {
    std::string out = "P5\n" + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\n255\n";
    out.reserve(out.size() + grid.cells.size());
    for (CellCode code : grid.cells) out.push_back(static_cast<char>(pgm_gray(code)));
    return out;
}

std::string render_svg(const RasterGrid& grid) {
    const double px_w = (grid.bbox.re_max - grid.bbox.re_min) / grid.width;
    const double px_h = (grid.bbox.im_max - grid.bbox.im_min) / grid.height;
    auto to_x = [&](double re) { return (re - grid.bbox.re_min) / px_w; };
    auto to_y = [&](double im) { return (grid.bbox.im_max - im) / px_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(grid.width) + "\" height=\"" + std::to_string(grid.height) +
           "\" viewBox=\"0 0 " + std::to_string(grid.width) + " " + std::to_string(grid.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";

    // winding regions and bands as row-run rectangles; resolvent stays background
    const char* fill_of[6] = {"#000000", "#4060c0", "#80d080", "#ffffff", "#c02020", "#e0b040"};
    for (int row = 0; row < grid.height; ++row) {
        int col = 0;
        while (col < grid.width) {
            CellCode code = grid.at(col, row);
            int run = 1;
            while (col + run < grid.width && grid.at(col + run, row) == code) ++run;
            if (code != CellCode::Resolvent && code != CellCode::IsolatedMark) {
                svg += "<rect x=\"" + std::to_string(col) + "\" y=\"" + std::to_string(row) +
                       "\" width=\"" + std::to_string(run) +
                       "\" height=\"1\" fill=\"" + fill_of[static_cast<int>(code)] + "\"/>\n";
            }
            col += run;
        }
    }

    // essential curve polyline over the grid
    spectral::Analyzer analyzer(grid.symbol, grid.config);
    svg += "<polyline class=\"essential-curve\" fill=\"none\" stroke=\"#202020\" stroke-width=\"0.75\" points=\"";
    bool first = true;
    for (const Complex& c : analyzer.curve_samples()) {
        if (!first) svg += " ";
        svg += fmt(to_x(c.real())) + "," + fmt(to_y(c.imag()));
        first = false;
    }
    if (!analyzer.curve_samples().empty()) {
        const Complex& c = analyzer.curve_samples().front();
        svg += " " + fmt(to_x(c.real())) + "," + fmt(to_y(c.imag()));
    }
    svg += "\"/>\n";

    // Λ markers
    for (int row = 0; row < grid.height; ++row)
        for (int col = 0; col < grid.width; ++col)
            if (grid.at(col, row) == CellCode::IsolatedMark) {
                svg += "<circle class=\"lambda-mark\" cx=\"" + fmt(col + 0.5) + "\" cy=\"" +
                       fmt(row + 0.5) +
                       "\" r=\"4\" fill=\"none\" stroke=\"#c02020\" stroke-width=\"1.5\"/>\n";
            }
    svg += "</svg>\n";
    return svg;
}

nlohmann::json tolerances_json(const Config& config) {
    return {
        {"root_residual_tol", config.root_residual_tol},
        {"cluster_tol", config.cluster_tol},
        {"boundary_band", config.boundary_band},
        {"eigen_condition_tol", config.eigen_condition_tol},
        {"indeterminacy_band", config.indeterminacy_band},
        {"dedup_tol", config.dedup_tol},
        {"arg_samples", config.arg_samples},
    };
}

std::string render_json(const RasterGrid& grid) {
    nlohmann::json doc;
    doc["schema"] = "bergman-spectra/v1";
    doc["kind"] = "raster_grid";
    doc["bbox"] = {grid.bbox.re_min, grid.bbox.re_max, grid.bbox.im_min, grid.bbox.im_max};
    doc["resolution"] = {grid.width, grid.height};
    doc["n_max"] = grid.n_max;
    nlohmann::json coeffs = nlohmann::json::array();
    for (int i = 0; i <= grid.symbol.degree(); ++i)
        coeffs.push_back({grid.symbol.p.coeff(i).real(), grid.symbol.p.coeff(i).imag()});
    doc["symbol"] = {{"p", coeffs}};
    doc["tolerances"] = tolerances_json(grid.config);
    nlohmann::json codes;
    for (int c = 0; c <= 5; ++c)
        codes[std::to_string(c)] = to_string(static_cast<CellCode>(c));
    doc["code_names"] = codes;
    nlohmann::json cells = nlohmann::json::array();
    for (CellCode code : grid.cells) cells.push_back(static_cast<int>(code));
    doc["cells"] = cells;
    return doc.dump();
}

}  // namespace

std::string render(const RasterGrid& grid, RenderFormat format) {
    switch (format) {
        case RenderFormat::Pgm: return render_pgm(grid);
        case RenderFormat::Svg: return render_svg(grid);
        case RenderFormat::Json: return render_json(grid);
    }
    throw InvalidParams("render: unknown format");
}

RasterGrid parse_grid_json(const std::string& text) {
    nlohmann::json doc = nlohmann::json::parse(text);
    RasterGrid grid;
    grid.bbox.re_min = doc.at("bbox").at(0).get<double>();
    grid.bbox.re_max = doc.at("bbox").at(1).get<double>();
    grid.bbox.im_min = doc.at("bbox").at(2).get<double>();
    grid.bbox.im_max = doc.at("bbox").at(3).get<double>();
    grid.width = doc.at("resolution").at(0).get<int>();
    grid.height = doc.at("resolution").at(1).get<int>();
    grid.n_max = doc.at("n_max").get<int>();
    std::vector<Complex> coeffs;
    for (const auto& pair : doc.at("symbol").at("p"))
        coeffs.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    grid.symbol = HarmonicSymbol{ComplexPoly(std::move(coeffs))};
    const auto& tol = doc.at("tolerances");
    grid.config.root_residual_tol = tol.at("root_residual_tol").get<double>();
    grid.config.cluster_tol = tol.at("cluster_tol").get<double>();
    grid.config.boundary_band = tol.at("boundary_band").get<double>();
    grid.config.eigen_condition_tol = tol.at("eigen_condition_tol").get<double>();
    grid.config.indeterminacy_band = tol.at("indeterminacy_band").get<double>();
    grid.config.dedup_tol = tol.at("dedup_tol").get<double>();
    grid.config.arg_samples = tol.at("arg_samples").get<int>();
    for (const auto& cell : doc.at("cells"))
        grid.cells.push_back(static_cast<CellCode>(cell.get<int>()));
    return grid;
}

}  // namespace bergman::raster
