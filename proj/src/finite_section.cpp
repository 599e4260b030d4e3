#include "bergman/finite_section.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bergman/errors.hpp"

namespace bergman::matrix {

const char* const kRadialShiftWeylNote =
    "compact backward weighted shift: spectrum and essential spectrum are both {0}, "
    "omega = {0}, yet pi00 = {0}; Weyl's theorem fails for this operator";

const char* to_string(SeriesVerdict v) {
    switch (v) {
        case SeriesVerdict::Decaying: return "DECAYING";
        case SeriesVerdict::Growing: return "GROWING";
        case SeriesVerdict::Undecided: return "UNDECIDED";
    }
    return "?";
}

FiniteSection::FiniteSection(int size, int sub_bands, std::string provenance)
    : size_(size), sub_bands_(sub_bands), provenance_(std::move(provenance)) {
    bands_.assign(static_cast<std::size_t>(sub_bands_) + 2,
                  std::vector<Complex>(static_cast<std::size_t>(size_), Complex(0.0)));
}

Complex FiniteSection::entry(int row, int col) const {
    int d = row - col + 1;
    if (d < 0 || d > sub_bands_ + 1 || col < 0 || col >= size_ || row < 0 || row >= size_)
        return 0.0;
    return bands_[static_cast<std::size_t>(d)][static_cast<std::size_t>(col)];
}

void FiniteSection::set_entry(int row, int col, Complex value) {
    int d = row - col + 1;
    bands_.at(static_cast<std::size_t>(d)).at(static_cast<std::size_t>(col)) = value;
}

std::vector<Complex> FiniteSection::apply(const std::vector<Complex>& x) const {
    std::vector<Complex> y(static_cast<std::size_t>(size_), Complex(0.0));
    for (int col = 0; col < size_; ++col) {
        Complex xc = x[static_cast<std::size_t>(col)];
        if (xc == 0.0) continue;
        for (int d = 0; d <= sub_bands_ + 1; ++d) {
            int row = col + d - 1;
            if (row < 0 || row >= size_) continue;
            y[static_cast<std::size_t>(row)] +=
                bands_[static_cast<std::size_t>(d)][static_cast<std::size_t>(col)] * xc;
        }
    }
    return y;
}

std::vector<std::vector<Complex>> FiniteSection::dense() const {
    std::vector<std::vector<Complex>> out(static_cast<std::size_t>(size_),
                                          std::vector<Complex>(static_cast<std::size_t>(size_)));
    for (int r = 0; r < size_; ++r)
        for (int c = 0; c < size_; ++c) out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = entry(r, c);
    return out;
}

double FiniteSection::frobenius_norm() const {
    double sum = 0.0;
    for (const auto& band : bands_)
        for (const Complex& v : band) sum += std::norm(v);
    return std::sqrt(sum);
}

FiniteSection build_section(const HarmonicSymbol& s, int size) {
    if (size < 2) throw InvalidParams("build_section: N must be >= 2");
    const int k = s.degree();
    FiniteSection out(size, k, "harmonic z-bar + p");
    for (int n = 1; n < size; ++n)
        out.set_entry(n - 1, n, std::sqrt(static_cast<double>(n) / (n + 1.0)));
    for (int m = 0; m <= k; ++m) {
        Complex pm = s.p.coeff(m);
        if (pm == 0.0) continue;
        for (int n = 0; n + m < size; ++n)
            out.set_entry(n + m, n, pm * std::sqrt((n + 1.0) / (n + m + 1.0)));
    }
    return out;
}

FiniteSection radial_shift_section(double r, int size) {
    if (!(r > 0.0 && r < 1.0)) throw InvalidParams("radial_shift_section: r must be in (0,1)");
    if (size < 2) throw InvalidParams("radial_shift_section: N must be >= 2");
    FiniteSection out(size, 0, "radial shift chi_{rD}(z) e^{-i arg z}");
    for (int n = 1; n < size; ++n) {
        double w = std::sqrt(static_cast<double>(n) * (n + 1.0)) * 2.0 *
                   std::pow(r, 2 * n + 1) / (2.0 * n + 1.0);
        out.set_entry(n - 1, n, w);
    }
    return out;
}

double SeriesEigenvector::magnitude(int j) const {
    return std::abs(coeffs[static_cast<std::size_t>(j)]) *
           std::exp2(scale_log2[static_cast<std::size_t>(j)]);
}

namespace {

SeriesEigenvector run_series(const HarmonicSymbol& s, Complex lambda, int length,
                             const Config& config) {
    const int k = s.degree();
    std::vector<Complex> q(static_cast<std::size_t>(k) + 1);
    for (int m = 0; m <= k; ++m) q[static_cast<std::size_t>(m)] = s.p.coeff(m);
    q[0] -= lambda;

    SeriesEigenvector out;
    out.lambda = lambda;
    out.coeffs.assign(static_cast<std::size_t>(length) + 1, Complex(0.0));
    out.scale_log2.assign(static_cast<std::size_t>(length) + 1, 0.0);
    out.coeffs[0] = 1.0;

    double current_scale = 0.0;
    for (int j = 0; j < length; ++j) {
        Complex sum = 0.0;
        for (int m = 0; m <= std::min(k, j); ++m) {
            const std::size_t idx = static_cast<std::size_t>(j - m);
            double adjust = out.scale_log2[idx] - current_scale;
            sum += q[static_cast<std::size_t>(m)] * out.coeffs[idx] * std::exp2(adjust);
        }
        Complex next = -((j + 2.0) / (j + 1.0)) * sum;
        // renormalize before the magnitudes leave the comfortable range
        double mag = std::abs(next);
        if (mag > 0x1p+500) {
            next *= 0x1p-512;
            current_scale += 512.0;
        } else if (mag > 0.0 && mag < 0x1p-500) {
            next *= 0x1p+512;
            current_scale -= 512.0;
        }
        out.coeffs[static_cast<std::size_t>(j) + 1] = next;
        out.scale_log2[static_cast<std::size_t>(j) + 1] = current_scale;
    }

    // geometric-mean ratio over the last window, in log2 space so the
    // tracked scales cost nothing; max-window norms make it zero-safe
    const int window = std::min(100, length / 4);
    auto window_log2_max = [&](int from, int to) {
        double best = -std::numeric_limits<double>::infinity();
        for (int j = from; j <= to; ++j) {
            const Complex& c = out.coeffs[static_cast<std::size_t>(j)];
            if (c == 0.0) continue;
            best = std::max(best, std::log2(std::abs(c)) + out.scale_log2[static_cast<std::size_t>(j)]);
        }
        return best;
    };
    double w2 = window_log2_max(length - window, length);
    double w1 = window_log2_max(length - 2 * window, length - window);
    if (std::isinf(w2)) {
        out.growth_ratio = 0.0;  // series terminated: polynomial eigenvector
    } else if (std::isinf(w1)) {
        out.growth_ratio = std::numeric_limits<double>::infinity();
    } else {
        out.growth_ratio = std::exp2((w2 - w1) / window);
    }

    if (out.growth_ratio < 1.0 - config.series_margin)
        out.verdict = SeriesVerdict::Decaying;
    else if (out.growth_ratio > 1.0 + config.series_margin)
        out.verdict = SeriesVerdict::Growing;
    else
        out.verdict = SeriesVerdict::Undecided;
    return out;
}

}  // namespace

SeriesEigenvector series_eigenvector(const HarmonicSymbol& s, Complex lambda, int length,
                                     const Config& config) {
    if (length < 50) throw InvalidParams("series_eigenvector: M must be >= 50");
    SeriesEigenvector out = run_series(s, lambda, length, config);
    if (out.verdict == SeriesVerdict::Undecided)
        out = run_series(s, lambda, 2 * length, config);  // one automatic retry
    return out;
}

double residual(const FiniteSection& section, const SeriesEigenvector& v) {
    const int n = section.size();
    const int k = section.sub_bands();
    const int m = static_cast<int>(v.coeffs.size()) - 1;
    if (n > m - k)
        throw SizeMismatch("residual: need N <= M - k, got N=" + std::to_string(n) +
                           ", M=" + std::to_string(m) + ", k=" + std::to_string(k));

    // orthonormal coordinates at a common scale; entries far below the
    // vector scale flush to zero harmlessly
    double max_scale = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j)
        max_scale = std::max(max_scale, v.scale_log2[static_cast<std::size_t>(j)]);
    std::vector<Complex> chat(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        double adjust = v.scale_log2[static_cast<std::size_t>(j)] - max_scale;
        chat[static_cast<std::size_t>(j)] =
            v.coeffs[static_cast<std::size_t>(j)] * std::exp2(adjust) / std::sqrt(j + 1.0);
    }
    double norm = 0.0;
    for (const Complex& c : chat) norm += std::norm(c);
    norm = std::sqrt(norm);
    for (Complex& c : chat) c /= norm;

    std::vector<Complex> y = section.apply(chat);
    double rss = 0.0;
    // rows through N−k−1 see their full band; the superdiagonal makes the
    // very last row spill regardless of k, so it stays excluded
    const int last_row = std::min(n - k - 1, n - 2);
    for (int row = 0; row <= last_row; ++row)
        rss += std::norm(y[static_cast<std::size_t>(row)] - v.lambda * chat[static_cast<std::size_t>(row)]);
    return std::sqrt(rss);
}

namespace {

struct Givens {
    double c = 1.0;
    Complex s = 0.0;
};

Givens make_givens(Complex a, Complex b) {
    Givens g;
    double absa = std::abs(a);
    if (absa == 0.0) {
        g.c = 0.0;
        g.s = 1.0;
        return g;
    }
    double r = std::hypot(absa, std::abs(b));
    g.c = absa / r;
    g.s = (a / absa) * std::conj(b) / r;
    return g;
}

// eigenvalues of [[a, b], [c, d]]
std::pair<Complex, Complex> eig2x2(Complex a, Complex b, Complex c, Complex d) {
    Complex tr = a + d;
    Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
    return {(tr + disc) / 2.0, (tr - disc) / 2.0};
}

}  // namespace

std::vector<Complex> section_eigenvalues(const FiniteSection& section, const Config& config) {
    const int n = section.size();
    if (n > 2000) throw InvalidParams("section_eigenvalues: dense fallback bound is N <= 2000");

    std::vector<Complex> eigs;
    eigs.reserve(static_cast<std::size_t>(n));

    // triangular sections (pure shifts, constant symbols) are exact
    bool upper = true, lower = true;
    for (int r = 0; r < n && (upper || lower); ++r)
        for (int c = 0; c < n; ++c) {
            if (r > c && section.entry(r, c) != 0.0) upper = false;
            if (r < c && section.entry(r, c) != 0.0) lower = false;
        }
    if (upper || lower) {
        for (int i = 0; i < n; ++i) eigs.push_back(section.entry(i, i));
    } else {
        // transpose is upper Hessenberg (one superdiagonal becomes the
        // single subdiagonal); eigenvalues are transpose-invariant
        std::vector<std::vector<Complex>> h(static_cast<std::size_t>(n),
                                            std::vector<Complex>(static_cast<std::size_t>(n)));
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = section.entry(c, r);

        const double deflate = config.qr_deflation_rel * section.frobenius_norm();
        auto at = [&](int r, int c) -> Complex& {
            return h[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        };

        int hi = n - 1;
        long total_sweeps = 0;
        const long sweep_cap = static_cast<long>(config.qr_max_sweeps_per_eig) * n;
        int stagnant = 0;
        while (hi >= 0) {
            if (hi == 0) {
                eigs.push_back(at(0, 0));
                break;
            }
            // deflate converged subdiagonals
            bool deflated = false;
            for (int i = hi; i >= 1; --i) {
                if (std::abs(at(i, i - 1)) <= deflate) {
                    at(i, i - 1) = 0.0;
                    if (i == hi) {
                        eigs.push_back(at(hi, hi));
                        --hi;
                        stagnant = 0;
                        deflated = true;
                    }
                    break;
                }
            }
            if (deflated) continue;

            // active block [lo, hi]
            int lo = hi;
            while (lo > 0 && at(lo, lo - 1) != 0.0) --lo;
            if (hi - lo == 1) {
                auto [e1, e2] = eig2x2(at(lo, lo), at(lo, hi), at(hi, lo), at(hi, hi));
                eigs.push_back(e1);
                eigs.push_back(e2);
                hi = lo - 1;
                stagnant = 0;
                continue;
            }

            if (++total_sweeps > sweep_cap)
                throw NonConvergence("section_eigenvalues: QR sweep cap exceeded");

            Complex shift;
            if (stagnant > 0 && stagnant % 12 == 0) {
                // exceptional shift to break rare cycles
                shift = at(hi, hi) + Complex(0.75, 0.25) * std::abs(at(hi, hi - 1));
            } else {
                auto [e1, e2] = eig2x2(at(hi - 1, hi - 1), at(hi - 1, hi), at(hi, hi - 1), at(hi, hi));
                shift = (std::abs(e1 - at(hi, hi)) < std::abs(e2 - at(hi, hi))) ? e1 : e2;
            }
            ++stagnant;

            // explicit-shift QR step on the active window via Givens:
            // H − μI = QR, then H ← RQ + μI
            std::vector<Givens> rotations(static_cast<std::size_t>(hi - lo));
            for (int i = lo; i <= hi; ++i) at(i, i) -= shift;
            for (int i = lo; i < hi; ++i) {
                Givens g = make_givens(at(i, i), at(i + 1, i));
                rotations[static_cast<std::size_t>(i - lo)] = g;
                for (int c = i; c <= hi; ++c) {
                    Complex t1 = at(i, c), t2 = at(i + 1, c);
                    at(i, c) = g.c * t1 + g.s * t2;
                    at(i + 1, c) = -std::conj(g.s) * t1 + g.c * t2;
                }
            }
            for (int i = lo; i < hi; ++i) {
                const Givens& g = rotations[static_cast<std::size_t>(i - lo)];
                for (int r = lo; r <= std::min(i + 1, hi); ++r) {
                    Complex t1 = at(r, i), t2 = at(r, i + 1);
                    at(r, i) = g.c * t1 + std::conj(g.s) * t2;
                    at(r, i + 1) = -g.s * t1 + g.c * t2;
                }
            }
            for (int i = lo; i <= hi; ++i) at(i, i) += shift;
        }
    }

    std::sort(eigs.begin(), eigs.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return eigs;
}

}  // namespace bergman::matrix
