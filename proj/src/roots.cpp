#include "bergman/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bergman/errors.hpp"

namespace bergman {

const char* to_string(DiskPosition pos) {
    switch (pos) {
        case DiskPosition::Inside: return "INSIDE";
        case DiskPosition::OnCircle: return "ON_CIRCLE";
        case DiskPosition::Outside: return "OUTSIDE";
    }
    return "?";
}

int RootSet::total_multiplicity() const {
    int n = 0;
    for (const Root& r : roots) n += r.multiplicity;
    return n;
}

std::vector<Complex> RootSet::expanded() const {
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(total_multiplicity()));
    for (const Root& r : roots)
        for (int i = 0; i < r.multiplicity; ++i) out.push_back(r.location);
    return out;
}

DiskPosition classify_against_circle(Complex z, double boundary_band) {
    double m = std::abs(z);
    if (std::abs(m - 1.0) <= boundary_band) return DiskPosition::OnCircle;
    return m < 1.0 ? DiskPosition::Inside : DiskPosition::Outside;
}

namespace {

// Serial Aberth–Ehrlich sweep; updates in place, returns the largest
// relative correction. Gauss–Seidel order keeps it deterministic and
// speeds convergence.
double aberth_sweep(const ComplexPoly& monic, std::vector<Complex>& z) {
    const std::size_t d = z.size();
    double worst = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        auto [v, dv] = monic.eval_with_derivative(z[i]);
        if (v == 0.0) continue;
        Complex newton;
        if (std::abs(dv) > std::numeric_limits<double>::min()) {
            newton = v / dv;
        } else {
            // stationary point: nudge off it
            z[i] += Complex(1e-8, 1e-8) * (1.0 + std::abs(z[i]));
            worst = std::max(worst, 1e-8);
            continue;
        }
        Complex repulsion = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            if (j == i) continue;
            Complex diff = z[i] - z[j];
            if (diff == 0.0) diff = Complex(1e-14, 0.0);
            repulsion += 1.0 / diff;
        }
        Complex denom = 1.0 - newton * repulsion;
        Complex step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
        z[i] -= step;
        worst = std::max(worst, std::abs(step) / (1.0 + std::abs(z[i])));
    }
    return worst;
}

void newton_polish(const ComplexPoly& poly, std::vector<Complex>& z) {
    for (Complex& r : z) {
        for (int step = 0; step < 3; ++step) {
            auto [v, dv] = poly.eval_with_derivative(r);
            if (v == 0.0 || std::abs(dv) < 1e-300) break;
            Complex delta = v / dv;
            // near multiple roots Newton may overshoot; keep steps local
            if (std::abs(delta) > 0.5 * (1.0 + std::abs(r))) break;
            r -= delta;
        }
    }
}

}  // namespace

RootSet find_roots(const ComplexPoly& poly, const Config& config) {
    if (poly.is_zero()) throw ZeroPolynomial();
    RootSet result;
    if (poly.degree() == 0) return result;

    const double scale = poly.coeff_scale();

    // exact zero roots first: leading zero coefficients shift out exactly
    std::vector<Complex> work = poly.coeffs();
    int zero_mult = 0;
    while (work.size() > 1 && work.front() == 0.0) {
        work.erase(work.begin());
        ++zero_mult;
    }
    ComplexPoly reduced((std::vector<Complex>(work)));
    const int d = reduced.degree();

    std::vector<Complex> approx;
    if (d == 1) {
        approx.push_back(-reduced.coeff(0) / reduced.coeff(1));
    } else if (d == 2) {
        // numerically stable quadratic formula
        Complex a = reduced.coeff(2), b = reduced.coeff(1), c = reduced.coeff(0);
        Complex disc = std::sqrt(b * b - 4.0 * a * c);
        Complex q = (std::real(std::conj(b) * disc) >= 0.0) ? -0.5 * (b + disc) : -0.5 * (b - disc);
        if (q == 0.0) {
            approx = {Complex(0.0), Complex(0.0)};
        } else {
            approx = {q / a, c / q};
        }
    } else if (d >= 3) {
        // monic copy for the iteration
        std::vector<Complex> mc = reduced.coeffs();
        Complex lead = mc.back();
        for (Complex& x : mc) x /= lead;
        ComplexPoly monic((std::vector<Complex>(mc)));

        // perturbed circle of initial guesses; radius from the geometric
        // mean estimate clamped by the Cauchy bound
        double cauchy = 0.0;
        for (int i = 0; i < d; ++i) cauchy = std::max(cauchy, std::abs(monic.coeff(i)));
        cauchy += 1.0;
        double r0 = std::pow(std::abs(monic.coeff(0)), 1.0 / d);
        r0 = std::clamp(r0, 1e-3, cauchy);
        approx.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) {
            double theta = 2.0 * std::numbers::pi * (i + 0.5) / d + 0.4;
            double radius = r0 * (1.0 + 1e-3 * static_cast<double>(i % 7));
            approx[static_cast<std::size_t>(i)] = std::polar(radius, theta);
        }

        // multiple roots stall the correction test while the values are
        // already at tolerance, so the cap alone is not a failure: the
        // residual gate below decides
        const int cap = config.root_iter_cap();
        for (int it = 0; it < cap; ++it) {
            if (aberth_sweep(monic, approx) < 1e-14) break;
        }
    }

    if (d >= 1) newton_polish(reduced, approx);

    // cluster roots closer than cluster_tol into multiple roots
    const std::size_t m = approx.size();
    std::vector<int> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(approx[i] - approx[j]) <= config.cluster_tol) {
                int a = find(static_cast<int>(i)), b = find(static_cast<int>(j));
                if (a != b) parent[static_cast<std::size_t>(b)] = a;
            }

    std::vector<Root> merged;
    for (std::size_t i = 0; i < m; ++i) {
        if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
        Complex sum = 0.0;
        int count = 0;
        for (std::size_t j = 0; j < m; ++j)
            if (find(static_cast<int>(j)) == static_cast<int>(i)) {
                sum += approx[j];
                ++count;
            }
        Root r;
        r.location = sum / static_cast<double>(count);
        r.multiplicity = count;
        merged.push_back(r);
    }

    if (zero_mult > 0) {
        Root r;
        r.location = 0.0;
        r.multiplicity = zero_mult;
        merged.push_back(r);
    }

    for (Root& r : merged) {
        r.residual = std::abs(poly.eval(r.location)) / scale;
        r.position = classify_against_circle(r.location, config.boundary_band);
        if (r.residual > config.root_residual_tol)
            throw NonConvergence("find_roots: residual " + std::to_string(r.residual) +
                                 " above tolerance at root (" + std::to_string(r.location.real()) +
                                 "," + std::to_string(r.location.imag()) + ")");
    }

    std::sort(merged.begin(), merged.end(), [](const Root& a, const Root& b) {
        if (a.location.real() != b.location.real()) return a.location.real() < b.location.real();
        return a.location.imag() < b.location.imag();
    });
    result.roots = std::move(merged);
    return result;
}

DiskCount count_in_disk(const ComplexPoly& poly, const Config& config) {
    if (poly.is_zero()) throw ZeroPolynomial();
    if (poly.degree() == 0) return {0, false};
    RootSet rs = find_roots(poly, config);
    DiskCount out;
    for (const Root& r : rs.roots) {
        if (r.position == DiskPosition::Inside) out.inside += r.multiplicity;
        if (r.position == DiskPosition::OnCircle) out.on_circle = true;
    }
    return out;
}

namespace {

// O(n^3) Hungarian assignment with potentials (rows = A, cols = B).
std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(static_cast<std::size_t>(n + 1)), v(static_cast<std::size_t>(n + 1));
    std::vector<int> way(static_cast<std::size_t>(n + 1)), match(static_cast<std::size_t>(n + 1), 0);
    for (int i = 1; i <= n; ++i) {
        match[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(n + 1), inf);
        std::vector<char> used(static_cast<std::size_t>(n + 1), false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            int i0 = match[static_cast<std::size_t>(j0)], j1 = 0;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                double cur = cost[static_cast<std::size_t>(i0 - 1)][static_cast<std::size_t>(j - 1)] -
                             u[static_cast<std::size_t>(i0)] - v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(match[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (match[static_cast<std::size_t>(j0)] != 0);
        do {
            int j1 = way[static_cast<std::size_t>(j0)];
            match[static_cast<std::size_t>(j0)] = match[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> assignment(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= n; ++j)
        if (match[static_cast<std::size_t>(j)] != 0)
            assignment[static_cast<std::size_t>(match[static_cast<std::size_t>(j)] - 1)] = j - 1;
    return assignment;
}

std::vector<int> greedy_two_swap(const std::vector<std::vector<double>>& cost) {
    const int n = static_cast<int>(cost.size());
    std::vector<int> assignment(static_cast<std::size_t>(n), -1);
    std::vector<char> taken(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j)
            if (!taken[static_cast<std::size_t>(j)] &&
                cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] < best_d) {
                best_d = cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                best = j;
            }
        assignment[static_cast<std::size_t>(i)] = best;
        taken[static_cast<std::size_t>(best)] = true;
    }
    bool improved = true;
    while (improved) {
        improved = false;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                auto c = [&](int r, int col) {
                    return cost[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
                };
                int ai = assignment[static_cast<std::size_t>(i)], aj = assignment[static_cast<std::size_t>(j)];
                if (c(i, aj) + c(j, ai) < c(i, ai) + c(j, aj) - 1e-15) {
                    std::swap(assignment[static_cast<std::size_t>(i)], assignment[static_cast<std::size_t>(j)]);
                    improved = true;
                }
            }
    }
    return assignment;
}

}  // namespace

RootMatching match_roots(const RootSet& a, const RootSet& b) {
    std::vector<Complex> ea = a.expanded(), eb = b.expanded();
    if (ea.size() != eb.size())
        throw DegreeMismatch("match_roots: " + std::to_string(ea.size()) + " vs " +
                             std::to_string(eb.size()) + " roots with multiplicity");
    RootMatching out;
    const int n = static_cast<int>(ea.size());
    if (n == 0) return out;

    std::vector<std::vector<double>> cost(static_cast<std::size_t>(n),
                                          std::vector<double>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                std::abs(ea[static_cast<std::size_t>(i)] - eb[static_cast<std::size_t>(j)]);

    std::vector<int> assignment;
    if (n <= 12) {
        assignment = hungarian(cost);
        out.exact = true;
    } else {
        assignment = greedy_two_swap(cost);
        out.exact = false;
    }
    for (int i = 0; i < n; ++i) {
        int j = assignment[static_cast<std::size_t>(i)];
        double dist = cost[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        out.pairs.push_back({i, j, dist});
        out.total_distance += dist;
    }
    return out;
}

}  // namespace bergman
