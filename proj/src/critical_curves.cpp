#include "harmlens/critical_curves.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <sstream>
#include <vector>

#include "harmlens/errors.hpp"

namespace harmlens {

namespace {

constexpr double kPhiClamp = -1e30;

// 1 - |r'(z)|^2, the orientation indicator of conj(r(z)) - z.  Poles of r'
// are clamped to a large negative value so they land in the sense-reversing
// sign class.
double phi_at(const Rational& r_prime, Cx z) {
    const Cx d = r_prime.eval(z);
    if (!is_finite(d)) return kPhiClamp;
    const double phi = 1.0 - std::norm(d);
    if (!std::isfinite(phi)) return kPhiClamp;
    return phi;
}

struct Grid {
    Bbox bbox;
    int res = 0;
    double dx = 0.0;
    double dy = 0.0;
    std::vector<double> phi;  // (res+1) x (res+1), row-major in j

    Cx point(int i, int j) const {
        return {bbox.x_min + dx * i, bbox.y_min + dy * j};
    }
    double at(int i, int j) const {
        return phi[static_cast<std::size_t>(j) * (res + 1) + i];
    }
};

Grid sample_grid(const Rational& r_prime, const Bbox& bbox, int res) {
    Grid g;
    g.bbox = bbox;
    g.res = res;
    g.dx = (bbox.x_max - bbox.x_min) / res;
    g.dy = (bbox.y_max - bbox.y_min) / res;
    g.phi.resize(static_cast<std::size_t>(res + 1) * (res + 1));
    for (int j = 0; j <= res; ++j) {
        for (int i = 0; i <= res; ++i) {
            g.phi[static_cast<std::size_t>(j) * (res + 1) + i] = phi_at(r_prime, g.point(i, j));
        }
    }
    return g;
}

// Locates the zero of phi along the segment [a, b] bracketed by opposite
// signs, by Newton steps on t -> phi(a + t (b - a)) with bisection fallback.
Cx refine_edge(const Rational& r_prime, const Rational& r_second, Cx a, Cx b, double phi_a,
               double phi_b, double tol) {
    double lo = 0.0;
    double hi = 1.0;
    double f_lo = phi_a;
    const Cx dir = b - a;
    double t = phi_a / (phi_a - phi_b);
    for (int iter = 0; iter < 40; ++iter) {
        const Cx z = a + t * dir;
        const Cx d1 = r_prime.eval(z);
        const double f = is_finite(d1) ? 1.0 - std::norm(d1) : kPhiClamp;
        if (std::abs(f) <= tol) return z;
        if ((f > 0.0) == (f_lo > 0.0)) {
            lo = t;
            f_lo = f;
        } else {
            hi = t;
        }
        const Cx d2 = r_second.eval(z);
        double t_next;
        if (is_finite(d1) && is_finite(d2)) {
            const double slope = -2.0 * std::real(std::conj(d1) * d2 * dir);
            t_next = slope != 0.0 ? t - f / slope : 0.5 * (lo + hi);
        } else {
            t_next = 0.5 * (lo + hi);
        }
        if (!(t_next > lo) || !(t_next < hi)) t_next = 0.5 * (lo + hi);
        if (std::abs(t_next - t) * std::abs(dir) < 1e-15 * (1.0 + std::abs(a))) {
            return a + t_next * dir;
        }
        t = t_next;
    }
    return a + 0.5 * (lo + hi) * dir;
}

// Global edge ids: even ids are horizontal edges (i, j)-(i+1, j), odd ids
// are vertical edges (i, j)-(i, j+1).
std::int64_t h_edge(int i, int j, int res) {
    return 2 * (static_cast<std::int64_t>(j) * (res + 1) + i);
}
std::int64_t v_edge(int i, int j, int res) {
    return 2 * (static_cast<std::int64_t>(j) * (res + 1) + i) + 1;
}

struct Tracer {
    Rational r_prime;
    Rational r_second;
    const Grid* grid = nullptr;
    double refine_tol = 0.0;
    std::map<std::int64_t, Cx> vertices;
    std::map<std::int64_t, std::vector<std::int64_t>> links;

    explicit Tracer(const Rational& r)
        : r_prime(r.derivative()), r_second(r_prime.derivative()) {}

    Cx vertex_on(std::int64_t edge, int i0, int j0, int i1, int j1) {
        auto it = vertices.find(edge);
        if (it != vertices.end()) return it->second;
        const Cx a = grid->point(i0, j0);
        const Cx b = grid->point(i1, j1);
        const Cx v = refine_edge(r_prime, r_second, a, b, grid->at(i0, j0), grid->at(i1, j1),
                                 refine_tol);
        vertices.emplace(edge, v);
        return v;
    }

    void connect(std::int64_t e1, std::int64_t e2) {
        links[e1].push_back(e2);
        links[e2].push_back(e1);
    }
};

// Emits the contour segments of one cell.  Corners are indexed
// 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1); the mask sets bit c when
// phi > 0 at corner c.  The two ambiguous masks are disambiguated by the
// sign of phi at the cell center.
void march_cell(Tracer& t, int i, int j) {
    const Grid& g = *t.grid;
    const int res = g.res;
    const double p0 = g.at(i, j);
    const double p1 = g.at(i + 1, j);
    const double p2 = g.at(i + 1, j + 1);
    const double p3 = g.at(i, j + 1);
    int mask = 0;
    if (p0 > 0.0) mask |= 1;
    if (p1 > 0.0) mask |= 2;
    if (p2 > 0.0) mask |= 4;
    if (p3 > 0.0) mask |= 8;
    if (mask == 0 || mask == 15) return;

    const std::int64_t bottom = h_edge(i, j, res);
    const std::int64_t top = h_edge(i, j + 1, res);
    const std::int64_t left = v_edge(i, j, res);
    const std::int64_t right = v_edge(i + 1, j, res);

    auto touch = [&](std::int64_t edge) {
        if (edge == bottom) t.vertex_on(edge, i, j, i + 1, j);
        else if (edge == top) t.vertex_on(edge, i, j + 1, i + 1, j + 1);
        else if (edge == left) t.vertex_on(edge, i, j, i, j + 1);
        else t.vertex_on(edge, i + 1, j, i + 1, j + 1);
    };
    auto seg = [&](std::int64_t e1, std::int64_t e2) {
        touch(e1);
        touch(e2);
        t.connect(e1, e2);
    };

    switch (mask) {
        case 1: case 14: seg(bottom, left); break;
        case 2: case 13: seg(bottom, right); break;
        case 4: case 11: seg(right, top); break;
        case 8: case 7: seg(top, left); break;
        case 3: case 12: seg(left, right); break;
        case 6: case 9: seg(bottom, top); break;
        case 5: case 10: {
            const Cx center = 0.5 * (g.point(i, j) + g.point(i + 1, j + 1));
            const bool center_pos = phi_at(t.r_prime, center) > 0.0;
            const bool pair_with_corner0 = (mask == 5) == center_pos;
            if (pair_with_corner0) {
                seg(bottom, left);
                seg(right, top);
            } else {
                seg(bottom, right);
                seg(top, left);
            }
            break;
        }
        default: break;
    }
}

std::vector<std::vector<Cx>> chain_polylines(Tracer& t) {
    std::vector<std::vector<Cx>> polylines;
    std::map<std::int64_t, bool> used;
    for (const auto& [edge, _] : t.links) used[edge] = false;

    auto walk = [&](std::int64_t start) {
        std::deque<std::int64_t> chain{start};
        used[start] = true;
        for (int dir = 0; dir < 2; ++dir) {
            std::int64_t current = start;
            while (true) {
                std::int64_t next = -1;
                for (std::int64_t nb : t.links[current]) {
                    if (!used[nb]) {
                        next = nb;
                        break;
                    }
                }
                if (next < 0) break;
                used[next] = true;
                if (dir == 0) chain.push_back(next);
                else chain.push_front(next);
                current = next;
            }
        }
        std::vector<Cx> poly;
        poly.reserve(chain.size() + 1);
        for (std::int64_t e : chain) poly.push_back(t.vertices.at(e));
        // Close the loop when the two chain ends share a cell.
        if (chain.size() > 2) {
            const auto& ends = t.links[chain.back()];
            if (std::find(ends.begin(), ends.end(), chain.front()) != ends.end()) {
                poly.push_back(poly.front());
            }
        }
        return poly;
    };

    // Open curves first (edges of link degree 1 are endpoints), then any
    // remaining closed loops.
    for (const auto& [edge, nbs] : t.links) {
        if (!used[edge] && nbs.size() == 1) polylines.push_back(walk(edge));
    }
    for (const auto& [edge, _] : t.links) {
        if (!used[edge]) polylines.push_back(walk(edge));
    }
    return polylines;
}

std::vector<RegionInfo> label_regions(const Rational& r_prime, const Grid& g) {
    const int res = g.res;
    const int n = res + 1;
    const std::size_t total = static_cast<std::size_t>(n) * n;
    std::vector<int> region(total, -1);
    auto idx = [n](int i, int j) { return static_cast<std::size_t>(j) * n + i; };
    const int di[] = {1, -1, 0, 0};
    const int dj[] = {0, 0, 1, -1};

    std::vector<RegionInfo> regions;
    std::deque<std::pair<int, int>> queue;
    for (int j0 = 0; j0 < n; ++j0) {
        for (int i0 = 0; i0 < n; ++i0) {
            if (region[idx(i0, j0)] >= 0) continue;
            const bool positive = g.at(i0, j0) > 0.0;
            const int id = static_cast<int>(regions.size());
            RegionInfo info;
            info.orientation =
                positive ? Orientation::SensePreserving : Orientation::SenseReversing;

            queue.assign(1, {i0, j0});
            region[idx(i0, j0)] = id;
            while (!queue.empty()) {
                auto [i, j] = queue.front();
                queue.pop_front();
                info.cell_count += 1;
                if (i == 0 || j == 0 || i == n - 1 || j == n - 1) info.unbounded = true;
                for (int k = 0; k < 4; ++k) {
                    const int ni = i + di[k];
                    const int nj = j + dj[k];
                    if (ni < 0 || nj < 0 || ni >= n || nj >= n) continue;
                    if (region[idx(ni, nj)] >= 0) continue;
                    if ((g.at(ni, nj) > 0.0) != positive) continue;
                    region[idx(ni, nj)] = id;
                    queue.emplace_back(ni, nj);
                }
            }
            regions.push_back(info);
        }
    }

    // Multi-source BFS distance from each region's boundary; the deepest
    // sample point is the best witness for the region's orientation.
    std::vector<int> depth(total, -1);
    queue.clear();
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            bool boundary = i == 0 || j == 0 || i == n - 1 || j == n - 1;
            for (int k = 0; k < 4 && !boundary; ++k) {
                const int ni = i + di[k];
                const int nj = j + dj[k];
                if (region[idx(ni, nj)] != region[idx(i, j)]) boundary = true;
            }
            if (boundary) {
                depth[idx(i, j)] = 0;
                queue.emplace_back(i, j);
            }
        }
    }
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            const int ni = i + di[k];
            const int nj = j + dj[k];
            if (ni < 0 || nj < 0 || ni >= n || nj >= n) continue;
            if (depth[idx(ni, nj)] >= 0 || region[idx(ni, nj)] != region[idx(i, j)]) continue;
            depth[idx(ni, nj)] = depth[idx(i, j)] + 1;
            queue.emplace_back(ni, nj);
        }
    }

    std::vector<int> best(regions.size(), -1);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int id = region[idx(i, j)];
            if (depth[idx(i, j)] <= best[static_cast<std::size_t>(id)]) continue;
            const Cx z = g.point(i, j);
            if (!is_finite(r_prime.eval(z))) continue;
            best[static_cast<std::size_t>(id)] = depth[idx(i, j)];
            regions[static_cast<std::size_t>(id)].sample = z;
        }
    }
    for (std::size_t id = 0; id < regions.size(); ++id) {
        if (best[id] < 0) {
            // Every sample point of the region sits on a pole of r'; fall
            // back to any member so the sample at least lies inside.
            for (std::size_t cell = 0; cell < total; ++cell) {
                if (region[cell] == static_cast<int>(id)) {
                    regions[id].sample = g.point(static_cast<int>(cell) % n,
                                                 static_cast<int>(cell) / n);
                    break;
                }
            }
        }
    }
    return regions;
}

CurveSet trace_once(const Rational& r, const Bbox& bbox, int resolution,
                    const TraceOptions& opts) {
    Tracer tracer(r);
    tracer.refine_tol = opts.refine_tol;
    const Grid grid = sample_grid(tracer.r_prime, bbox, resolution);
    tracer.grid = &grid;

    for (int j = 0; j < resolution; ++j) {
        for (int i = 0; i < resolution; ++i) march_cell(tracer, i, j);
    }

    CurveSet out;
    out.bbox = bbox;
    out.resolution = resolution;
    out.polylines = chain_polylines(tracer);
    out.caustics.reserve(out.polylines.size());
    for (const auto& poly : out.polylines) {
        std::vector<Cx> caustic;
        caustic.reserve(poly.size());
        for (Cx v : poly) {
            const Cx value = r.eval(v);
            caustic.push_back(is_finite(value) ? std::conj(value) - v : complex_infinity());
        }
        out.caustics.push_back(std::move(caustic));
    }
    out.regions = label_regions(tracer.r_prime, grid);
    return out;
}

}  // namespace

CurveSet trace_critical_set(const Rational& r, const Bbox& bbox, int resolution,
                            const TraceOptions& opts) {
    if (resolution < 8) throw InvalidInputError("trace resolution must be at least 8");
    if (!(bbox.x_max > bbox.x_min) || !(bbox.y_max > bbox.y_min)) {
        throw InvalidInputError("bounding box must have positive extent");
    }
    CurveSet out = trace_once(r, bbox, resolution, opts);
    if (opts.stability_check) {
        const CurveSet doubled = trace_once(r, bbox, 2 * resolution, opts);
        if (doubled.regions.size() != out.regions.size()) {
            throw ResolutionTooCoarseError(
                "region count changes under grid refinement; increase the resolution");
        }
    }
    return out;
}

Orientation orientation_at(const Rational& r, Cx z, double eps_singular) {
    const Cx d = r.derivative().eval(z);
    if (!is_finite(d)) throw PoleEvaluationError("derivative has a pole at the sample point");
    const double a = std::abs(d);
    if (a < 1.0 - eps_singular) return Orientation::SensePreserving;
    if (a > 1.0 + eps_singular) return Orientation::SenseReversing;
    return Orientation::Singular;
}

Bbox default_bbox(const SolveReport& report) {
    std::vector<Cx> anchors;
    for (const HarmonicZero& z : report.zeros) anchors.push_back(z.location);
    for (const PoleOrder& p : report.pole_orders) anchors.push_back(p.location);
    if (anchors.empty()) anchors.push_back(Cx(0.0));

    double x_min = anchors.front().real();
    double x_max = x_min;
    double y_min = anchors.front().imag();
    double y_max = y_min;
    for (Cx a : anchors) {
        x_min = std::min(x_min, a.real());
        x_max = std::max(x_max, a.real());
        y_min = std::min(y_min, a.imag());
        y_max = std::max(y_max, a.imag());
    }
    const double margin_x = std::max(0.5 * (x_max - x_min), 1.0);
    const double margin_y = std::max(0.5 * (y_max - y_min), 1.0);
    return {x_min - margin_x, x_max + margin_x, y_min - margin_y, y_max + margin_y};
}

namespace {

void append_path(std::ostringstream& svg, const std::vector<Cx>& poly, const Bbox& bbox,
                 double scale, double height, const char* style) {
    if (poly.size() < 2) return;
    svg << "  <path d=\"";
    bool pen_down = false;
    for (Cx v : poly) {
        if (!is_finite(v)) {
            pen_down = false;
            continue;
        }
        const double x = (v.real() - bbox.x_min) * scale;
        const double y = height - (v.imag() - bbox.y_min) * scale;
        svg << (pen_down ? "L" : "M") << x << ' ' << y << ' ';
        pen_down = true;
    }
    svg << "\" " << style << "/>\n";
}

}  // namespace

std::string curve_set_svg(const CurveSet& curves, const SolveReport* report, int width) {
    const Bbox& b = curves.bbox;
    const double scale = width / (b.x_max - b.x_min);
    const double height = (b.y_max - b.y_min) * scale;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& poly : curves.polylines) {
        append_path(svg, poly, b, scale, height,
                    "fill=\"none\" stroke=\"#1f3a93\" stroke-width=\"1.5\"");
    }
    for (const auto& caustic : curves.caustics) {
        append_path(svg, caustic, b, scale, height,
                    "fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.2\" "
                    "stroke-dasharray=\"6 4\"");
    }
    if (report != nullptr) {
        for (const HarmonicZero& z : report->zeros) {
            const double x = (z.location.real() - b.x_min) * scale;
            const double y = height - (z.location.imag() - b.y_min) * scale;
            const char* color = z.orientation == Orientation::SensePreserving ? "#27ae60"
                                : z.orientation == Orientation::SenseReversing ? "#e67e22"
                                                                               : "#8e44ad";
            svg << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\" fill=\"" << color
                << "\"/>\n";
        }
        for (const PoleOrder& p : report->pole_orders) {
            const double x = (p.location.real() - b.x_min) * scale;
            const double y = height - (p.location.imag() - b.y_min) * scale;
            svg << "  <path d=\"M" << x - 4 << ' ' << y - 4 << "L" << x + 4 << ' ' << y + 4
                << "M" << x - 4 << ' ' << y + 4 << "L" << x + 4 << ' ' << y - 4
                << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
        }
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace harmlens
