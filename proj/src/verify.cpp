#include "kdnls/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace kdnls {

namespace {

const cd I(0.0, 1.0);

double order_of(const std::vector<ResidualNorm>& n) {
    if (n.size() < 2) return 0.0;
    const double a = n[n.size() - 2].max_residual, b = n.back().max_residual;
    if (!(a > 0.0) || !(b > 0.0)) return 0.0;
    return std::log2(a / b);
}

// Interior nodes whose 3x3 block is free of flags in every input field.
std::vector<char> clean_mask(const Grid2D& g, std::initializer_list<const ComplexField2D*> fields) {
    std::vector<char> bad(g.size(), 0);
    for (const ComplexField2D* f : fields)
        for (std::size_t k = 0; k < g.size(); ++k)
            if (f->flag_data()[k] & kNonFinite) bad[k] = 1;
    std::vector<char> ok(g.size(), 0);
    for (std::size_t j = 1; j + 1 < g.nt; ++j) {
        for (std::size_t i = 1; i + 1 < g.nx; ++i) {
            bool clean = true;
            for (int dj = -1; dj <= 1 && clean; ++dj)
                for (int di = -1; di <= 1; ++di)
                    if (bad[(j + dj) * g.nx + (i + di)]) {
                        clean = false;
                        break;
                    }
            if (!clean) continue;
            bool boundary = false;
            for (const ComplexField2D* f : fields)
                if (f->flags(i, j) & kBoundary) boundary = true;
            ok[j * g.nx + i] = !boundary;
        }
    }
    return ok;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    const std::size_t m = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + m, v.end());
    double hi = v[m];
    if (v.size() % 2 == 1) return hi;
    return 0.5 * (hi + *std::max_element(v.begin(), v.begin() + m));
}

}  // namespace

cd pde_operator(const QJet& j, const Seed& seed, const ConventionVariant& variant) {
    const double s = variant.nonlinear_sign;
    const double al = seed.alpha;
    const double tx = seed.theta.p, tt = seed.theta.q;
    const cd q2qs = j.Q * j.Q * std::conj(j.Q);
    const cd q2qs_x = 2.0 * j.Q * j.Qx * std::conj(j.Q) + j.Q * j.Q * std::conj(j.Qx);
    return I * j.Qt + j.Qxx + s * I * al * q2qs_x - (tt + tx * tx) * j.Q + tx * (2.0 * I * j.Qx - s * al * q2qs);
}

ResidualReport pde_residual(const PointFunction& field, const Seed& seed, const ConventionVariant& variant,
                            const Grid2D& grid, int refinements) {
    grid.validate();
    if (refinements < 2) throw Error(ErrorCode::InvalidConfig, "pde_residual needs at least two levels");
    ResidualReport rep;
    rep.variant = variant;
    rep.interior_window = grid;
    Grid2D g = grid;
    for (int level = 0; level < refinements; ++level, g = g.refined()) {
        const ComplexField2D q = sample(field, g);
        const ComplexField2D qx = central_diff(q, Axis::X, 1);
        const ComplexField2D qxx = central_diff(q, Axis::X, 2);
        const ComplexField2D qt = central_diff(q, Axis::T, 1);
        const std::vector<char> ok = clean_mask(g, {&q, &qx, &qxx, &qt});
        ResidualNorm n;
        n.h = std::max(g.hx(), g.ht());
        std::size_t count = 0;
        double sum = 0.0;
        for (std::size_t j = 0; j < g.nt; ++j) {
            for (std::size_t i = 0; i < g.nx; ++i) {
                if (!ok[j * g.nx + i]) continue;
                const double r = std::abs(pde_operator({q(i, j), qx(i, j), qxx(i, j), qt(i, j)}, seed, variant));
                n.max_residual = std::max(n.max_residual, r);
                sum += r;
                ++count;
            }
        }
        if (count == 0) throw Error(ErrorCode::AllNodesExcluded, "every interior node was excluded");
        n.mean_residual = sum / double(count);
        if (level == 0) rep.excluded_nodes = (g.nx - 2) * (g.nt - 2) - count;
        rep.norms.push_back(n);
    }
    rep.estimated_order = order_of(rep.norms);
    return rep;
}

ResidualReport seed_pde_residual(const Seed& seed, const ConventionVariant& variant, const Grid2D& grid,
                                 int refinements) {
    grid.validate();
    ResidualReport rep;
    rep.variant = variant;
    rep.interior_window = grid;
    Grid2D g = grid;
    for (int level = 0; level < std::max(refinements, 1); ++level, g = g.refined()) {
        ResidualNorm n;
        n.h = std::max(g.hx(), g.ht());
        double sum = 0.0;
        for (std::size_t j = 0; j < g.nt; ++j)
            for (std::size_t i = 0; i < g.nx; ++i) {
                const double r = std::abs(pde_operator(seed.jet(g.x(i), g.t(j)), seed, variant));
                n.max_residual = std::max(n.max_residual, r);
                sum += r;
            }
        n.mean_residual = sum / double(g.size());
        rep.norms.push_back(n);
    }
    rep.estimated_order = order_of(rep.norms);
    return rep;
}

PinDownResult pin_down_convention(const Seed& plane_wave, double tol, cd probe_lambda) {
    if (plane_wave.kind != SeedKind::PlaneWave)
        throw Error(ErrorCode::InvalidConfig, "convention pin-down needs a plane-wave seed");
    const Grid2D grid = Grid2D::make(-2.0, 2.0, 9, -2.0, 2.0, 9);
    const SpectralDatum datum = plane_wave_eigenfunction(probe_lambda, plane_wave);
    PinDownResult out;
    for (const ConventionVariant& v : ConventionVariant::all()) {
        VariantScore s;
        s.variant = v;
        const ResidualReport r = seed_pde_residual(plane_wave, v, grid, 2);
        for (const ResidualNorm& n : r.norms) s.pde_residual = std::max(s.pde_residual, n.max_residual);
        for (std::size_t j = 0; j < grid.nt; ++j)
            for (std::size_t i = 0; i < grid.nx; ++i) {
                const auto [rx, rt] = exact_lax_residual(datum, plane_wave, grid.x(i), grid.t(j), v.v_conjugation);
                s.lax_x_residual = std::max(s.lax_x_residual, rx);
                s.lax_t_residual = std::max(s.lax_t_residual, rt);
            }
        s.passes = s.pde_residual <= tol && s.lax_x_residual <= tol && s.lax_t_residual <= tol;
        if (s.passes) ++out.passing;
        out.scores.push_back(s);
    }
    if (out.passing == 1)
        for (const VariantScore& s : out.scores)
            if (s.passes) out.selected = s.variant;
    return out;
}

FieldError compare_fields(const ComplexField2D& a, const ComplexField2D& b, CompareMode mode) {
    if (!(a.grid() == b.grid())) throw Error(ErrorCode::GridMismatch, "fields live on different grids");
    const std::size_t n = a.grid().size();
    // boundary flags do not matter here, only non-finite ones
    auto finite = [&](std::size_t k) { return !(a.flag_data()[k] & kNonFinite) && !(b.flag_data()[k] & kNonFinite); };

    cd rot(1.0, 0.0);
    if (mode == CompareMode::UpToGlobalPhase) {
        double bmax = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            if (finite(k)) bmax = std::max(bmax, std::abs(b.values()[k]));
        // least squares over unit rotations: phi = arg sum a conj(b)
        cd acc(0.0, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            if (finite(k) && std::abs(b.values()[k]) > 0.1 * bmax) acc += a.values()[k] * std::conj(b.values()[k]);
        if (std::abs(acc) > 0.0) rot = std::conj(acc) / std::abs(acc);
    }

    FieldError e;
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!finite(k)) continue;
        const cd u = a.values()[k], v = b.values()[k];
        double d = 0.0;
        switch (mode) {
            case CompareMode::Intensity: d = std::abs(std::norm(u) - std::norm(v)); break;
            case CompareMode::ModulusOfDifference: d = std::abs(u - v); break;
            case CompareMode::UpToGlobalPhase: d = std::abs(u * rot - v); break;
        }
        e.max_err = std::max(e.max_err, d);
        sum += d;
        ++e.compared;
    }
    e.mean_err = e.compared ? sum / double(e.compared) : 0.0;
    return e;
}

ConvergenceStudy convergence_study(const std::function<ComplexField2D(double)>& family,
                                   const ComplexField2D& reference, const std::vector<double>& eps_ladder) {
    if (eps_ladder.size() < 2) throw Error(ErrorCode::InvalidConfig, "eps ladder needs at least two entries");
    for (std::size_t k = 1; k < eps_ladder.size(); ++k)
        if (!(eps_ladder[k] < eps_ladder[k - 1]))
            throw Error(ErrorCode::InvalidConfig, "eps ladder must be strictly decreasing");
    ConvergenceStudy st;
    for (double eps : eps_ladder) {
        const ComplexField2D f = family(eps);
        st.points.push_back({eps, compare_fields(f, reference, CompareMode::Intensity).max_err});
    }
    st.monotone = true;
    for (std::size_t k = 1; k < st.points.size(); ++k)
        if (!(st.points[k].max_intensity_err < st.points[k - 1].max_intensity_err)) st.monotone = false;
    const double last = st.points.back().max_intensity_err;
    st.reduction = last > 0.0 ? st.points.front().max_intensity_err / last : std::numeric_limits<double>::infinity();
    return st;
}

const char* to_string(PatternClass c) {
    switch (c) {
        case PatternClass::Fundamental: return "fundamental";
        case PatternClass::Triangular: return "triangular";
        case PatternClass::Ring: return "ring";
        case PatternClass::Unclassified: return "unclassified";
    }
    return "?";
}

namespace {

// Topographic prominence of every node that starts a component in a
// descending sweep (8-connectivity union-find).
std::vector<double> prominences(const std::vector<double>& h, std::size_t nx, std::size_t nt) {
    const std::size_t n = h.size();
    std::vector<std::size_t> order;
    order.reserve(n);
    for (std::size_t k = 0; k < n; ++k)
        if (std::isfinite(h[k])) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });

    std::vector<std::size_t> parent(n, n), top(n, n);
    std::vector<double> prom(n, 0.0);
    auto find = [&](std::size_t k) {
        while (parent[k] != k) {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        return k;
    };
    for (std::size_t k : order) {
        parent[k] = k;
        top[k] = k;
        const std::size_t i = k % nx, j = k / nx;
        for (int dj = -1; dj <= 1; ++dj) {
            for (int di = -1; di <= 1; ++di) {
                if (!di && !dj) continue;
                const long ii = long(i) + di, jj = long(j) + dj;
                if (ii < 0 || jj < 0 || ii >= long(nx) || jj >= long(nt)) continue;
                const std::size_t m = std::size_t(jj) * nx + std::size_t(ii);
                if (parent[m] == n) continue;
                std::size_t ra = find(k), rb = find(m);
                if (ra == rb) continue;
                // the lower summit dies at this saddle
                if (h[top[ra]] < h[top[rb]]) std::swap(ra, rb);
                prom[top[rb]] = h[top[rb]] - h[k];
                parent[rb] = ra;
            }
        }
    }
    if (!order.empty()) {
        const std::size_t g = top[find(order.front())];
        prom[g] = h[g] - h[order.back()];
    }
    return prom;
}

bool ring_test(const std::vector<Peak>& pk, const PeakOptions& opt, std::size_t& ring, bool& center) {
    ring = 0;
    center = false;
    if (pk.size() < 5) return false;
    double cx = 0.0, ct = 0.0;
    for (const Peak& p : pk) {
        cx += p.x;
        ct += p.t;
    }
    cx /= double(pk.size());
    ct /= double(pk.size());
    std::vector<double> r;
    for (const Peak& p : pk) r.push_back(std::hypot(p.x - cx, p.t - ct));
    const double rmax = *std::max_element(r.begin(), r.end());

    std::vector<Peak> outer;
    for (std::size_t k = 0; k < pk.size(); ++k) {
        if (r[k] < 0.3 * rmax)
            center = true;
        else
            outer.push_back(pk[k]);
    }
    if (outer.size() < 5 || pk.size() - outer.size() > 1) return false;
    // centroid of the ring itself
    cx = ct = 0.0;
    for (const Peak& p : outer) {
        cx += p.x;
        ct += p.t;
    }
    cx /= double(outer.size());
    ct /= double(outer.size());
    std::vector<double> rad, ang;
    for (const Peak& p : outer) {
        rad.push_back(std::hypot(p.x - cx, p.t - ct));
        ang.push_back(std::atan2(p.t - ct, p.x - cx));
    }
    const double rmean = std::accumulate(rad.begin(), rad.end(), 0.0) / double(rad.size());
    for (double v : rad)
        if (std::abs(v - rmean) > opt.ring_radius_spread * rmean) return false;
    std::sort(ang.begin(), ang.end());
    const double ideal = 2.0 * std::numbers::pi / double(ang.size());
    for (std::size_t k = 0; k < ang.size(); ++k) {
        const double gap =
            k + 1 < ang.size() ? ang[k + 1] - ang[k] : ang.front() + 2.0 * std::numbers::pi - ang.back();
        if (std::abs(gap - ideal) > opt.ring_gap_spread * ideal) return false;
    }
    ring = outer.size();
    return true;
}

bool triangle_test(const std::vector<Peak>& pk, int order) {
    const std::size_t n = pk.size();
    if (n < 3) return false;
    if (order > 0) {
        if (n != std::size_t(order * (order + 1) / 2)) return false;
    } else {
        bool tri = false;
        for (std::size_t m = 2; m <= 4; ++m)
            if (n == m * (m + 1) / 2) tri = true;
        if (!tri) return false;
    }
    // not collinear: the largest triangle spanned by the peaks is not flat
    double diam2 = 0.0, area = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            diam2 = std::max(diam2, std::pow(pk[a].x - pk[b].x, 2) + std::pow(pk[a].t - pk[b].t, 2));
            for (std::size_t c = b + 1; c < n; ++c)
                area = std::max(area, 0.5 * std::abs((pk[b].x - pk[a].x) * (pk[c].t - pk[a].t) -
                                                     (pk[c].x - pk[a].x) * (pk[b].t - pk[a].t)));
        }
    return diam2 > 0.0 && area > 0.05 * diam2;
}

std::size_t half_height_run(const std::vector<double>& h, std::size_t nx, std::size_t nt, std::size_t i,
                            std::size_t j, double level, bool along_x) {
    std::size_t run = 1;
    auto at = [&](long a, long b) { return h[std::size_t(b) * nx + std::size_t(a)]; };
    const long lim = along_x ? long(nx) : long(nt);
    for (int dir : {-1, 1}) {
        long p = along_x ? long(i) : long(j);
        while (true) {
            p += dir;
            if (p < 0 || p >= lim) break;
            const double v = along_x ? at(p, long(j)) : at(long(i), p);
            if (!(v > level)) break;
            ++run;
        }
    }
    return run;
}

}  // namespace

PeakSet peak_analysis(const ComplexField2D& q, const PeakOptions& opt) {
    const Grid2D& g = q.grid();
    if (g.nx < 3 || g.nt < 3) throw Error(ErrorCode::ResolutionTooCoarse, "peak analysis needs at least 3x3 nodes");
    if (!(opt.background_window > 0.0 && opt.background_window < 0.5))
        throw Error(ErrorCode::InvalidConfig, "background window must lie in (0, 0.5)");
    const std::size_t nx = g.nx, nt = g.nt;
    std::vector<double> h = q.intensity();
    for (std::size_t k = 0; k < h.size(); ++k)
        if (q.flag_data()[k] & kNonFinite) h[k] = std::numeric_limits<double>::quiet_NaN();

    const std::size_t fx = std::max<std::size_t>(1, std::size_t(std::ceil(opt.background_window * double(nx))));
    const std::size_t ft = std::max<std::size_t>(1, std::size_t(std::ceil(opt.background_window * double(nt))));
    std::vector<double> frame;
    for (std::size_t j = 0; j < nt; ++j)
        for (std::size_t i = 0; i < nx; ++i)
            if ((i < fx || i + fx >= nx || j < ft || j + ft >= nt) && std::isfinite(h[j * nx + i]))
                frame.push_back(h[j * nx + i]);

    PeakSet out;
    out.background = median(frame);
    const std::vector<double> prom = prominences(h, nx, nt);
    const double floor = opt.threshold_ratio * out.background;

    for (std::size_t j = 1; j + 1 < nt; ++j) {
        for (std::size_t i = 1; i + 1 < nx; ++i) {
            const double v = h[j * nx + i];
            if (!std::isfinite(v) || v < floor) continue;
            bool strict = true;
            for (int dj = -1; dj <= 1 && strict; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (!di && !dj) continue;
                    const double w = h[(j + dj) * nx + (i + di)];
                    if (!(v > w)) {
                        strict = false;
                        break;
                    }
                }
            if (!strict) continue;
            if (prom[j * nx + i] < opt.prominence_ratio * out.background) continue;
            out.peaks.push_back({g.x(i), g.t(j), v, i, j, prom[j * nx + i]});
        }
    }

    for (const Peak& p : out.peaks) {
        const double level = 0.5 * (p.height + out.background);
        const std::size_t wx = half_height_run(h, nx, nt, p.i, p.j, level, true);
        const std::size_t wt = half_height_run(h, nx, nt, p.i, p.j, level, false);
        if (std::min(wx, wt) < opt.min_nodes_per_hump)
            throw Error(ErrorCode::ResolutionTooCoarse,
                        "hump at (" + std::to_string(p.x) + ", " + std::to_string(p.t) + ") spans " +
                            std::to_string(std::min(wx, wt)) + " nodes at half height");
    }

    bool dominant = out.peaks.size() == 1;
    if (out.peaks.size() > 1) {
        std::vector<double> hs;
        for (const Peak& p : out.peaks) hs.push_back(p.height);
        std::sort(hs.rbegin(), hs.rend());
        dominant = hs[0] >= opt.dominance_ratio * hs[1];
    }
    if (dominant)
        out.classification = PatternClass::Fundamental;
    else if (ring_test(out.peaks, opt, out.ring_count, out.has_center))
        out.classification = PatternClass::Ring;
    else if (triangle_test(out.peaks, opt.order))
        out.classification = PatternClass::Triangular;
    else
        out.classification = PatternClass::Unclassified;
    if (out.classification != PatternClass::Ring) {
        out.ring_count = 0;
        out.has_center = false;
    }
    return out;
}

}  // namespace kdnls
