#include "bmo/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "bmo/bumpsum.hpp"
#include "bmo/constructions.hpp"
#include "bmo/error.hpp"
#include "bmo/maximal1d.hpp"
#include "bmo/oscillation.hpp"
#include "bmo/periodic.hpp"
#include "bmo/plane.hpp"
#include "bmo/sampler.hpp"

namespace bmo {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "true";
        case Verdict::Fail: return "false";
        case Verdict::Info: return "info";
        case Verdict::Skipped: return "skipped";
        case Verdict::Warning: return "warning";
    }
    return "info";
}

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

class ParamList {
public:
    ParamList& add(const std::string& key, double v) { return add(key, num(v)); }
    ParamList& add(const std::string& key, const std::string& v) {
        if (!text_.empty()) text_ += ';';
        text_ += key + '=' + v;
        return *this;
    }
    template <class T>
    ParamList& add_list(const std::string& key, const std::vector<T>& xs) {
        std::string s;
        for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "|" : "") + num(static_cast<double>(xs[i]));
        return add(key, s);
    }
    const std::string& str() const { return text_; }

private:
    std::string text_;
};

Verdict check(bool ok) { return ok ? Verdict::Pass : Verdict::Fail; }

struct Rows {
    std::string experiment;
    std::vector<ExperimentRow> rows;

    void add(const std::string& params, const std::string& metric, double value,
             std::optional<double> bound, Verdict v) {
        rows.push_back({experiment, params, metric, value, bound, v});
    }
    void info(const std::string& params, const std::string& metric, double value,
              std::optional<double> bound = {}) {
        add(params, metric, value, bound, Verdict::Info);
    }
};

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

bool strictly_increasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] > v[i - 1])) return false;
    return true;
}

std::string span(Interval I) { return num(I.lo) + ":" + num(I.hi); }
std::string span(const Rect& R) { return span(R.x) + "x" + span(R.y); }

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }
double min_of(const std::vector<double>& v) { return *std::min_element(v.begin(), v.end()); }

StepFunction1D random_step(std::mt19937_64& rng, int cells, Interval span, double lo, double hi) {
    std::uniform_real_distribution<double> pos(span.lo, span.hi), val(lo, hi);
    std::vector<double> bp{span.lo, span.hi};
    for (int i = 1; i < cells; ++i) bp.push_back(pos(rng));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> v(bp.size() - 1);
    for (auto& x : v) x = val(rng);
    return {bp, v};
}

std::vector<double> midpoints(Interval I, int n) {
    std::vector<double> xs(n);
    for (int i = 0; i < n; ++i) xs[i] = I.lo + (i + 0.5) * I.length() / n;
    return xs;
}

}  // namespace

namespace {

std::string field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return q + '"';
}

}  // namespace

void write_csv_header(std::ostream& out) { out << "experiment,params,metric,value,bound,pass\n"; }

void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows) {
    char buf[40];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%.17g", r.value);
        out << field(r.experiment) << ',' << field(r.params) << ',' << field(r.metric) << ',' << buf << ',';
        if (r.bound) {
            std::snprintf(buf, sizeof buf, "%.17g", *r.bound);
            out << buf;
        }
        out << ',' << to_string(r.verdict) << '\n';
    }
}

bool any_failed(const std::vector<ExperimentRow>& rows) {
    return std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.verdict == Verdict::Fail; });
}

const Tolerances& default_tolerances() {
    static const Tolerances t;
    return t;
}

std::vector<ExperimentRow> exp_maximal_exactness(const MaximalParams& p, const Tolerances& tol) {
    Rows out{"maximal", {}};
    const auto f = StepFunction1D::indicator({0.0, 1.0});
    const Interval window{-11.0, 2.0};
    std::vector<double> xs(p.points);
    for (int i = 0; i < p.points; ++i) xs[i] = -10.0 + 10.0 * i / std::max(1, p.points - 1);
    double worst = 0.0;
    for (const auto& s : mhl_profile(f, xs, window))
        worst = std::max(worst, std::abs(s.value - 1.0 / (1.0 - s.x)) * (1.0 - s.x));
    ParamList pa;
    pa.add("f", "indicator[0:1]").add("points", p.points).add("window", span(window));
    out.add(pa.str(), "max_rel_error_vs_1/(1-x)", worst, tol.mhl_closed_form_rel, check(worst <= tol.mhl_closed_form_rel));

    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<int> cells(1, p.max_cells);
    double dev = 0.0;
    for (int c = 0; c < p.random_cases; ++c) {
        auto g = random_step(rng, cells(rng), {-5.0, 5.0}, -1.0, 2.0);
        const Interval w{-6.0, 6.0};
        std::uniform_real_distribution<double> q(w.lo, w.hi);
        std::vector<double> qs{q(rng), q(rng), q(rng), g.breakpoints()[0], w.lo};
        for (double x : qs) dev = std::max(dev, std::abs(mhl_point(g, x, w) - mhl_brute(g, x, w)));
    }
    ParamList pb;
    pb.add("cases", p.random_cases).add("max_cells", p.max_cells).add("seed", static_cast<double>(p.seed));
    out.add(pb.str(), "max_abs_dev_optimized_vs_brute", dev, tol.oracle_abs, check(dev <= tol.oracle_abs));
    return out.rows;
}

std::vector<ExperimentRow> exp_extension(const ExtensionParams& p, const Tolerances& tol) {
    Rows out{"extension", {}};
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<int> cells(1, p.max_cells);
    for (double T : p.periods) {
        double worst = 0.0, worst_h = 0.0;
        const Interval window{-2.0 * T, 2.0 * T};
        for (int c = 0; c < p.cases; ++c) {
            auto h = random_step(rng, cells(rng), {0.0, T / 2}, -1.0, 1.0);
            const double hn = bmo_norm_1d(h, {0.0, T / 2}, p.refine).value;
            auto H = materialize(periodic_even_extend(h, T), window);
            const double Hn = bmo_norm_1d(H, window, p.refine).value;
            if (hn > 0.0 && Hn / hn > worst) {
                worst = Hn / hn;
                worst_h = hn;
            }
        }
        ParamList pa;
        pa.add("T", T).add("cases", p.cases).add("refine", p.refine).add("window", span(window))
            .add("seed", static_cast<double>(p.seed));
        out.add(pa.str(), "max_ratio_norm_H_over_norm_h", worst, tol.extension_constant,
                check(worst <= tol.extension_constant));
        out.info(pa.str(), "norm_h_at_worst_case", worst_h);
    }
    return out.rows;
}

std::vector<ExperimentRow> exp_gn(const GnParams& p, const Tolerances& tol) {
    Rows out{"gn", {}};
    std::vector<double> norms;
    double K = 0.0;
    for (double n : p.n_list) {
        const Interval window{4.0 * p.c, 2.0 * n};
        auto g = build_gn(n, p.c, p.max_cell_error, window);
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0, on_mask = 0.0;
        for (std::size_t i = 0; i < g.cells(); ++i) {
            const double v = g.values()[i];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            if (overlap(g.cell(i), {p.c, 1.0}) > 0.0) on_mask = std::max(on_mask, std::abs(v));
        }
        ParamList pa;
        pa.add("n", n).add("c", p.c).add("max_cell_error", p.max_cell_error).add("window", span(window));
        out.add(pa.str(), "min_value", lo, 0.0, check(lo >= 0.0));
        out.add(pa.str(), "max_abs_on_[c:1]", on_mask, 0.0, check(on_mask == 0.0));
        out.add(pa.str(), "max_value", hi, 1.0, check(hi <= 1.0));
        const double avg = integrate(g, 0.0, n) / n, closed = gn_average_closed_form(n);
        out.add(pa.str(), "avg_[0:n]_minus_closed_form", std::abs(avg - closed), tol.gn_average_abs,
                check(std::abs(avg - closed) <= tol.gn_average_abs));
        out.info(pa.str(), "avg_[0:n]", avg, closed);
        const auto rep = bmo_norm_1d(g, window, p.refine);
        norms.push_back(rep.value);
        out.info(pa.add("refine", p.refine).str(), "bmo_norm", rep.value);
        K = std::max(K, rep.value * (1.0 + std::log(n)) / std::log(-p.c));
    }
    ParamList ps;
    ps.add_list("n", p.n_list).add("c", p.c).add("refine", p.refine);
    out.add(ps.str(), "bmo_norm_strictly_decreasing", norms.back(), norms.front(), check(strictly_decreasing(norms)));
    out.info(ps.str(), "fitted_K_norm*(1+ln n)/ln|c|", K);
    return out.rows;
}

std::vector<ExperimentRow> exp_discontinuity(const DiscontinuityParams& p, const Tolerances& tol) {
    Rows out{"discontinuity", {}};
    const auto f = StepFunction1D::indicator({0.0, 1.0});
    const double c = p.c;
    std::vector<double> norms, oscs;
    for (double n : p.n_list) {
        const auto inst = build_instance(f, c, n, p.max_cell_error);
        if (!inst.window.contains(Interval{2.0 * c, n}))
            reject("window does not contain the witness intervals [x, n], x in [2c, c]");
        ParamList pa;
        pa.add("c", c).add("n", n).add("a", inst.a).add("max_cell_error", p.max_cell_error)
            .add("window", span(inst.window));

        std::vector<double> q(p.queries);
        for (int i = 0; i < p.queries; ++i) q[i] = c + (-c) * i / std::max(1, p.queries - 1);
        const auto mn = mhl_profile(inst.f_n, q, inst.window);
        const auto mf = mhl_profile(f, q, inst.window);
        double dmax = 0.0;
        for (std::size_t i = 0; i < q.size(); ++i) dmax = std::max(dmax, std::abs(mn[i].value - mf[i].value));
        out.add(pa.str(), "max_abs_Mfn_minus_Mf_on_[c:0]", dmax, tol.mf_equal_abs, check(dmax <= tol.mf_equal_abs));

        const auto xs = midpoints({2.0 * c, 0.0}, p.osc_samples);
        const auto sn = mhl_profile(inst.f_n, xs, inst.window);
        const auto sf = mhl_profile(f, xs, inst.window);
        std::vector<double> d(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) d[i] = sn[i].value - sf[i].value;
        const double osc = discrete_mean_osc(d);
        const double avg_ratio = (n / -c) * std::log((n - 2.0 * c) / (n - c));
        const double bound = 0.25 * (inst.a / (1.0 - c) * avg_ratio * gn_average_closed_form(n) +
                                     (1.0 / c) * std::log(1.0 + c / (c - 1.0)));
        oscs.push_back(osc);
        ParamList pb = pa;
        pb.add("samples", p.osc_samples);
        out.add(pb.str(), "osc_Mfn_minus_Mf_on_[2c:0]", osc, bound - tol.discontinuity_bound_abs,
                check(osc >= bound - tol.discontinuity_bound_abs));
        out.info(pb.str(), "lower_bound_closed_form", bound);

        const double nrm = bmo_norm_1d(subtract(inst.f_n, f), inst.window, p.refine).value;
        norms.push_back(nrm);
        out.info(ParamList(pa).add("refine", p.refine).str(), "bmo_norm_fn_minus_f", nrm);
    }
    ParamList ps;
    ps.add("c", c).add_list("n", p.n_list).add("refine", p.refine);
    out.add(ps.str(), "bmo_norm_fn_minus_f_strictly_decreasing", norms.back(), norms.front(),
            check(strictly_decreasing(norms)));
    out.add(ps.str(), "osc_at_largest_n", oscs.back(), tol.discontinuity_floor,
            check(oscs.back() >= tol.discontinuity_floor));
    out.add(ps.str(), "min_osc_over_n", min_of(oscs), tol.discontinuity_floor,
            check(min_of(oscs) >= tol.discontinuity_floor));
    if (norms.size() >= 2)
        out.info(ps.str(), "norm_ratio_last_over_previous", norms.back() / norms[norms.size() - 2],
                 tol.discontinuity_ratio);
    return out.rows;
}

std::vector<ExperimentRow> exp_vmo(const VmoParams& p, const Tolerances& tol) {
    Rows out{"vmo", {}};
    const Interval unit{-1.0, 1.0};
    const int n = 1 << p.resolution;
    const auto f = sample_to_step(profiles::log_minus_pow(0.5), unit, p.max_cell_error);
    const auto xs = midpoints(unit, n);
    const auto prof = mhl_profile(f, xs, unit);
    std::vector<double> bp(n + 1), vals(n);
    for (int i = 0; i <= n; ++i) bp[i] = unit.lo + unit.length() * i / n;
    for (int i = 0; i < n; ++i) vals[i] = prof[i].value;
    const StepFunction1D Mf(bp, vals);

    ParamList base;
    base.add("profile", "log-^0.5").add("resolution", p.resolution).add("max_cell_error", p.max_cell_error);
    std::vector<double> om_f, om_Mf;
    for (int j = p.jmin; j <= p.jmax; ++j) {
        const double delta = std::ldexp(1.0, -j);
        om_f.push_back(omega(f, delta, unit, p.resolution).value);
        om_Mf.push_back(omega(Mf, delta, unit, p.resolution).value);
        ParamList pj = base;
        pj.add("delta", delta);
        out.info(pj.str(), "omega_f", om_f.back());
        out.info(pj.str(), "omega_Mf", om_Mf.back());
    }
    double rise = 0.0;
    for (std::size_t i = 1; i < om_Mf.size(); ++i) rise = std::max(rise, om_Mf[i] - om_Mf[i - 1]);
    ParamList pr = base;
    pr.add("jmin", p.jmin).add("jmax", p.jmax);
    out.add(pr.str(), "omega_Mf_max_increase", rise, 0.0, check(rise <= 0.0));
    const double halving = om_Mf.back() / om_Mf.front();
    out.add(pr.str(), "omega_Mf_last_over_first", halving, tol.vmo_halving, check(halving <= tol.vmo_halving));
    if (!strictly_decreasing(om_f)) out.add(pr.str(), "profile_not_vmo_decaying", om_f.back(), {}, Verdict::Warning);

    // A jump never gets small oscillation on small intervals.
    const auto H = StepFunction1D::indicator({0.0, 2.0});
    std::vector<double> om_H;
    for (int j = p.jmin; j <= p.jmax; ++j) om_H.push_back(omega(H, std::ldexp(1.0, -j), unit, p.resolution).value);
    const double spread = (max_of(om_H) - min_of(om_H)) / max_of(om_H);
    ParamList ph;
    ph.add("profile", "indicator[0:inf)").add("jmin", p.jmin).add("jmax", p.jmax).add("resolution", p.resolution);
    out.info(ph.str(), "omega_f_at_jmin", om_H.front());
    out.add(ph.str(), "non_vmo_flag_relative_spread", spread, tol.non_vmo_flat_rel,
            check(spread <= tol.non_vmo_flat_rel));
    out.add(ph.str(), "profile_not_vmo_decaying", om_H.back(), {}, Verdict::Warning);

    // Nonlocal part: intervals of length >= cfactor |Q0| through points of Q0.
    const Interval wide{-3.0, 3.0};
    double K = 0.0;
    for (double delta : p.deltas) {
        std::vector<double> per_c;
        for (double cf : p.cfactors) {
            double worst = 0.0;
            for (int m = 0; m < p.cubes; ++m) {
                const double a = unit.lo + (unit.length() - delta) * m / std::max(1, p.cubes - 1);
                const Interval Q0{a, a + delta};
                std::vector<double> s;
                for (double x : midpoints(Q0, p.points)) s.push_back(mhl_scale_split(f, x, Q0, cf, wide).nonlocal);
                worst = std::max(worst, discrete_mean_osc(s));
            }
            per_c.push_back(worst);
            K = std::max(K, worst / (std::log(cf) / cf));
            ParamList pc = base;
            pc.add("delta", delta).add("cfactor", cf).add("cubes", p.cubes).add("points", p.points);
            out.info(pc.str(), "nonlocal_osc", worst, std::log(cf) / cf);
        }
        ParamList pd = base;
        pd.add("delta", delta).add_list("cfactor", p.cfactors);
        out.add(pd.str(), "nonlocal_osc_strictly_decreasing_in_cfactor", per_c.back(), per_c.front(),
                check(strictly_decreasing(per_c)));
    }
    out.info(base.str(), "fitted_const_nonlocal_over_lnc/c", K);
    return out.rows;
}

std::vector<ExperimentRow> exp_john_nirenberg(const JnParams& p, const Tolerances& tol) {
    Rows out{"john_nirenberg", {}};
    const Interval Q{-1.0, 1.0};
    const auto f = sample_to_step(profiles::log_abs(), {-8.0, 8.0}, 1e-3);
    double worst = 0.0;
    for (int k = 1; k <= p.kmax; ++k) {
        const double r = std::exp(-k);
        const double v = subset_osc(f, Q, {{-r, r}}).value;
        worst = std::max(worst, std::abs(v - k));
        ParamList pk;
        pk.add("k", k);
        out.info(pk.str(), "value", v, k);
    }
    ParamList pe;
    pe.add("f", "log|x|").add("Q", span(Q)).add("kmax", p.kmax);
    out.add(pe.str(), "max_abs_value_minus_k", worst, tol.jn_exact_abs, check(worst <= tol.jn_exact_abs));

    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double ratio = 0.0;
    for (int c = 0; c < p.cases; ++c) {
        const double len = std::exp(std::log(0.01) + u(rng) * std::log(1500.0));
        const double lo = -8.0 + u(rng) * (16.0 - len);
        const Interval q{lo, lo + len};
        // Disjoint pieces of q, sometimes tiny and hugging the singularity.
        const int pieces = 1 + static_cast<int>(u(rng) * 3);
        std::vector<double> cuts;
        for (int i = 0; i < 2 * pieces; ++i) cuts.push_back(q.lo + u(rng) * len);
        if (q.contains(0.0) && u(rng) < 0.5) {
            const double s = len * std::exp(-12.0 * u(rng));
            cuts[0] = std::max(q.lo, -s / 2);
            cuts[1] = std::min(q.hi, s / 2);
        }
        std::sort(cuts.begin(), cuts.end());
        std::vector<Interval> A;
        for (int i = 0; i < pieces; ++i)
            if (cuts[2 * i + 1] > cuts[2 * i]) A.push_back({cuts[2 * i], cuts[2 * i + 1]});
        if (A.empty()) continue;
        const auto s = subset_osc(f, q, A);
        ratio = std::max(ratio, s.value / s.jn_bound);
    }
    ParamList pr;
    pr.add("cases", p.cases).add("seed", static_cast<double>(p.seed)).add("constant", tol.jn_constant);
    out.add(pr.str(), "max_value_over_(1+ln(|Q|/|A|))", ratio, tol.jn_constant, check(ratio <= tol.jn_constant));
    return out.rows;
}

std::vector<ExperimentRow> exp_product(const ProductParams& p, const Tolerances& tol) {
    Rows out{"product", {}};
    const BumpSum2D bump(p.p, p.q, {{0.0, 0.0, 1.0, 0.0}});
    const Rect window{{-1.0, 1.0}, {-1.0, 1.0}};
    ParamList base;
    base.add("p", p.p).add("q", p.q).add("window", span(window));

    std::vector<double> levels;
    for (int r : {p.coarse, p.fine}) {
        const int n = 1 << r;
        const auto grid = rasterize(bump, window, n, n);
        levels.push_back(bmo_norm_2d(grid, window, RectFamily::squares(), 0).value);
        out.info(ParamList(base).add("raster", n).str(), "squares_bmo_norm", levels.back());
    }
    const double drift = std::abs(levels[1] - levels[0]) / levels[1];
    out.add(ParamList(base).add("raster_levels", num(p.coarse) + "|" + num(p.fine)).str(),
            "squares_norm_relative_drift", drift, tol.product_drift_rel, check(drift <= tol.product_drift_rel));

    {
        const int n = 1 << p.cap_level;
        const auto grid = rasterize(bump, window, n, n);
        std::vector<double> vals;
        for (double cap : p.caps) {
            vals.push_back(bmo_norm_2d(grid, window, RectFamily::rects(cap), 0).value);
            out.info(ParamList(base).add("raster", n).add("ecc_cap", cap).str(), "rects_bmo_norm", vals.back());
        }
        out.add(ParamList(base).add("raster", n).add_list("ecc_cap", p.caps).str(),
                "rects_norm_strictly_increasing_in_cap", vals.back(), vals.front(), check(strictly_increasing(vals)));
    }

    // One-dimensional asymptotics behind the product condition.
    const auto phi = sample_to_step(profiles::log_minus_pow(p.p), {-1.0, 1.0}, 1e-4);
    const auto psi = sample_to_step(profiles::log_minus_pow(p.q), {-1.0, 1.0}, 1e-4);
    std::vector<double> deltas;
    for (int j = p.jmax; j >= p.jmin; --j) deltas.push_back(std::ldexp(1.0, -j));
    const auto sep = product_separable_norm(phi, psi, deltas, window);
    double lo1 = 1e300, hi1 = 0.0;
    for (const auto& row : sep.rows) {
        const double L = -std::log(row.delta);
        const double r1 = row.avg_phi / std::pow(L, p.p);
        const double r2 = row.osc_psi / std::pow(L, p.q - 1.0);
        lo1 = std::min(lo1, r1);
        hi1 = std::max(hi1, r1);
        ParamList pr = base;
        pr.add("delta", row.delta);
        out.info(pr.str(), "sup_avg_phi_over_(-ln delta)^p", r1);
        out.info(pr.str(), "sup_osc_psi_over_(-ln delta)^(q-1)", r2);
    }
    ParamList pb = base;
    pb.add("jmin", p.jmin).add("jmax", p.jmax);
    out.add(pb.str(), "avg_ratio_min", lo1, tol.asymptotic_band_lo, check(lo1 >= tol.asymptotic_band_lo));
    out.add(pb.str(), "avg_ratio_max", hi1, tol.asymptotic_band_hi, check(hi1 <= tol.asymptotic_band_hi));
    out.info(pb.str(), "separable_norm", sep.value);

    // Slice decomposition on random grids.
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double rmin = 1e300, rmax = 0.0;
    const int n = p.fubini_size;
    for (int c = 0; c < p.fubini_cases; ++c) {
        const auto g = GridFunction2D::uniform({{0.0, 1.0}, {0.0, 1.0}}, n, n,
                                               [&](std::size_t, std::size_t) { return -1.0 + 3.0 * u(rng); });
        auto pick = [&]() {
            std::vector<Interval> S;
            const int k = 1 + static_cast<int>(u(rng) * 2);
            std::vector<double> cuts;
            for (int i = 0; i < 2 * k; ++i) cuts.push_back(u(rng));
            std::sort(cuts.begin(), cuts.end());
            for (int i = 0; i < k; ++i)
                if (cuts[2 * i + 1] > cuts[2 * i]) S.push_back({cuts[2 * i], cuts[2 * i + 1]});
            if (S.empty()) S.push_back({0.25, 0.75});
            return S;
        };
        const auto A = pick(), B = pick();
        const auto d = slice_osc_decomposition(g, A, B);
        if (d.rhs > 0.0) {
            rmin = std::min(rmin, d.lhs / d.rhs);
            rmax = std::max(rmax, d.lhs / d.rhs);
        }
    }
    ParamList pf;
    pf.add("cases", p.fubini_cases).add("grid", n).add("seed", static_cast<double>(p.seed));
    out.add(pf.str(), "fubini_ratio_min", rmin, tol.fubini_lo, check(rmin >= tol.fubini_lo));
    out.add(pf.str(), "fubini_ratio_max", rmax, tol.fubini_hi, check(rmax <= tol.fubini_hi));
    return out.rows;
}

std::vector<ExperimentRow> exp_strong(const StrongParams& p, const Tolerances& tol) {
    Rows out{"strong", {}};
    const double S = kBumpSpacing;
    const double mass = 2.0 * boost::math::tgamma(p.p + 1.0);
    std::vector<double> norms, mins, tails, e1_osc, s_osc, s_far;
    const auto unit_x = midpoints({0.0, 1.0}, p.sample);
    std::vector<double> unit_y(p.sample);
    for (int j = 0; j < p.sample; ++j) unit_y[j] = (j + 1.0 / 3.0) / p.sample;
    const auto osc_pts = midpoints({-3.0, 3.0}, p.osc_grid);
    for (int N : p.N_list) {
        const auto policy = clamp_policy(N, p.p, p.q, p.cell);
        const auto g = build_gN2d(N, p.p, p.q);
        const auto G = build_gN2d(N, p.p, p.q, policy.height);
        ParamList pa;
        pa.add("N", N).add("p", p.p).add("q", p.q).add("clamp", policy.height).add("cell", p.cell);

        // (a) squares norm of G_N on a raster around the first two rows.
        const int nx = static_cast<int>(std::ceil((2.0 * S + 3.0) / p.cell));
        const int ny = static_cast<int>(std::round(4.0 / p.cell));
        const Rect win{{S - 1.5, S - 1.5 + nx * p.cell}, {-1.5, 2.5}};
        const auto grid = rasterize(G, win, nx, ny);
        norms.push_back(bmo_norm_2d(grid, win, RectFamily::squares(), 0).value);
        out.info(ParamList(pa).add("window", span(win)).str(), "squares_bmo_norm_G", norms.back());

        // (b) lower bound for M_e1 on [0, 1]^2, unclamped and clamped.
        const double bound = mass * std::pow(std::log(static_cast<double>(N)), p.q) / (6.0 * std::sqrt(2.0));
        double m = 1e300, mc = 1e300;
        const auto e1 = directional_maximal_e1(g, unit_y, unit_x);
        const auto e1c = directional_maximal_e1(G, unit_y, unit_x);
        for (std::size_t r = 0; r < unit_y.size(); ++r)
            for (std::size_t k = 0; k < unit_x.size(); ++k) {
                m = std::min(m, e1[r][k]);
                mc = std::min(mc, e1c[r][k]);
            }
        mins.push_back(m);
        ParamList pb = pa;
        pb.add("sample", p.sample);
        out.add(pb.str(), "min_Me1_g_on_[0:1]^2_minus_bound", m - bound, -tol.strong_lower_abs,
                check(m - bound >= -tol.strong_lower_abs));
        out.info(pb.str(), "min_Me1_G_on_[0:1]^2", mc, bound);

        // (c) nothing below the support.
        std::vector<double> below;
        for (int j = 0; j < 8; ++j) below.push_back(-3.0 + 1.99 * (j + 0.5) / 8);
        double tail = 0.0;
        for (const auto& row : directional_maximal_e1(G, below, unit_x))
            for (double v : row) tail = std::max(tail, v);
        tails.push_back(tail);
        out.add(pa.str(), "max_Me1_G_for_y<-1", tail, 0.0, check(tail == 0.0));

        // (d) M_s far below the rows.
        const auto far_x = midpoints({0.0, 1.0}, 8);
        const auto far_y = midpoints({-3.0, -2.0}, 8);
        double far = 0.0;
        for (const auto& row : strong_maximal_lower(G, far_y, far_x))
            for (double v : row) far = std::max(far, v);
        s_far.push_back(far);
        out.info(pa.str(), "max_Ms_lower_G_on_[0:1]x[-3:-2]", far);

        // (e) oscillation of the maximal functions over [-3, 3]^2.
        const auto me = directional_maximal_e1(G, osc_pts, osc_pts);
        const auto ms = strong_maximal_lower(G, osc_pts, osc_pts);
        std::vector<double> a, b;
        for (std::size_t r = 0; r < osc_pts.size(); ++r)
            for (std::size_t k = 0; k < osc_pts.size(); ++k) {
                a.push_back(me[r][k]);
                b.push_back(ms[r][k]);
            }
        e1_osc.push_back(discrete_mean_osc(a));
        s_osc.push_back(discrete_mean_osc(b));
        const double scale = std::pow(std::log(static_cast<double>(N)), p.q);
        ParamList pe = pa;
        pe.add("grid", p.osc_grid);
        out.info(pe.str(), "osc_Me1_G_on_[-3:3]^2", e1_osc.back());
        out.info(pe.str(), "osc_Ms_lower_G_on_[-3:3]^2", s_osc.back());
        out.info(pe.str(), "osc_Me1_G_over_(ln N)^q", e1_osc.back() / scale);
        out.info(pe.str(), "osc_Ms_lower_G_over_(ln N)^q", s_osc.back() / scale);
    }
    ParamList ps;
    ps.add_list("N", p.N_list).add("p", p.p).add("q", p.q).add("cell", p.cell);
    const double spread = max_of(norms) / min_of(norms);
    out.add(ps.str(), "squares_norm_max_over_min", spread, tol.strong_norm_factor, check(spread <= tol.strong_norm_factor));
    const double far_spread = max_of(s_far) / std::max(min_of(s_far), std::numeric_limits<double>::min());
    out.add(ps.str(), "Ms_lower_far_max_over_min", far_spread, tol.strong_bounded_factor,
            check(far_spread <= tol.strong_bounded_factor));
    out.add(ps.str(), "osc_Me1_strictly_increasing", e1_osc.back(), e1_osc.front(), check(strictly_increasing(e1_osc)));
    out.add(ps.str(), "osc_Ms_lower_strictly_increasing", s_osc.back(), s_osc.front(), check(strictly_increasing(s_osc)));
    return out.rows;
}

std::vector<ExperimentRow> exp_expint(const ExpintParams& p, const Tolerances& tol) {
    Rows out{"expint", {}};
    const Interval J{-0.5, 0.5};
    ParamList base;
    base.add("carrier", p.carrier).add("lambda", p.lambda).add("J", span(J));
    int kmax = 0;
    for (int k : p.K_list) kmax = std::max(kmax, k);
    if (kmax < 1 || kmax > 40) reject("K must be in [1, 40]");

    // A[K] = sup_{k <= K} O(f_y, I_k) / k with the y dependence factored out.
    std::vector<double> A(kmax + 1, 0.0);
    std::function<double(double)> weight;
    double norm = 1.0;
    if (p.carrier == "constant") {
        weight = [](double) { return 0.0; };
    } else if (p.carrier == "product") {
        const BumpSum2D bump(p.p, p.q, {{0.0, 0.0, 1.0, 0.0}});
        const Rect w{{-2.0, 2.0}, {-2.0, 2.0}};
        const int n = 1 << p.norm_level;
        norm = bmo_norm_2d(rasterize(bump, w, n, n), w, RectFamily::squares(), 0).value;
        const auto phi = sample_to_step(profiles::log_minus_pow(p.p), {-1.0, 1.0}, 1e-4);
        double best = 0.0;
        for (int k = 1; k <= kmax; ++k) {
            best = std::max(best, mean_osc(phi, {0.0, std::ldexp(1.0, k)}) / k);
            A[k] = best / norm;
        }
        const double q = p.q;
        weight = [q](double y) { return log_minus_pow(y, q); };
    } else {
        reject("unknown carrier '" + p.carrier + "' (expected product or constant)");
    }
    for (int k = 1; k <= kmax; ++k)
        if (p.carrier == "constant") A[k] = 0.0;
    out.info(ParamList(base).add("norm_level", p.norm_level).str(), "measured_norm", norm);

    // int_J exp(lambda A psi(y)) dy = 2 int_{ln 2}^inf exp(lambda A u^q - u) du for the product carrier.
    auto integral = [&](double a) {
        if (p.carrier == "constant" || a == 0.0 || p.lambda == 0.0) return J.length();
        boost::math::quadrature::exp_sinh<double> es;
        const double q = p.q, lam = p.lambda, l2 = std::log(2.0);
        return 2.0 * es.integrate([&](double t) { const double u = l2 + t; return std::exp(lam * a * std::pow(u, q) - u); });
    };
    std::vector<double> vals;
    for (int K : p.K_list) {
        vals.push_back(integral(A[K]));
        out.info(ParamList(base).add("K", K).str(), "integral", vals.back());
    }
    ParamList pk = base;
    pk.add_list("K", p.K_list);
    const double rel = std::abs(vals.back() - vals.front()) / vals.front();
    out.add(pk.str(), "integral_relative_change_first_to_last_K", rel, tol.expint_stability_rel,
            check(rel <= tol.expint_stability_rel));
    bool monotone = true;
    for (std::size_t i = 1; i < vals.size(); ++i) monotone = monotone && vals[i] >= vals[i - 1];
    out.add(pk.str(), "integral_nondecreasing_in_K", vals.back() - vals.front(), 0.0, check(monotone));
    if (rel > tol.expint_stability_rel) out.add(pk.str(), "integral_growth_across_K", rel, {}, Verdict::Warning);

    // Tail sets E_t = {y in J : sup_k O(f_y, I_k) / k > t} measured on y samples.
    const auto ys = midpoints(J, p.y_samples);
    std::vector<double> S;
    for (double y : ys) S.push_back(A[kmax] * weight(y));
    std::sort(S.begin(), S.end());
    const std::size_t ny = S.size();
    const double t0 = S[ny / 2], t1 = S[ny - std::min<std::size_t>(ny, 32)];
    ParamList pt = base;
    pt.add("K", kmax).add("y_samples", p.y_samples);
    if (!(t1 > t0)) {
        out.add(pt.str(), "tail_decay_rate", 0.0, {}, Verdict::Skipped);
        return out.rows;
    }
    std::vector<double> ts, ls;
    for (int i = 0; i < p.t_points; ++i) {
        const double t = t0 + (t1 - t0) * i / (p.t_points - 1);
        const auto above = static_cast<double>(S.end() - std::upper_bound(S.begin(), S.end(), t));
        const double measure = above / ny * J.length();
        if (measure <= 0.0) continue;
        ts.push_back(t);
        ls.push_back(std::log(measure));
        out.info(ParamList(pt).add("t", t).str(), "tail_measure", measure);
    }
    const double n = static_cast<double>(ts.size());
    double st = 0, sl = 0, stt = 0, stl = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        st += ts[i];
        sl += ls[i];
        stt += ts[i] * ts[i];
        stl += ts[i] * ls[i];
    }
    const double slope = (n * stl - st * sl) / (n * stt - st * st);
    out.add(pt.str(), "tail_decay_rate", -slope, 0.0, check(-slope > 0.0));
    return out.rows;
}

std::vector<ExperimentRow> exp_dyadic(const DyadicParams& p, const Tolerances&) {
    Rows out{"dyadic", {}};
    std::mt19937_64 rng(p.seed);
    std::uniform_int_distribution<int> level(-4, 0), cells(1, 30);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const Interval window{-8.0, 8.0};
    double worst = 0.0;
    for (int c = 0; c < p.cases; ++c) {
        const auto f = random_step(rng, cells(rng), {-4.0, 4.0}, -1.0, 2.0);
        const int m = level(rng);
        const double len = std::ldexp(1.0, m);
        const int slots = static_cast<int>(8.0 / len);
        const double lo = -4.0 + len * std::floor(u(rng) * slots);
        worst = std::max(worst, dyadic_nonlocal(f, {lo, lo + len}, window).osc_on_Q0);
    }
    ParamList pa;
    pa.add("cases", p.cases).add("seed", static_cast<double>(p.seed)).add("window", span(window));
    out.add(pa.str(), "max_osc_of_dyadic_nonlocal_on_Q0", worst, 0.0, check(worst == 0.0));
    return out.rows;
}

std::vector<ExperimentRow> oracle_suite(const OracleParams& p, const Tolerances& tol) {
    Rows out{"oracle", {}};
    std::mt19937_64 rng(p.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ParamList base;
    base.add("seed", static_cast<double>(p.seed));

    double dev = 0.0;
    for (int c = 0; c < p.mhl_cases; ++c) {
        const auto f = random_step(rng, 1 + static_cast<int>(u(rng) * 50), {-3.0, 3.0}, -1.0, 2.0);
        const Interval w{-4.0, 4.0};
        for (int k = 0; k < 4; ++k) {
            const double x = w.lo + u(rng) * w.length();
            dev = std::max(dev, std::abs(mhl_point(f, x, w) - mhl_brute(f, x, w)));
        }
    }
    out.add(ParamList(base).add("cases", p.mhl_cases).str(), "mhl_optimized_vs_brute", dev, tol.oracle_abs,
            check(dev <= tol.oracle_abs));

    dev = 0.0;
    for (int c = 0; c < p.osc_cases; ++c) {
        const auto f = random_step(rng, 1 + static_cast<int>(u(rng) * 20), {-1.0, 1.0}, -1.0, 2.0);
        for (auto mode : {OscMode::L1, OscMode::L2}) {
            const double a = bmo_norm_1d(f, {-1.0, 1.0}, 4, mode).value;
            const double b = bmo_norm_1d_exhaustive(f, {-1.0, 1.0}, 4, mode).value;
            dev = std::max(dev, std::abs(a - b));
        }
    }
    out.add(ParamList(base).add("cases", p.osc_cases).str(), "bmo_norm_1d_certified_vs_exhaustive", dev,
            tol.oracle_abs, check(dev <= tol.oracle_abs));

    dev = 0.0;
    const Rect unit{{0.0, 1.0}, {0.0, 1.0}};
    for (int c = 0; c < p.osc_cases / 4; ++c) {
        const int nx = 2 + static_cast<int>(u(rng) * 6), ny = 2 + static_cast<int>(u(rng) * 6);
        const auto g = GridFunction2D::uniform(unit, nx, ny, [&](std::size_t, std::size_t) { return u(rng); });
        for (auto fam : {RectFamily::squares(), RectFamily::rects(), RectFamily::rects(2.0)}) {
            const double a = bmo_norm_2d(g, unit, fam, 2).value;
            const double b = bmo_norm_2d_exhaustive(g, unit, fam, 2).value;
            dev = std::max(dev, std::abs(a - b));
        }
    }
    out.add(ParamList(base).add("cases", p.osc_cases / 4).str(), "bmo_norm_2d_certified_vs_exhaustive", dev,
            tol.oracle_abs, check(dev <= tol.oracle_abs));

    dev = 0.0;
    for (int c = 0; c < p.grid_cases; ++c) {
        const int nx = 2 + static_cast<int>(u(rng) * (p.max_grid - 1));
        const int ny = 2 + static_cast<int>(u(rng) * (p.max_grid - 1));
        const auto g = GridFunction2D::uniform(unit, nx, ny, [&](std::size_t, std::size_t) { return 2.0 * u(rng) - 0.5; });
        for (int k = 0; k < 2; ++k) {
            const Point2 q{u(rng), u(rng)};
            const auto cap = k == 0 ? std::optional<double>{} : std::optional<double>{3.0};
            const double a = strong_maximal(g, {q}, unit, cap)[0];
            const double b = strong_maximal_naive(g, q, unit, cap);
            dev = std::max(dev, std::abs(a - b));
        }
    }
    out.add(ParamList(base).add("cases", p.grid_cases).add("max_grid", p.max_grid).str(),
            "strong_maximal_prefix_vs_naive", dev, tol.oracle_abs, check(dev <= tol.oracle_abs));

    dev = 0.0;
    for (int c = 0; c < p.bump_cases; ++c) {
        std::vector<BumpRun> runs;
        double x = 0.0;
        const int nr = 1 + static_cast<int>(u(rng) * 4);
        for (int r = 0; r < nr; ++r) {
            const double count = 1.0 + std::floor(u(rng) * 5);
            const double dx = kBumpSpacing * (1.0 + u(rng));
            runs.push_back({x, dx, count, 2.0 * u(rng) - 1.0});
            x += count * dx + kBumpSpacing;
        }
        const auto clamp = u(rng) < 0.5 ? std::optional<double>{} : std::optional<double>{0.5 + 2.0 * u(rng)};
        const BumpSum2D g(0.5, 0.5, runs, clamp);
        for (int k = 0; k < 5; ++k) {
            const double px = -1.0 + u(rng) * (x + 1.0), py = -1.5 + 3.0 * u(rng);
            const double a = g(px, py), b = evaluate_naive(g, px, py);
            dev = std::max(dev, std::abs(a - b) / std::max(1.0, std::abs(b)));
        }
    }
    out.add(ParamList(base).add("cases", p.bump_cases).str(), "bumpsum_fast_vs_naive_rel", dev, tol.oracle_abs,
            check(dev <= tol.oracle_abs));

    // Zero input: every operator returns zero.
    double zero = 0.0;
    const auto z1 = StepFunction1D::zero({-1.0, 1.0});
    zero = std::max(zero, mhl_point(z1, 0.3, {-1.0, 1.0}));
    zero = std::max(zero, bmo_norm_1d(z1, {-1.0, 1.0}, 4).value);
    const auto z2 = GridFunction2D::uniform(unit, 4, 4, [](std::size_t, std::size_t) { return 0.0; });
    zero = std::max(zero, strong_maximal(z2, {{0.4, 0.6}}, unit)[0]);
    zero = std::max(zero, bmo_norm_2d(z2, unit, RectFamily::squares(), 2).value);
    for (const auto& row : directional_maximal_e1(z2, {0.3}, {0.1, 0.5}, {0.0, 1.0}))
        for (double v : row) zero = std::max(zero, v);
    out.add(base.str(), "zero_function_max_output", zero, 0.0, check(zero == 0.0));
    return out.rows;
}

}  // namespace bmo
