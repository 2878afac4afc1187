// bmo: command-line front end for the oscillation, maximal-function and
// experiment code. Exit codes: 0 all rows pass, 2 a row failed, 3 rejected input.

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bmo/error.hpp"
#include "bmo/grid2d.hpp"
#include "bmo/harness.hpp"
#include "bmo/maximal1d.hpp"
#include "bmo/oscillation.hpp"
#include "bmo/plane.hpp"
#include "bmo/sampler.hpp"

using namespace bmo;

namespace {

struct Common {
    std::string window;
    std::string window_y;
    int resolution = -1;
    int refine = -1;
    std::string out;
    std::optional<std::uint64_t> seed;
};

struct Input {
    std::string file;
    std::string profile;
    double p = 0.5;
    double eps = 1e-2;
    std::string mode = "L1";
    double delta = 0.0;
    std::string family = "squares";
    double cap = 0.0;
    std::vector<double> at;
};

struct ExpFlags {
    std::optional<double> c, p, q, lambda;
    std::vector<double> n, cfactor;
    std::vector<int> N;
    std::optional<int> kmax;
    std::string carrier = "product";
};

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) reject("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) reject("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Sampler1D named_profile(const std::string& name, double p) {
    if (name == "log_abs") return profiles::log_abs();
    if (name == "log_plus") return profiles::log_plus();
    if (name == "log_minus_pow") return profiles::log_minus_pow(p);
    if (name == "heaviside") return profiles::heaviside();
    if (name == "indicator") return profiles::indicator({0.0, 1.0});
    reject("unknown profile '" + name + "' (log_abs, log_plus, log_minus_pow, heaviside, indicator)");
}

StepFunction1D load_1d(const Input& in, const std::optional<Interval>& window) {
    if (!in.file.empty()) return from_text(slurp(in.file));
    if (in.profile.empty()) reject("give --input FILE or --profile NAME");
    if (!window) reject("--profile needs --window LO:HI");
    return sample_to_step(named_profile(in.profile, in.p), *window, in.eps);
}

std::optional<Interval> opt_interval(const std::string& s) {
    if (s.empty()) return std::nullopt;
    return parse_interval(s);
}

int finish(const std::vector<ExperimentRow>& rows, const Common& c) {
    Output out(c.out);
    write_csv_header(out.stream());
    write_csv(out.stream(), rows);
    return any_failed(rows) ? 2 : 0;
}

int run_osc(const Common& c, const Input& in) {
    const int level = c.refine < 0 ? 8 : c.refine;
    const auto mode = parse_mode(in.mode);
    const bool grid = !in.file.empty() && slurp(in.file).rfind("grid2d", 0) == 0;
    Output out(c.out);
    if (grid) {
        const auto g = grid_from_text(slurp(in.file));
        Rect window = g.span();
        if (auto w = opt_interval(c.window)) window.x = *w;
        if (auto w = opt_interval(c.window_y)) window.y = *w;
        RectFamily family;
        if (in.family == "squares") family = RectFamily::squares();
        else if (in.family == "rects") family = RectFamily::rects(in.cap);
        else reject("unknown family '" + in.family + "' (squares, rects)");
        write_report_csv_header(out.stream(), true);
        write_report_csv(out.stream(), bmo_norm_2d(g, window, family, level, mode));
        return 0;
    }
    auto window = opt_interval(c.window);
    const auto f = load_1d(in, window);
    const Interval w = window ? *window : f.span();
    write_report_csv_header(out.stream());
    if (in.delta > 0.0) write_report_csv(out.stream(), omega(f, in.delta, w, level, mode));
    else write_report_csv(out.stream(), bmo_norm_1d(f, w, level, mode));
    return 0;
}

int run_maximal(const Common& c, const Input& in) {
    auto window = opt_interval(c.window);
    const auto f = load_1d(in, window);
    const Interval w = window ? *window : f.span();
    std::vector<double> xs = in.at;
    if (xs.empty()) {
        const int n = c.resolution < 0 ? 256 : c.resolution;
        if (n < 1 || n > 10'000'000) reject("--resolution must be in [1, 1e7]");
        for (int i = 0; i < n; ++i) xs.push_back(w.lo + (i + 0.5) * w.length() / n);
    }
    std::sort(xs.begin(), xs.end());
    Output out(c.out);
    write_profile_csv(out.stream(), mhl_profile(f, xs, w));
    return 0;
}

std::vector<ExperimentRow> run_experiment(const std::string& name, const Common& c, const ExpFlags& e) {
    if (name == "discontinuity") {
        DiscontinuityParams p;
        if (e.c) p.c = *e.c;
        if (!e.n.empty()) p.n_list = e.n;
        if (c.refine >= 0) p.refine = c.refine;
        if (c.resolution >= 0) p.osc_samples = 1 << std::min(c.resolution, 24);
        return exp_discontinuity(p);
    }
    if (name == "gn") {
        GnParams p;
        if (e.c) p.c = *e.c;
        if (!e.n.empty()) p.n_list = e.n;
        if (c.refine >= 0) p.refine = c.refine;
        return exp_gn(p);
    }
    if (name == "vmo") {
        VmoParams p;
        if (c.resolution >= 0) p.resolution = c.resolution;
        if (!e.cfactor.empty()) p.cfactors = e.cfactor;
        return exp_vmo(p);
    }
    if (name == "product") {
        ProductParams p;
        if (e.p) p.p = *e.p;
        if (e.q) p.q = *e.q;
        if (c.resolution >= 0) {
            p.fine = c.resolution;
            p.coarse = c.resolution - 2;
        }
        if (c.seed) p.seed = *c.seed;
        return exp_product(p);
    }
    if (name == "strong") {
        StrongParams p;
        if (!e.N.empty()) p.N_list = e.N;
        if (e.p) p.p = *e.p;
        if (e.q) p.q = *e.q;
        if (c.resolution >= 0) p.cell = std::ldexp(1.0, -c.resolution);
        return exp_strong(p);
    }
    if (name == "expint") {
        ExpintParams p;
        p.carrier = e.carrier;
        if (e.p) p.p = *e.p;
        if (e.q) p.q = *e.q;
        if (e.lambda) p.lambda = *e.lambda;
        if (e.kmax) p.K_list = {std::max(1, *e.kmax / 2), *e.kmax};
        if (c.resolution >= 0) p.y_samples = 1 << std::min(c.resolution, 24);
        return exp_expint(p);
    }
    if (name == "extension") {
        ExtensionParams p;
        if (c.refine >= 0) p.refine = c.refine;
        if (c.seed) p.seed = *c.seed;
        return exp_extension(p);
    }
    if (name == "john-nirenberg") {
        JnParams p;
        if (e.kmax) p.kmax = *e.kmax;
        if (c.seed) p.seed = *c.seed;
        return exp_john_nirenberg(p);
    }
    if (name == "dyadic") {
        DyadicParams p;
        if (c.seed) p.seed = *c.seed;
        return exp_dyadic(p);
    }
    if (name == "maximal") {
        MaximalParams p;
        if (c.seed) p.seed = *c.seed;
        return exp_maximal_exactness(p);
    }
    reject("unknown experiment '" + name + "'");
}

std::vector<ExperimentRow> selftest(std::uint64_t seed) {
    std::vector<ExperimentRow> rows;
    auto append = [&](std::vector<ExperimentRow> r) { rows.insert(rows.end(), r.begin(), r.end()); };
    OracleParams o;
    o.seed = seed;
    o.mhl_cases = 50;
    o.osc_cases = 12;
    o.grid_cases = 10;
    o.max_grid = 24;
    o.bump_cases = 50;
    append(oracle_suite(o));
    append(exp_maximal_exactness({100, 50, 50, seed}));
    append(exp_dyadic({50, seed}));
    append(exp_john_nirenberg({5, 50, seed}));
    ExpintParams flat;
    flat.carrier = "constant";
    append(exp_expint(flat));
    return rows;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oscillation, maximal functions and experiments on step functions and grids"};
    app.require_subcommand(1);
    Common common;
    Input input;
    ExpFlags ef;

    auto shared = [&](CLI::App* sub) {
        sub->add_option("--window", common.window, "Window LO:HI");
        sub->add_option("--resolution", common.resolution, "Sample count or raster level");
        sub->add_option("--refine", common.refine, "Refinement level of the candidate grid");
        sub->add_option("--out", common.out, "CSV output file (default stdout)");
        sub->add_option("--seed", common.seed, "Random seed");
    };
    auto inputs = [&](CLI::App* sub) {
        sub->add_option("--input", input.file, "stepfn v1 or grid2d v1 text file");
        sub->add_option("--profile", input.profile, "log_abs|log_plus|log_minus_pow|heaviside|indicator");
        sub->add_option("--p", input.p, "Exponent for log_minus_pow");
        sub->add_option("--eps", input.eps, "Max cell error when sampling a profile");
    };

    auto* osc = app.add_subcommand("osc", "BMO norm (or omega with --delta) of a step function or grid");
    shared(osc);
    inputs(osc);
    osc->add_option("--window-y", common.window_y, "Second-axis window for grids");
    osc->add_option("--mode", input.mode, "L1 or L2");
    osc->add_option("--delta", input.delta, "Length cap; reports omega(f, delta)");
    osc->add_option("--family", input.family, "squares or rects (grids)");
    osc->add_option("--cap", input.cap, "Eccentricity cap for rects, 0 = none");

    auto* maximal = app.add_subcommand("maximal", "Uncentered maximal function profile");
    shared(maximal);
    inputs(maximal);
    maximal->add_option("--at", input.at, "Query points (default: resolution midpoints)")->delimiter(',');

    auto* exp = app.add_subcommand("exp", "Run an experiment and emit CSV rows");
    shared(exp);
    std::string exp_name;
    exp->add_option("name", exp_name,
                    "discontinuity|vmo|product|strong|expint|gn|extension|john-nirenberg|dyadic|maximal")
        ->required();
    exp->add_option("--c", ef.c, "Mask endpoint c < -1");
    exp->add_option("--n", ef.n, "Half period list")->delimiter(',');
    exp->add_option("--N", ef.N, "Lattice depth list")->delimiter(',');
    exp->add_option("--p", ef.p, "x exponent");
    exp->add_option("--q", ef.q, "y exponent");
    exp->add_option("--cfactor", ef.cfactor, "Scale split factors")->delimiter(',');
    exp->add_option("--lambda", ef.lambda, "Exponential integrability parameter");
    exp->add_option("--kmax", ef.kmax, "Largest k");
    exp->add_option("--carrier", ef.carrier, "product or constant (expint)");

    auto* oracle = app.add_subcommand("oracle", "Randomized fast-vs-reference equivalence checks");
    shared(oracle);
    auto* self = app.add_subcommand("selftest", "Quick oracle and exactness checks");
    shared(self);

    CLI11_PARSE(app, argc, argv);

    try {
        if (osc->parsed()) return run_osc(common, input);
        if (maximal->parsed()) return run_maximal(common, input);
        if (exp->parsed()) return finish(run_experiment(exp_name, common, ef), common);
        if (oracle->parsed()) {
            OracleParams p;
            if (common.seed) p.seed = *common.seed;
            return finish(oracle_suite(p), common);
        }
        if (self->parsed()) return finish(selftest(common.seed.value_or(7)), common);
    } catch (const Rejection& e) {
        std::cerr << "rejected: " << e.what() << '\n';
        return 3;
    }
    return 1;
}
