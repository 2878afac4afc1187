#pragma once

#include <cstdint>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace bmo {

enum class Verdict { Pass, Fail, Info, Skipped, Warning };

std::string to_string(Verdict v);

/// One CSV line. `params` is a flattened `key=value;key=value` list; `bound`
/// is the reference side of the row's comparison when it has one.
struct ExperimentRow {
    std::string experiment;
    std::string params;
    std::string metric;
    double value = 0.0;
    std::optional<double> bound;
    Verdict verdict = Verdict::Info;
};

void write_csv_header(std::ostream& out);
void write_csv(std::ostream& out, const std::vector<ExperimentRow>& rows);
bool any_failed(const std::vector<ExperimentRow>& rows);

/// Every pass threshold used by the experiments.
struct Tolerances {
    double mhl_closed_form_rel = 1e-9;
    double oracle_abs = 1e-9;
    double extension_constant = 10.0;
    double gn_average_abs = 1e-4;
    double mf_equal_abs = 1e-6;
    double discontinuity_bound_abs = 1e-4;
    double discontinuity_floor = 0.003;
    double discontinuity_ratio = 0.1;  // reported, not enforced (see README)
    double vmo_halving = 0.5;
    double non_vmo_flat_rel = 0.05;
    double jn_exact_abs = 1e-3;
    double jn_constant = 2.0;
    double product_drift_rel = 0.02;
    double asymptotic_band_lo = 1.0 / 3.0;
    double asymptotic_band_hi = 3.0;
    double fubini_lo = 0.25;
    double fubini_hi = 4.0;
    double strong_norm_factor = 1.5;
    double strong_lower_abs = 1e-3;
    double strong_bounded_factor = 1.5;
    double expint_stability_rel = 0.05;
};

const Tolerances& default_tolerances();

// Maximal function of an indicator against 1/(1 - x), plus the optimized
// versus brute-force maximal function on random step functions.
struct MaximalParams {
    int points = 100;
    int random_cases = 200;
    int max_cells = 50;
    std::uint64_t seed = 1;
};
std::vector<ExperimentRow> exp_maximal_exactness(const MaximalParams& p, const Tolerances& tol = default_tolerances());

// Even periodic extension: windowed norm of H against 10 times the norm of h.
struct ExtensionParams {
    int cases = 50;
    std::vector<double> periods{1.0, 2.0, 8.0};
    int refine = 10;
    int max_cells = 12;
    std::uint64_t seed = 2;
};
std::vector<ExperimentRow> exp_extension(const ExtensionParams& p, const Tolerances& tol = default_tolerances());

struct GnParams {
    double c = -3.0;
    std::vector<double> n_list{1e2, 1e3, 1e4};
    double max_cell_error = 1e-3;
    int refine = 10;
};
std::vector<ExperimentRow> exp_gn(const GnParams& p, const Tolerances& tol = default_tolerances());

struct DiscontinuityParams {
    double c = -3.0;
    std::vector<double> n_list{1e2, 1e3, 1e4};
    double max_cell_error = 1e-3;
    int queries = 257;      // grid on [c, 0] for |Mf_n - Mf|
    int osc_samples = 4096;  // midpoints of [2c, 0]
    int refine = 10;
};
std::vector<ExperimentRow> exp_discontinuity(const DiscontinuityParams& p,
                                             const Tolerances& tol = default_tolerances());

struct VmoParams {
    int resolution = 14;  // Mf sampled at 2^resolution midpoints of [-1, 1]
    int jmin = 2, jmax = 10;
    double max_cell_error = 1e-3;
    std::vector<double> cfactors{std::numbers::e + 0.1, 8.0, 32.0};
    std::vector<double> deltas{1.0 / 16, 1.0 / 64};
    int cubes = 16;   // sampled Q0 per delta
    int points = 33;  // samples per Q0
};
std::vector<ExperimentRow> exp_vmo(const VmoParams& p, const Tolerances& tol = default_tolerances());

struct JnParams {
    int kmax = 5;
    int cases = 100;
    std::uint64_t seed = 3;
};
std::vector<ExperimentRow> exp_john_nirenberg(const JnParams& p, const Tolerances& tol = default_tolerances());

struct ProductParams {
    double p = 0.5, q = 0.5;
    int coarse = 6, fine = 8;  // raster levels compared for stabilization
    std::vector<double> caps{4.0, 16.0, 64.0};
    int cap_level = 6;
    int jmin = 4, jmax = 10;
    int fubini_cases = 200;
    int fubini_size = 64;
    std::uint64_t seed = 4;
};
std::vector<ExperimentRow> exp_product(const ProductParams& p, const Tolerances& tol = default_tolerances());

struct StrongParams {
    std::vector<int> N_list{4, 16, 64};
    double p = 0.5, q = 0.5;
    double cell = 1.0 / 16;  // raster cell size, also the clamp policy scale
    int sample = 32;         // sample x sample grid of [0, 1]^2
    int osc_grid = 50;       // midpoints of [-3, 3]^2
};
std::vector<ExperimentRow> exp_strong(const StrongParams& p, const Tolerances& tol = default_tolerances());

struct ExpintParams {
    std::string carrier = "product";  // product | constant
    double p = 0.5, q = 0.5;
    double lambda = 0.1;
    std::vector<int> K_list{8, 16};
    int norm_level = 6;     // raster level used to measure the carrier's norm
    int y_samples = 1 << 16;  // midpoints of J = [-1/2, 1/2] for |E_t|
    int t_points = 24;
};
std::vector<ExperimentRow> exp_expint(const ExpintParams& p, const Tolerances& tol = default_tolerances());

struct DyadicParams {
    int cases = 100;
    std::uint64_t seed = 5;
};
std::vector<ExperimentRow> exp_dyadic(const DyadicParams& p, const Tolerances& tol = default_tolerances());

struct OracleParams {
    std::uint64_t seed = 6;
    int mhl_cases = 200;
    int osc_cases = 40;
    int grid_cases = 50;
    int max_grid = 64;
    int bump_cases = 200;
};
std::vector<ExperimentRow> oracle_suite(const OracleParams& p, const Tolerances& tol = default_tolerances());

}  // namespace bmo
