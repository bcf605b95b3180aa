#pragma once

namespace fbc {

// All tolerances and numerical knobs in one place.  Angles are radians,
// parameter-space quantities are expressed as fractions of the curve period.
struct Config {
    double tol_sep = 1e-8;        // minimum projective separation for geodesic_through
    double tol_on = 1e-8;         // on-geodesic tolerance for region_class / point_along
    double v_min = 1e-6;          // speed below which a parameter counts as a cusp
    double delta_cusp_frac = 1e-3;// exclusion window around cusps, fraction of period
    double tol_kg = 1e-8;         // |k_g| below this is an inflection
    int grid = 1024;              // grid per axis for two-parameter scans
    int grid1d = 4096;            // grid for one-parameter scans
    int newton_max_iter = 50;
    double newton_tol = 1e-10;    // residual target for refinement
    double tol_dedup_frac = 1e-6; // event dedup radius, fraction of period
    double eps_frac = 1e-3;       // classification probe offset, fraction of period
    double tol_ang = 1e-4;        // genericity angle tolerance
    double diag_band_cells = 8.0; // diagonal exclusion band for self-scans, in cells
    double kappa_bend = 1e-3;     // nominal bend for inflection-geodesic crossings
    int threads = 0;              // 0 = decide from FBCOUNT_THREADS / hardware
};

} // namespace fbc
