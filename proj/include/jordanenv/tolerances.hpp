#pragma once

namespace jordanenv {

// Every numerical verdict in the library traces back to one of these knobs.
// Downstream code takes the record by const reference so a run can be
// reproduced from a single configuration value.
struct Tolerances {
    // matrix core
    double hermitian_admit = 1e-12;    // max relative asymmetry accepted by HermitianMatrix
    double jacobi_offdiag_rel = 1e-14; // stop when off-diagonal mass < rel * ||H||_F
    int jacobi_max_sweeps = 64;
    double eigen_residual_rel = 1e-10; // ||H - V L V*||_F budget, relative
    double psd_fixpoint = 1e-10;       // PSD inputs are fixed points of psd_project within this

    // jordan model
    double eigenvalue_merge = 1e-9;    // blocks with equal size and |dl| below this fuse
    double commutant_null_sv = 1e-8;   // singular values below this count as null directions
    int commutant_check_max_dim = 24;  // skip the numerical commutant check above this total size
    int realize_max_dim = 512;

    // numerical range
    int n_theta_default = 720;
    int n_theta_min = 64;
    double numrange_band = 1e-7;       // half-width of the boundary-ambiguous band
    double exact_eq = 1e-12;           // equality band for closed-form disk comparisons

    // Choi feasibility oracle
    int choi_max_dim = 256;
    int choi_max_iter = 20000;
    double choi_feasible_residual = 1e-7; // combined residual for a Feasible verdict
    double choi_infeasible_gap = 1e-5;    // a certified separation above this is Infeasible
    int choi_stall_window = 500;          // consecutive iterations the gap must hold
    double choi_stall_rel_var = 2e-2;     // gap variation that counts as stabilized
    double plan_exact = 1e-12;            // compression plans must reproduce the target this well
    double certificate_residual = 1e-9;   // witness Choi matrices are re-verified to this
};

inline const Tolerances& default_tolerances() {
    static const Tolerances tol{};
    return tol;
}

} // namespace jordanenv
