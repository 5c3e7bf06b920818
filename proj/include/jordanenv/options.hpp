#pragma once

#include "jordanenv/tolerances.hpp"

namespace jordanenv {

// Knobs a single classification run carries around. disk_radius_bias
// perturbs the closed-form block radii and exists solely so the verification
// harness can prove its own checks are live; production paths leave it 0.
struct EngineOptions {
    Tolerances tol{};
    int n_theta = 720;
    int oracle_max_iter = -1; // -1 means tol.choi_max_iter
    double disk_radius_bias = 0.0;

    int max_iterations() const {
        return oracle_max_iter > 0 ? oracle_max_iter : tol.choi_max_iter;
    }
};

} // namespace jordanenv
