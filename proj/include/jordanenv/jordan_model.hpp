#pragma once

#include <string>
#include <vector>

#include "jordanenv/matrix.hpp"

namespace jordanenv {

// One summand J_m(lambda) (x) 1_d of a Jordan operator.
struct JordanBlockSpec {
    int size = 1;
    Complex eigenvalue{0.0, 0.0};
    int multiplicity = 1;

    JordanBlockSpec(int m, Complex lambda, int d = 1);
    bool real_eigenvalue() const { return eigenvalue.imag() == 0.0; }
};

struct JordanSpec {
    std::vector<JordanBlockSpec> blocks;

    explicit JordanSpec(std::vector<JordanBlockSpec> b);

    int block_count() const { return static_cast<int>(blocks.size()); }
    int total_dimension() const;   // multiplicities expanded
    int reduced_dimension() const; // multiplicities ignored
    bool all_real() const;
    bool all_scalar() const;
};

// Direct sum of blocks J_{m_k}(lambda) with a single eigenvalue, where the
// list of sizes may be unbounded. Only the symbolic envelope rule consumes
// this; nothing here is ever realized as a matrix.
struct InfiniteJordanSpec {
    Complex eigenvalue{0.0, 0.0};
    bool bounded = true;
    int max_size = 1; // meaningful when bounded
};

// Canonical form plus the permutation record, so per-block verdicts can be
// mapped back to the caller's original block order.
struct NormalizedSpec {
    JordanSpec spec;
    std::vector<int> canonical_of_original;   // original index -> canonical index
    std::vector<std::vector<int>> originals;  // canonical index -> original indices
};

// Merge duplicate (size, eigenvalue) pairs into multiplicity, then order
// blocks by descending Re(lambda), ties by descending Im(lambda), then by
// descending size. Idempotent.
NormalizedSpec normalize(const JordanSpec& spec,
                         const Tolerances& tol = default_tolerances());

// Block-diagonal realization with multiplicities expanded.
ComplexMatrix realize(const JordanSpec& spec,
                      const Tolerances& tol = default_tolerances());

struct IrreducibilityReport {
    bool irreducible = false;
    bool multiplicity_reduced = false; // some d > 1 was ignored
    int commutant_dimension = -1;      // -1 when the numerical check was skipped
    std::string reason;
};

// A normalized family is irreducible exactly when all (size, eigenvalue)
// pairs are distinct; the numerical cross-check solves the joint commutant
// system {X : XJ = JX, XJ* = J*X} on the multiplicity-free realization and
// compares its dimension with the block count.
IrreducibilityReport is_irreducible_family(const JordanSpec& normalized,
                                           const Tolerances& tol = default_tolerances());

// Dimension of span{1, J, J*}: 1 for a scalar operator, 2 when J is a real
// affine image of a selfadjoint diagonal, else 3.
int operator_system_dimension(const JordanSpec& spec,
                              const Tolerances& tol = default_tolerances());

} // namespace jordanenv
