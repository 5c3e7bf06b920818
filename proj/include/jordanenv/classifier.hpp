#pragma once

#include <optional>
#include <string>
#include <vector>

#include "jordanenv/matricial_oracle.hpp"

namespace jordanenv {

enum class BoundaryRule {
    Selfadjoint,
    FullClassificationInterior,
    FullClassificationExtreme,
    ScalarNumrange,
    CompressionWitness,
    ChoiOracle,
    DimensionForcing,
};

const char* boundary_rule_name(BoundaryRule rule);

enum class Boundary { Yes, No, Undecided };

struct BoundaryVerdict {
    int block = 0; // canonical index
    Boundary is_boundary = Boundary::Undecided;
    BoundaryRule rule = BoundaryRule::ChoiOracle;
    double margin = 0.0;
};

// Per-block verdicts plus the resulting envelope. The envelope is the list
// of matrix-algebra summand dimensions contributed by boundary blocks, in
// canonical block order and with multiplicities already reduced; when some
// verdicts are undecided the envelope is bracketed by a lower and an upper
// list instead of a single answer.
struct EnvelopeReport {
    NormalizedSpec normalized;
    std::vector<BoundaryVerdict> verdicts;
    bool decided = true;
    bool reduced = false;             // every block boundary
    std::vector<int> envelope;        // summand dims, definite blocks only
    std::vector<int> envelope_upper;  // definite + undecided blocks

    const BoundaryVerdict& verdict_for_original(int original_index) const;
};

// Diagonal selfadjoint case: every block 1x1 with a real eigenvalue. The
// envelope is C + C (just C for a scalar operator) and the boundary blocks
// are the two spectral extremes. Returns nothing when the hypotheses fail.
std::optional<EnvelopeReport> classify_selfadjoint(const JordanSpec& spec,
                                                   const EngineOptions& opts = {});

// Full classification for real eigenvalues: interior blocks are boundary
// exactly when they strictly dominate the sizes on one side; extreme blocks
// are boundary when nonscalar, or when scalar and outside every other
// block's range disk. Blocks dominated by a larger block with the same
// eigenvalue are never boundary.
EnvelopeReport classify_real(const JordanSpec& spec, const EngineOptions& opts = {});

// Closed-form envelope table for real eigenvalues when no interior block
// exceeds both extreme sizes; cross-checked against classify_real before
// returning. Returns nothing when its hypotheses fail.
std::optional<EnvelopeReport> classify_corollary(const JordanSpec& spec,
                                                 const EngineOptions& opts = {});

// Real eigenvalues: the envelope is abelian exactly when every block is 1x1.
bool classify_abelian_test(const JordanSpec& spec);

// Per-block matricial-range criterion for arbitrary complex eigenvalues: a
// dimension-forcing pre-pass, then membership of each block in the range of
// the rest. Oracle starvation propagates as Undecided.
EnvelopeReport classify_general(const JordanSpec& spec, const EngineOptions& opts = {});

// Dispatch: selfadjoint diagonal, then the real closed forms, then the
// general criterion.
EnvelopeReport classify(const JordanSpec& spec, const EngineOptions& opts = {});

// Symbolic verdict for a same-eigenvalue direct sum with unboundedly many
// blocks: "C(T)" when the sizes are unbounded, the matrix algebra of the
// largest size otherwise. Nothing is realized numerically.
struct SymbolicEnvelope {
    bool bounded = true;
    int dim = 1;       // meaningful when bounded
    std::string label; // "C", "M4", or "C(T)"
};

SymbolicEnvelope classify_infinite_same_eigenvalue(const InfiniteJordanSpec& spec);

// Eigenvalues that are extreme points of the numerical range hull: the only
// candidate values of one-dimensional boundary representations.
std::vector<Complex> scalar_boundary_candidates(const JordanSpec& spec,
                                                const EngineOptions& opts = {});

} // namespace jordanenv
