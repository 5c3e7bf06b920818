#pragma once

#include <optional>
#include <vector>

#include "jordanenv/jordan_model.hpp"
#include "jordanenv/numrange.hpp"
#include "jordanenv/options.hpp"

namespace jordanenv {

// One Kraus-style term of an explicit ucp witness: a coisometry applied to
// the direct sum of the named source blocks. Truncation witnesses use a
// single source block per term; the scalar-triple witness bundles three
// 1x1 blocks behind one coisometry.
struct PlanTerm {
    double weight = 1.0;
    std::vector<int> source_blocks; // indices into the normalized spec
    ComplexMatrix map;              // m_k x (bundle size), map * map^* = identity
};

struct CompressionPlan {
    int target_block = 0;
    std::vector<PlanTerm> terms; // weights are convex
};

// Searches for an explicit ucp map sending the deleted-block direct sum to
// J_{m_k}(lambda_k): convex interpolation over same-or-larger blocks whose
// eigenvalue hull contains lambda_k, plus a rank-one POVM construction over
// scalar triples for 2x2 targets. Returns nothing when no exact witness of
// these shapes exists.
std::optional<CompressionPlan> compression_witness(const JordanSpec& normalized, int k,
                                                   const Tolerances& tol = default_tolerances());

// Evaluates the plan on the source blocks; throws unless the result equals
// the target block within tol.plan_exact.
ComplexMatrix apply_plan(const CompressionPlan& plan, const JordanSpec& normalized, int k,
                         const Tolerances& tol = default_tolerances());

// Membership of `target` in the matricial range of `source`, posed as
// semidefinite feasibility for the Choi matrix of a ucp map on the
// full matrix algebra containing the source.
struct ChoiProgram {
    ComplexMatrix source; // N x N
    ComplexMatrix target; // k x k

    ChoiProgram(ComplexMatrix src, ComplexMatrix tgt);
    int choi_dim() const { return source.rows() * target.rows(); }
};

// source = multiplicity-free direct sum of every block but k.
ChoiProgram rest_membership_program(const JordanSpec& normalized, int k,
                                    const Tolerances& tol = default_tolerances());

enum class ChoiVerdict { Feasible, Infeasible, Unknown };

struct ChoiResult {
    ChoiVerdict verdict = ChoiVerdict::Unknown;
    double margin = 0.0; // certificate residual when feasible, stabilized gap when infeasible
    int iterations = 0;
    ComplexMatrix choi;  // PSD certificate, only meaningful when feasible
};

// Alternating projections in Dykstra form between the PSD cone and the
// affine set {Phi(1) = I, Phi(source) = target}. Feasible needs the combined
// constraint residual below tol.choi_feasible_residual. Infeasible needs the
// inter-set gap to stabilize above tol.choi_infeasible_gap for a full stall
// window AND the displacement vector to pass a separation check that rules
// out any common point; a stall alone never decides. An affine set that is
// empty outright (the unital and source constraints contradict each other)
// short-circuits to Infeasible.
ChoiResult choi_feasible(const ChoiProgram& program,
                         const Tolerances& tol = default_tolerances(), int max_iter = -1,
                         const ComplexMatrix* initial = nullptr);

// Choi matrix of the plan's ucp map, pinched to the block-diagonal algebra.
ComplexMatrix plan_choi_matrix(const CompressionPlan& plan, const JordanSpec& normalized, int k,
                               const Tolerances& tol = default_tolerances());

struct CertificateCheck {
    double psd_defect = 0.0;    // magnitude of the most negative eigenvalue
    double unital_defect = 0.0; // ||Phi(1) - I||_F
    double map_defect = 0.0;    // ||Phi(source) - target||_F
    double worst() const;
};

CertificateCheck verify_choi_certificate(const ComplexMatrix& choi, const ChoiProgram& program,
                                         const Tolerances& tol = default_tolerances());

enum class RangeVerdict { In, Out, Undecided };
enum class MembershipRule { ScalarNumrange, CompressionWitness, ChoiOracle };

struct MatricialMembership {
    RangeVerdict verdict = RangeVerdict::Undecided;
    MembershipRule rule = MembershipRule::ChoiOracle;
    double margin = 0.0;
    std::optional<CompressionPlan> plan;
    std::optional<ChoiResult> oracle;
};

// Is block k inside the matricial range of the remaining blocks? Decides by
// the first conclusive rule: exact disk-hull membership for scalar targets,
// then explicit witnesses, then the Choi oracle.
MatricialMembership in_matricial_range(const JordanSpec& normalized, int k,
                                       const EngineOptions& opts = {});

} // namespace jordanenv
