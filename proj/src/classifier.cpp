#include "jordanenv/classifier.hpp"

#include <algorithm>
#include <cmath>

namespace jordanenv {

const char* boundary_rule_name(BoundaryRule rule) {
    switch (rule) {
        case BoundaryRule::Selfadjoint: return "Selfadjoint";
        case BoundaryRule::FullClassificationInterior: return "FullClassificationInterior";
        case BoundaryRule::FullClassificationExtreme: return "FullClassificationExtreme";
        case BoundaryRule::ScalarNumrange: return "ScalarNumrange";
        case BoundaryRule::CompressionWitness: return "CompressionWitness";
        case BoundaryRule::ChoiOracle: return "ChoiOracle";
        case BoundaryRule::DimensionForcing: return "DimensionForcing";
    }
    return "?";
}

const BoundaryVerdict& EnvelopeReport::verdict_for_original(int original_index) const {
    if (original_index < 0 ||
        original_index >= static_cast<int>(normalized.canonical_of_original.size()))
        throw std::invalid_argument("original block index out of range");
    return verdicts[normalized.canonical_of_original[original_index]];
}

namespace {

void finalize(EnvelopeReport& rep) {
    rep.decided = true;
    rep.reduced = true;
    rep.envelope.clear();
    rep.envelope_upper.clear();
    for (const auto& v : rep.verdicts) {
        const int dim = rep.normalized.spec.blocks[v.block].size;
        switch (v.is_boundary) {
            case Boundary::Yes:
                rep.envelope.push_back(dim);
                rep.envelope_upper.push_back(dim);
                break;
            case Boundary::No:
                rep.reduced = false;
                break;
            case Boundary::Undecided:
                rep.decided = false;
                rep.reduced = false;
                rep.envelope_upper.push_back(dim);
                break;
        }
    }
}

// Groups of canonical blocks sharing an eigenvalue. Canonical order keeps
// equal eigenvalues adjacent with sizes descending, so the first block of a
// group is its largest.
struct ReducedView {
    std::vector<int> maximal;  // canonical index of each group's largest block
    std::vector<int> group_of; // canonical index -> group number
    std::vector<bool> dominated;
};

ReducedView reduce_same_eigenvalue(const JordanSpec& spec, const Tolerances& tol) {
    ReducedView view;
    const int n = spec.block_count();
    view.group_of.resize(n, -1);
    view.dominated.resize(n, false);
    for (int i = 0; i < n; ++i) {
        if (i > 0 && std::abs(spec.blocks[i].eigenvalue - spec.blocks[i - 1].eigenvalue) <=
                         tol.eigenvalue_merge) {
            view.group_of[i] = view.group_of[i - 1];
            view.dominated[i] = true;
        } else {
            view.group_of[i] = static_cast<int>(view.maximal.size());
            view.maximal.push_back(i);
        }
    }
    return view;
}

} // namespace

std::optional<EnvelopeReport> classify_selfadjoint(const JordanSpec& spec,
                                                   const EngineOptions& opts) {
    if (!spec.all_real() || !spec.all_scalar()) return std::nullopt;

    EnvelopeReport rep{normalize(spec, opts.tol), {}, true, false, {}, {}};
    const JordanSpec& s = rep.normalized.spec;
    const int n = s.block_count();
    // canonical order is descending, so the spectral extremes sit at the ends
    for (int k = 0; k < n; ++k) {
        BoundaryVerdict v;
        v.block = k;
        v.rule = BoundaryRule::Selfadjoint;
        v.is_boundary = (k == 0 || k == n - 1) ? Boundary::Yes : Boundary::No;
        if (n > 1 && v.is_boundary == Boundary::No) {
            v.margin = std::min(
                std::abs(s.blocks[k].eigenvalue - s.blocks[0].eigenvalue),
                std::abs(s.blocks[k].eigenvalue - s.blocks[n - 1].eigenvalue));
        }
        rep.verdicts.push_back(v);
    }
    finalize(rep);
    return rep;
}

EnvelopeReport classify_real(const JordanSpec& spec, const EngineOptions& opts) {
    if (!spec.all_real())
        throw std::invalid_argument("classify_real needs real eigenvalues");

    if (auto diag = classify_selfadjoint(spec, opts)) return *diag;

    EnvelopeReport rep{normalize(spec, opts.tol), {}, true, false, {}, {}};
    const JordanSpec& s = rep.normalized.spec;
    const int n = s.block_count();
    const ReducedView view = reduce_same_eigenvalue(s, opts.tol);
    const int groups = static_cast<int>(view.maximal.size());

    rep.verdicts.resize(n);
    for (int k = 0; k < n; ++k) {
        BoundaryVerdict& v = rep.verdicts[k];
        v.block = k;

        if (view.dominated[k]) {
            // a larger block with the same eigenvalue absorbs this one by
            // corner truncation
            v.is_boundary = Boundary::No;
            v.rule = BoundaryRule::CompressionWitness;
            continue;
        }

        const int g = view.group_of[k];
        const int mk = s.blocks[k].size;

        if (groups == 1) {
            // single eigenvalue: the largest block carries everything
            v.is_boundary = Boundary::Yes;
            v.rule = BoundaryRule::FullClassificationExtreme;
            continue;
        }

        if (g > 0 && g < groups - 1) {
            // interior eigenvalue: boundary exactly when one side stays
            // strictly smaller
            int max_left = 0, max_right = 0;
            for (int gg = 0; gg < g; ++gg)
                max_left = std::max(max_left, s.blocks[view.maximal[gg]].size);
            for (int gg = g + 1; gg < groups; ++gg)
                max_right = std::max(max_right, s.blocks[view.maximal[gg]].size);
            v.is_boundary = (max_left < mk || max_right < mk) ? Boundary::Yes : Boundary::No;
            v.rule = BoundaryRule::FullClassificationInterior;
            continue;
        }

        // extreme eigenvalue
        v.rule = BoundaryRule::FullClassificationExtreme;
        if (mk > 1) {
            v.is_boundary = Boundary::Yes;
            continue;
        }
        // scalar extreme: boundary exactly when it escapes every other
        // block's range disk; the disks are closed, so contact keeps it in
        double worst = std::numeric_limits<double>::infinity();
        bool outside_all = true;
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            const double r = jordan_numrange(s.blocks[j].size, s.blocks[j].eigenvalue,
                                             opts.disk_radius_bias)
                                 .radius;
            const double d = std::abs(s.blocks[k].eigenvalue - s.blocks[j].eigenvalue) - r;
            worst = std::min(worst, std::abs(d));
            if (d <= opts.tol.exact_eq) outside_all = false;
        }
        v.is_boundary = outside_all ? Boundary::Yes : Boundary::No;
        v.margin = worst;
    }

    finalize(rep);
    return rep;
}

std::optional<EnvelopeReport> classify_corollary(const JordanSpec& spec,
                                                 const EngineOptions& opts) {
    if (!spec.all_real()) return std::nullopt;
    EnvelopeReport rep{normalize(spec, opts.tol), {}, true, false, {}, {}};
    const JordanSpec& s = rep.normalized.spec;
    const int n = s.block_count();
    if (n < 2) return std::nullopt;
    for (int i = 1; i < n; ++i)
        if (std::abs(s.blocks[i].eigenvalue - s.blocks[i - 1].eigenvalue) <=
            opts.tol.eigenvalue_merge)
            return std::nullopt; // needs strictly decreasing eigenvalues

    const int m1 = s.blocks[0].size;
    const int mn = s.blocks[n - 1].size;
    int mid = 0;
    for (int i = 1; i + 1 < n; ++i) mid = std::max(mid, s.blocks[i].size);
    if (mid > std::min(m1, mn)) return std::nullopt;

    const double span =
        std::abs(s.blocks[0].eigenvalue.real() - s.blocks[n - 1].eigenvalue.real());
    bool first_boundary = true;
    bool last_boundary = true;
    if (m1 == 1 && mn >= 2) {
        const double r = jordan_numrange(mn, 0.0, opts.disk_radius_bias).radius;
        first_boundary = span - r > opts.tol.exact_eq;
    } else if (m1 >= 2 && mn == 1) {
        const double r = jordan_numrange(m1, 0.0, opts.disk_radius_bias).radius;
        last_boundary = span - r > opts.tol.exact_eq;
    }

    rep.verdicts.resize(n);
    for (int k = 0; k < n; ++k) {
        BoundaryVerdict& v = rep.verdicts[k];
        v.block = k;
        if (k == 0) {
            v.is_boundary = first_boundary ? Boundary::Yes : Boundary::No;
            v.rule = BoundaryRule::FullClassificationExtreme;
        } else if (k == n - 1) {
            v.is_boundary = last_boundary ? Boundary::Yes : Boundary::No;
            v.rule = BoundaryRule::FullClassificationExtreme;
        } else {
            v.is_boundary = Boundary::No;
            v.rule = BoundaryRule::FullClassificationInterior;
        }
    }
    finalize(rep);

    const EnvelopeReport full = classify_real(spec, opts);
    for (int k = 0; k < n; ++k)
        if (full.verdicts[k].is_boundary != rep.verdicts[k].is_boundary)
            throw std::logic_error("envelope table disagrees with the full classification");
    return rep;
}

bool classify_abelian_test(const JordanSpec& spec) {
    if (!spec.all_real())
        throw std::invalid_argument("the abelian test needs real eigenvalues");
    return spec.all_scalar();
}

EnvelopeReport classify_general(const JordanSpec& spec, const EngineOptions& opts) {
    EnvelopeReport rep{normalize(spec, opts.tol), {}, true, false, {}, {}};
    const JordanSpec& s = rep.normalized.spec;
    const auto irr = is_irreducible_family(s, opts.tol);
    if (!irr.irreducible)
        throw std::invalid_argument("family is not irreducible: " + irr.reason);

    const int n = s.block_count();
    const int system_dim = operator_system_dimension(s, opts.tol);
    rep.verdicts.resize(n);
    for (int k = 0; k < n; ++k) {
        BoundaryVerdict& v = rep.verdicts[k];
        v.block = k;

        // deleting the block must leave room for the operator system to
        // embed; if not, its compression is boundary outright
        int rest_dim = 0;
        for (int j = 0; j < n; ++j)
            if (j != k) rest_dim += s.blocks[j].size * s.blocks[j].size;
        if (rest_dim < system_dim) {
            v.is_boundary = Boundary::Yes;
            v.rule = BoundaryRule::DimensionForcing;
            continue;
        }

        const MatricialMembership m = in_matricial_range(s, k, opts);
        v.margin = m.margin;
        switch (m.rule) {
            case MembershipRule::ScalarNumrange: v.rule = BoundaryRule::ScalarNumrange; break;
            case MembershipRule::CompressionWitness:
                v.rule = BoundaryRule::CompressionWitness;
                break;
            case MembershipRule::ChoiOracle: v.rule = BoundaryRule::ChoiOracle; break;
        }
        switch (m.verdict) {
            case RangeVerdict::In: v.is_boundary = Boundary::No; break;
            case RangeVerdict::Out: v.is_boundary = Boundary::Yes; break;
            case RangeVerdict::Undecided: v.is_boundary = Boundary::Undecided; break;
        }
    }
    finalize(rep);
    return rep;
}

EnvelopeReport classify(const JordanSpec& spec, const EngineOptions& opts) {
    if (spec.all_real()) {
        if (auto diag = classify_selfadjoint(spec, opts)) return *diag;
        return classify_real(spec, opts);
    }
    return classify_general(spec, opts);
}

SymbolicEnvelope classify_infinite_same_eigenvalue(const InfiniteJordanSpec& spec) {
    SymbolicEnvelope env;
    env.bounded = spec.bounded;
    if (!spec.bounded) {
        env.dim = 0;
        env.label = "C(T)";
        return env;
    }
    if (spec.max_size < 1) throw std::invalid_argument("bounded sizes need a maximum >= 1");
    env.dim = spec.max_size;
    env.label = spec.max_size == 1 ? "C" : "M" + std::to_string(spec.max_size);
    return env;
}

std::vector<Complex> scalar_boundary_candidates(const JordanSpec& spec,
                                                const EngineOptions& opts) {
    const NormalizedSpec norm = normalize(spec, opts.tol);
    const DiskHull hull = hull_of_block_ranges(norm.spec, -1, opts.disk_radius_bias);
    std::vector<Complex> out;
    for (const auto& b : norm.spec.blocks) {
        bool seen = false;
        for (const Complex& z : out)
            if (std::abs(z - b.eigenvalue) <= opts.tol.eigenvalue_merge) seen = true;
        if (!seen && hull.extreme_point(b.eigenvalue, opts.tol)) out.push_back(b.eigenvalue);
    }
    return out;
}

} // namespace jordanenv
