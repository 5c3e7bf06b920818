#include "jordanenv/jordan_model.hpp"

#include <algorithm>
#include <cmath>

namespace jordanenv {

JordanBlockSpec::JordanBlockSpec(int m, Complex lambda, int d)
    : size(m), eigenvalue(lambda), multiplicity(d) {
    if (m < 1) throw std::invalid_argument("block size must be >= 1");
    if (d < 1) throw std::invalid_argument("block multiplicity must be >= 1");
    if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag()))
        throw std::invalid_argument("eigenvalue must be finite");
}

JordanSpec::JordanSpec(std::vector<JordanBlockSpec> b) : blocks(std::move(b)) {
    if (blocks.empty()) throw std::invalid_argument("a Jordan spec needs at least one block");
}

int JordanSpec::total_dimension() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size * b.multiplicity;
    return n;
}

int JordanSpec::reduced_dimension() const {
    int n = 0;
    for (const auto& b : blocks) n += b.size;
    return n;
}

bool JordanSpec::all_real() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const JordanBlockSpec& b) { return b.real_eigenvalue(); });
}

bool JordanSpec::all_scalar() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const JordanBlockSpec& b) { return b.size == 1; });
}

NormalizedSpec normalize(const JordanSpec& spec, const Tolerances& tol) {
    const int n = spec.block_count();

    // merge duplicate (size, eigenvalue) pairs, first occurrence wins the label
    std::vector<JordanBlockSpec> merged;
    std::vector<std::vector<int>> members;
    std::vector<int> merged_of_original(n, -1);
    for (int i = 0; i < n; ++i) {
        const auto& b = spec.blocks[i];
        int hit = -1;
        for (size_t k = 0; k < merged.size(); ++k) {
            if (merged[k].size == b.size &&
                std::abs(merged[k].eigenvalue - b.eigenvalue) <= tol.eigenvalue_merge) {
                hit = static_cast<int>(k);
                break;
            }
        }
        if (hit >= 0) {
            merged[hit].multiplicity += b.multiplicity;
            members[hit].push_back(i);
            merged_of_original[i] = hit;
        } else {
            merged_of_original[i] = static_cast<int>(merged.size());
            merged.push_back(b);
            members.push_back({i});
        }
    }

    std::vector<int> order(merged.size());
    for (size_t k = 0; k < merged.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int x, int y) {
        const auto& a = merged[x];
        const auto& b = merged[y];
        if (a.eigenvalue.real() != b.eigenvalue.real())
            return a.eigenvalue.real() > b.eigenvalue.real();
        if (a.eigenvalue.imag() != b.eigenvalue.imag())
            return a.eigenvalue.imag() > b.eigenvalue.imag();
        return a.size > b.size;
    });

    std::vector<int> rank(merged.size());
    for (size_t pos = 0; pos < order.size(); ++pos) rank[order[pos]] = static_cast<int>(pos);

    std::vector<JordanBlockSpec> canonical;
    canonical.reserve(merged.size());
    for (int idx : order) canonical.push_back(merged[idx]);

    NormalizedSpec out{JordanSpec(std::move(canonical)), {}, {}};
    out.originals.resize(merged.size());
    out.canonical_of_original.resize(n);
    for (int i = 0; i < n; ++i) {
        const int k = rank[merged_of_original[i]];
        out.canonical_of_original[i] = k;
        out.originals[k].push_back(i);
    }
    return out;
}

ComplexMatrix realize(const JordanSpec& spec, const Tolerances& tol) {
    if (spec.total_dimension() > tol.realize_max_dim)
        throw std::invalid_argument("total dimension exceeds the realization guard");
    std::vector<ComplexMatrix> blocks;
    for (const auto& b : spec.blocks)
        for (int copy = 0; copy < b.multiplicity; ++copy)
            blocks.push_back(jordan_block(b.size, b.eigenvalue));
    return direct_sum(blocks);
}

namespace {

// Dimension of {X : J_a X = X J_b and J_a* X = X J_b*} for a single pair of
// basic blocks, via the singular spectrum of the stacked linear system. The
// joint commutant of a block-diagonal family decouples into these pairs.
int pair_commutant_dimension(const JordanBlockSpec& a, const JordanBlockSpec& b,
                             const Tolerances& tol) {
    const int p = a.size;
    const int q = b.size;
    const ComplexMatrix ja = jordan_block(p, a.eigenvalue);
    const ComplexMatrix jb = jordan_block(q, b.eigenvalue);
    const ComplexMatrix jah = ja.adjoint();
    const ComplexMatrix jbh = jb.adjoint();

    const int cols = p * q;
    ComplexMatrix system(2 * cols, cols);
    for (int r = 0; r < p; ++r) {
        for (int s = 0; s < q; ++s) {
            ComplexMatrix e(p, q);
            e.at(r, s) = 1.0;
            const ComplexMatrix m1 = ja * e - e * jb;
            const ComplexMatrix m2 = jah * e - e * jbh;
            const int col = r * q + s;
            for (int i = 0; i < p; ++i)
                for (int j = 0; j < q; ++j) {
                    system.at(i * q + j, col) = m1.at(i, j);
                    system.at(cols + i * q + j, col) = m2.at(i, j);
                }
        }
    }
    const HermitianMatrix gram(system.adjoint() * system, tol);
    const auto es = hermitian_eigen(gram, tol);
    const double null_cut = tol.commutant_null_sv * tol.commutant_null_sv;
    int nullity = 0;
    for (double v : es.values)
        if (v < null_cut) ++nullity;
    return nullity;
}

} // namespace

IrreducibilityReport is_irreducible_family(const JordanSpec& normalized, const Tolerances& tol) {
    IrreducibilityReport rep;
    rep.multiplicity_reduced =
        std::any_of(normalized.blocks.begin(), normalized.blocks.end(),
                    [](const JordanBlockSpec& b) { return b.multiplicity > 1; });

    // distinctness of (size, eigenvalue) pairs is the combinatorial criterion
    bool distinct = true;
    const int n = normalized.block_count();
    for (int i = 0; i < n && distinct; ++i)
        for (int j = i + 1; j < n; ++j) {
            const auto& a = normalized.blocks[i];
            const auto& b = normalized.blocks[j];
            if (a.size == b.size &&
                std::abs(a.eigenvalue - b.eigenvalue) <= tol.eigenvalue_merge) {
                distinct = false;
                break;
            }
        }
    if (!distinct) {
        rep.irreducible = false;
        rep.reason = "two blocks share the same (size, eigenvalue) pair";
        return rep;
    }

    rep.irreducible = true;
    rep.reason = rep.multiplicity_reduced
                     ? "irreducible after multiplicity reduction"
                     : "all (size, eigenvalue) pairs distinct";

    if (normalized.reduced_dimension() <= tol.commutant_check_max_dim) {
        int dim = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dim += pair_commutant_dimension(normalized.blocks[i], normalized.blocks[j], tol);
        rep.commutant_dimension = dim;
        if (dim != n) {
            rep.irreducible = false;
            rep.reason = "commutant dimension " + std::to_string(dim) +
                         " does not match block count " + std::to_string(n);
        }
    }
    return rep;
}

int operator_system_dimension(const JordanSpec& spec, const Tolerances& tol) {
    if (!spec.all_scalar()) return 3;

    std::vector<Complex> distinct;
    for (const auto& b : spec.blocks) {
        bool seen = false;
        for (const Complex& z : distinct)
            if (std::abs(z - b.eigenvalue) <= tol.eigenvalue_merge) seen = true;
        if (!seen) distinct.push_back(b.eigenvalue);
    }
    if (distinct.size() <= 1) return 1;

    // collinear eigenvalues make J a complex-affine image of a real diagonal
    const Complex u = distinct[1] - distinct[0];
    double scale = std::abs(u);
    for (const Complex& z : distinct) scale = std::max(scale, std::abs(z - distinct[0]));
    for (const Complex& z : distinct) {
        const double cross = std::abs(std::imag(std::conj(u) * (z - distinct[0])));
        if (cross > tol.exact_eq * std::max(1.0, scale * scale)) return 3;
    }
    return 2;
}

} // namespace jordanenv
