#include "jordanenv/matricial_oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <limits>

namespace jordanenv {

namespace {

ComplexMatrix truncation_map(int target_size, int source_size) {
    ComplexMatrix p(target_size, source_size);
    for (int i = 0; i < target_size; ++i) p.at(i, i) = 1.0;
    return p;
}

double weight_sum(const CompressionPlan& plan) {
    double s = 0.0;
    for (const auto& t : plan.terms) s += t.weight;
    return s;
}

// Solve the 3x3 complex system V x = rhs for three matrix right-hand sides;
// used by the scalar-triple witness. Returns false on a singular pivot.
bool solve3(std::array<std::array<Complex, 3>, 3> v, std::array<ComplexMatrix, 3>& rhs) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(v[r][col]) > std::abs(v[pivot][col])) pivot = r;
        if (std::abs(v[pivot][col]) < 1e-12) return false;
        std::swap(v[col], v[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        const Complex inv = 1.0 / v[col][col];
        for (int c = col; c < 3; ++c) v[col][c] *= inv;
        rhs[col] = rhs[col] * inv;
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const Complex f = v[r][col];
            if (f == Complex(0.0, 0.0)) continue;
            for (int c = col; c < 3; ++c) v[r][c] -= f * v[col][c];
            rhs[r] = rhs[r] - rhs[col] * f;
        }
    }
    return true;
}

// Rank-one POVM witness over a triple of scalar blocks for a 2x2 target:
// unitality and the source constraint pin each POVM element to a closed-form
// combination of {I, J, J*}; the witness exists exactly when those elements
// come out PSD of rank at most one.
std::optional<PlanTerm> scalar_triple_term(const JordanSpec& spec, int k,
                                           const std::array<int, 3>& subset,
                                           const Tolerances& tol) {
    const Complex mu1 = spec.blocks[subset[0]].eigenvalue;
    const Complex mu2 = spec.blocks[subset[1]].eigenvalue;
    const Complex mu3 = spec.blocks[subset[2]].eigenvalue;

    const double scale = std::max({std::abs(mu2 - mu1), std::abs(mu3 - mu1), 1.0});
    const double area = std::abs(std::imag(std::conj(mu2 - mu1) * (mu3 - mu1)));
    if (area < 1e-9 * scale * scale) return std::nullopt; // collinear triple

    const ComplexMatrix j = jordan_block(spec.blocks[k].size, spec.blocks[k].eigenvalue);
    std::array<std::array<Complex, 3>, 3> v{{{1.0, 1.0, 1.0},
                                             {mu1, mu2, mu3},
                                             {std::conj(mu1), std::conj(mu2), std::conj(mu3)}}};
    std::array<ComplexMatrix, 3> rhs{ComplexMatrix::identity(2), j, j.adjoint()};
    if (!solve3(v, rhs)) return std::nullopt;

    ComplexMatrix p(2, 3);
    for (int t = 0; t < 3; ++t) {
        ComplexMatrix f = rhs[t];
        if (!f.is_hermitian(1e-9)) return std::nullopt;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) f.at(a, b) = 0.5 * (f.at(a, b) + std::conj(f.at(b, a)));
        const auto es = hermitian_eigen(HermitianMatrix(f, tol), tol);
        if (es.values[0] < -1e-10 || es.values[0] > 1e-9) return std::nullopt;
        const double top = std::max(0.0, es.values[1]);
        const double root = std::sqrt(top);
        for (int a = 0; a < 2; ++a) p.at(a, t) = root * es.vectors.at(a, 1);
    }

    const ComplexMatrix pph = p * p.adjoint();
    if ((pph - ComplexMatrix::identity(2)).max_abs() > tol.certificate_residual)
        return std::nullopt;

    PlanTerm term;
    term.weight = 1.0;
    term.source_blocks = {subset[0], subset[1], subset[2]};
    term.map = p;
    return term;
}

} // namespace

std::optional<CompressionPlan> compression_witness(const JordanSpec& spec, int k,
                                                   const Tolerances& tol) {
    const int n = spec.block_count();
    if (k < 0 || k >= n) throw std::invalid_argument("block index out of range");
    if (n < 2) return std::nullopt;

    const int mk = spec.blocks[k].size;
    const Complex lk = spec.blocks[k].eigenvalue;

    std::vector<int> candidates; // blocks big enough to compress onto the target
    for (int j = 0; j < n; ++j)
        if (j != k && spec.blocks[j].size >= mk) candidates.push_back(j);

    // same eigenvalue, larger block: plain corner truncation
    {
        int best = -1;
        for (int j : candidates)
            if (std::abs(spec.blocks[j].eigenvalue - lk) <= tol.eigenvalue_merge)
                if (best < 0 || spec.blocks[j].size > spec.blocks[best].size) best = j;
        if (best >= 0) {
            CompressionPlan plan;
            plan.target_block = k;
            plan.terms.push_back({1.0, {best}, truncation_map(mk, spec.blocks[best].size)});
            return plan;
        }
    }

    // lambda_k on a segment between two candidate eigenvalues; prefer the
    // nearest bracketing pair
    {
        int besta = -1, bestb = -1;
        double best_span = std::numeric_limits<double>::infinity();
        for (size_t x = 0; x < candidates.size(); ++x) {
            for (size_t y = x + 1; y < candidates.size(); ++y) {
                const int a = candidates[x];
                const int b = candidates[y];
                const Complex la = spec.blocks[a].eigenvalue;
                const Complex lb = spec.blocks[b].eigenvalue;
                const Complex u = lb - la;
                const double len2 = std::norm(u);
                if (len2 <= 0.0) continue;
                const double cross = std::abs(std::imag(std::conj(u) * (lk - la)));
                if (cross > 1e-12 * std::max(1.0, len2)) continue;
                const double t = std::real(std::conj(u) * (lk - la)) / len2;
                if (t < -1e-12 || t > 1.0 + 1e-12) continue;
                const double span = std::abs(lk - la) + std::abs(lk - lb);
                if (span < best_span) {
                    best_span = span;
                    besta = a;
                    bestb = b;
                }
            }
        }
        if (besta >= 0) {
            const Complex la = spec.blocks[besta].eigenvalue;
            const Complex lb = spec.blocks[bestb].eigenvalue;
            const double t = std::clamp(
                std::real(std::conj(lb - la) * (lk - la)) / std::norm(lb - la), 0.0, 1.0);
            CompressionPlan plan;
            plan.target_block = k;
            plan.terms.push_back({1.0 - t, {besta}, truncation_map(mk, spec.blocks[besta].size)});
            plan.terms.push_back({t, {bestb}, truncation_map(mk, spec.blocks[bestb].size)});
            return plan;
        }
    }

    // lambda_k inside a triangle of candidate eigenvalues
    {
        std::array<int, 3> best{-1, -1, -1};
        std::array<double, 3> bestw{0.0, 0.0, 0.0};
        double best_span = std::numeric_limits<double>::infinity();
        const int c = static_cast<int>(candidates.size());
        for (int x = 0; x < c; ++x)
            for (int y = x + 1; y < c; ++y)
                for (int z = y + 1; z < c; ++z) {
                    const Complex l1 = spec.blocks[candidates[x]].eigenvalue;
                    const Complex l2 = spec.blocks[candidates[y]].eigenvalue;
                    const Complex l3 = spec.blocks[candidates[z]].eigenvalue;
                    const double det = std::imag(std::conj(l2 - l1) * (l3 - l1));
                    if (std::abs(det) < 1e-12) continue;
                    const double w2 = std::imag(std::conj(lk - l1) * (l3 - l1)) / det;
                    const double w3 = std::imag(std::conj(l2 - l1) * (lk - l1)) / det;
                    const double w1 = 1.0 - w2 - w3;
                    if (w1 < -1e-12 || w2 < -1e-12 || w3 < -1e-12) continue;
                    const double span = std::abs(lk - l1) + std::abs(lk - l2) + std::abs(lk - l3);
                    if (span < best_span) {
                        best_span = span;
                        best = {candidates[x], candidates[y], candidates[z]};
                        bestw = {std::max(0.0, w1), std::max(0.0, w2), std::max(0.0, w3)};
                    }
                }
        if (best[0] >= 0) {
            const double total = bestw[0] + bestw[1] + bestw[2];
            CompressionPlan plan;
            plan.target_block = k;
            for (int t = 0; t < 3; ++t)
                plan.terms.push_back({bestw[t] / total,
                                      {best[t]},
                                      truncation_map(mk, spec.blocks[best[t]].size)});
            return plan;
        }
    }

    // POVM witness over scalar triples, for 2x2 targets only
    if (mk == 2) {
        std::vector<int> scalars;
        for (int j = 0; j < n; ++j)
            if (j != k && spec.blocks[j].size == 1) scalars.push_back(j);
        const int c = static_cast<int>(scalars.size());
        for (int x = 0; x < c; ++x)
            for (int y = x + 1; y < c; ++y)
                for (int z = y + 1; z < c; ++z) {
                    const auto term =
                        scalar_triple_term(spec, k, {scalars[x], scalars[y], scalars[z]}, tol);
                    if (!term) continue;
                    CompressionPlan plan;
                    plan.target_block = k;
                    plan.terms.push_back(*term);
                    try {
                        apply_plan(plan, spec, k, tol);
                    } catch (const std::exception&) {
                        continue;
                    }
                    return plan;
                }
    }

    return std::nullopt;
}

ComplexMatrix apply_plan(const CompressionPlan& plan, const JordanSpec& spec, int k,
                         const Tolerances& tol) {
    const int n = spec.block_count();
    if (k < 0 || k >= n || plan.target_block != k)
        throw std::invalid_argument("plan does not match the requested block");
    if (plan.terms.empty() || std::abs(weight_sum(plan) - 1.0) > 1e-12)
        throw std::invalid_argument("plan weights are not convex");

    const int mk = spec.blocks[k].size;
    ComplexMatrix acc(mk, mk);
    for (const auto& term : plan.terms) {
        if (term.weight < 0.0) throw std::invalid_argument("negative plan weight");
        std::vector<ComplexMatrix> blocks;
        for (int j : term.source_blocks) {
            if (j < 0 || j >= n || j == k)
                throw std::invalid_argument("plan references an invalid source block");
            blocks.push_back(jordan_block(spec.blocks[j].size, spec.blocks[j].eigenvalue));
        }
        const ComplexMatrix bundle = direct_sum(blocks);
        if (term.map.rows() != mk || term.map.cols() != bundle.rows())
            throw std::invalid_argument("plan map has the wrong shape");
        if ((term.map * term.map.adjoint() - ComplexMatrix::identity(mk)).max_abs() >
            tol.certificate_residual)
            throw std::invalid_argument("plan map is not a coisometry");
        acc = acc + term.map * bundle * term.map.adjoint() * Complex(term.weight, 0.0);
    }

    const ComplexMatrix target = jordan_block(mk, spec.blocks[k].eigenvalue);
    if ((acc - target).max_abs() > tol.plan_exact)
        throw std::runtime_error("plan does not reproduce the target block");
    return acc;
}

ChoiProgram::ChoiProgram(ComplexMatrix src, ComplexMatrix tgt)
    : source(std::move(src)), target(std::move(tgt)) {
    if (!source.square() || !target.square())
        throw std::invalid_argument("Choi program needs square source and target");
}

ChoiProgram rest_membership_program(const JordanSpec& spec, int k, const Tolerances& tol) {
    const int n = spec.block_count();
    if (k < 0 || k >= n) throw std::invalid_argument("block index out of range");
    if (n < 2) throw std::invalid_argument("membership needs at least two blocks");
    std::vector<ComplexMatrix> blocks;
    for (int j = 0; j < n; ++j)
        if (j != k) blocks.push_back(jordan_block(spec.blocks[j].size, spec.blocks[j].eigenvalue));
    ChoiProgram p(direct_sum(blocks), jordan_block(spec.blocks[k].size, spec.blocks[k].eigenvalue));
    if (p.choi_dim() > tol.choi_max_dim)
        throw std::invalid_argument("Choi dimension exceeds the solver guard");
    return p;
}

namespace {

// The affine constraint set {C : Phi_C(1) = I, Phi_C(source) = target},
// expressed through the Hermitian probes I, Re(source), Im(source). The
// identity T T* = Gram (x) id reduces least-squares projection onto the set
// to a 3x3 pseudo-inverse applied blockwise, precomputed once per program.
class AffineProjector {
  public:
    AffineProjector(const ChoiProgram& program, const Tolerances& tol)
        : n_(program.source.rows()), k_(program.target.rows()),
          ms_{ComplexMatrix::identity(n_),
              (program.source + program.source.adjoint()) * Complex(0.5, 0.0),
              (program.source - program.source.adjoint()) * Complex(0.0, -0.5)},
          bs_{ComplexMatrix::identity(k_),
              (program.target + program.target.adjoint()) * Complex(0.5, 0.0),
              (program.target - program.target.adjoint()) * Complex(0.0, -0.5)} {
        ComplexMatrix g(3, 3);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) g.at(a, b) = std::real((ms_[a] * ms_[b]).trace());
        const auto es = hermitian_eigen(HermitianMatrix(g, tol), tol);

        // null directions of the Gram matrix are linear dependencies among
        // the probes; the corresponding value combinations must cancel or
        // the constraint set is empty
        const double cutoff = 1e-12 * std::max(1.0, es.values.back());
        for (int e = 0; e < 3; ++e) {
            const double lam = es.values[e];
            if (lam <= cutoff) {
                ComplexMatrix dev(k_, k_);
                for (int t = 0; t < 3; ++t) dev = dev + bs_[t] * es.vectors.at(t, e);
                inconsistency_ = std::max(inconsistency_, dev.frobenius_norm());
                continue;
            }
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    ginv_[a][b] +=
                        std::real(es.vectors.at(a, e) * std::conj(es.vectors.at(b, e))) / lam;
        }
    }

    double inconsistency() const { return inconsistency_; }

    std::array<ComplexMatrix, 3> residuals(const ComplexMatrix& c) const {
        std::array<ComplexMatrix, 3> r{ComplexMatrix(k_, k_), ComplexMatrix(k_, k_),
                                       ComplexMatrix(k_, k_)};
        for (int t = 0; t < 3; ++t) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    const Complex m = ms_[t].at(i, j);
                    if (m == Complex(0.0, 0.0)) continue;
                    for (int a = 0; a < k_; ++a)
                        for (int b = 0; b < k_; ++b)
                            r[t].at(a, b) += m * c.at(i * k_ + a, j * k_ + b);
                }
            r[t] = r[t] - bs_[t];
        }
        return r;
    }

    ComplexMatrix project(const ComplexMatrix& c,
                          std::array<ComplexMatrix, 3>* out_residuals = nullptr) const {
        const auto r = residuals(c);
        if (out_residuals) *out_residuals = r;
        std::array<ComplexMatrix, 3> y{ComplexMatrix(k_, k_), ComplexMatrix(k_, k_),
                                       ComplexMatrix(k_, k_)};
        for (int s = 0; s < 3; ++s)
            for (int t = 0; t < 3; ++t)
                if (ginv_[s][t] != 0.0) y[s] = y[s] + r[t] * ginv_[s][t];
        ComplexMatrix out = c;
        for (int s = 0; s < 3; ++s) {
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j) {
                    const Complex m = std::conj(ms_[s].at(i, j));
                    if (m == Complex(0.0, 0.0)) continue;
                    for (int a = 0; a < k_; ++a)
                        for (int b = 0; b < k_; ++b)
                            out.at(i * k_ + a, j * k_ + b) -= m * y[s].at(a, b);
                }
        }
        return out;
    }

  private:
    int n_;
    int k_;
    std::array<ComplexMatrix, 3> ms_;
    std::array<ComplexMatrix, 3> bs_;
    std::array<std::array<double, 3>, 3> ginv_{};
    double inconsistency_ = 0.0;
};

ComplexMatrix psd_clip(const ComplexMatrix& h, const Tolerances& tol, ComplexMatrix* basis) {
    const HermitianMatrix hm(h, tol);
    const Eigensystem es =
        hermitian_eigen(hm, tol, basis && basis->rows() == h.rows() ? basis : nullptr);
    const int n = h.rows();
    ComplexMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = es.values[k];
        if (lam <= 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const Complex w = lam * es.vectors.at(i, k);
            if (w == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) r.at(i, j) += w * std::conj(es.vectors.at(j, k));
        }
    }
    for (int i = 0; i < n; ++i) {
        r.at(i, i) = Complex(r.at(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex m = 0.5 * (r.at(i, j) + std::conj(r.at(j, i)));
            r.at(i, j) = m;
            r.at(j, i) = std::conj(m);
        }
    }
    if (basis) *basis = es.vectors;
    return r;
}

} // namespace

ChoiResult choi_feasible(const ChoiProgram& program, const Tolerances& tol, int max_iter,
                         const ComplexMatrix* initial) {
    const int dim = program.choi_dim();
    if (dim > tol.choi_max_dim)
        throw std::invalid_argument("Choi dimension exceeds the solver guard");
    if (max_iter <= 0) max_iter = tol.choi_max_iter;

    const AffineProjector affine(program, tol);
    ChoiResult result;
    if (affine.inconsistency() > tol.certificate_residual) {
        // the affine constraint set is empty, no unital map can fit
        result.verdict = ChoiVerdict::Infeasible;
        result.margin = affine.inconsistency();
        return result;
    }

    const int n = program.source.rows();
    const int k = program.target.rows();
    const ComplexMatrix start =
        initial ? *initial : ComplexMatrix::identity(dim) * Complex(1.0 / n, 0.0);
    ComplexMatrix y = affine.project(start);
    ComplexMatrix p(dim, dim);
    ComplexMatrix basis;

    // Separation certificate: the displacement v = x - y lies in the range
    // of the constraint adjoint by construction, so if v + eps*I is PSD yet
    // pairs strictly negatively with a point of the affine set, the two sets
    // are disjoint. Every Choi matrix of a ucp map would violate that strict
    // inequality, hence none exists. This cannot fire on feasible programs.
    const auto certified_separation = [&](const ComplexMatrix& x) -> double {
        const ComplexMatrix v = x - y;
        const double vnorm = v.frobenius_norm();
        if (vnorm <= 0.0) return 0.0;
        const double vmin = min_eigenvalue(HermitianMatrix(v, tol), tol);
        const double eps = std::max(0.0, -vmin);
        double pairing = 0.0; // <v + eps*I, y> with Tr(y) = k on the affine set
        for (int a = 0; a < dim; ++a)
            for (int b = 0; b < dim; ++b)
                pairing += std::real(std::conj(v.at(a, b)) * y.at(a, b));
        pairing += eps * k;
        return pairing < 0.0 ? -pairing / vnorm : 0.0;
    };

    std::deque<double> window;
    int next_attempt = tol.choi_stall_window;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if (iter % 64 == 0) basis = ComplexMatrix(); // periodic cold restart
        const ComplexMatrix x = psd_clip(y + p, tol, &basis);
        p = y + p - x;
        std::array<ComplexMatrix, 3> res;
        y = affine.project(x, &res);
        result.iterations = iter;

        double constraint_defect = 0.0;
        for (const auto& r : res)
            constraint_defect = std::max(constraint_defect, r.frobenius_norm());
        if (constraint_defect <= tol.choi_feasible_residual) {
            result.verdict = ChoiVerdict::Feasible;
            result.margin = constraint_defect;
            result.choi = x;
            return result;
        }

        const double gap = (x - y).frobenius_norm();
        window.push_back(gap);
        if (static_cast<int>(window.size()) > tol.choi_stall_window) window.pop_front();
        if (static_cast<int>(window.size()) == tol.choi_stall_window && iter >= next_attempt) {
            const auto [mn, mx] = std::minmax_element(window.begin(), window.end());
            if (*mn > tol.choi_infeasible_gap && (*mx - *mn) <= tol.choi_stall_rel_var * *mx) {
                const double width = certified_separation(x);
                if (width > tol.choi_infeasible_gap) {
                    result.verdict = ChoiVerdict::Infeasible;
                    result.margin = width;
                    return result;
                }
                next_attempt = iter + 200; // stalled but not separable yet
            }
        }
    }

    result.verdict = ChoiVerdict::Unknown;
    result.margin = window.empty() ? 0.0 : window.back();
    return result;
}

ComplexMatrix plan_choi_matrix(const CompressionPlan& plan, const JordanSpec& spec, int k,
                               const Tolerances& tol) {
    apply_plan(plan, spec, k, tol); // validates shapes and exactness

    const int n = spec.block_count();
    std::vector<int> offset(n, 0);
    int total = 0;
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        offset[j] = total;
        total += spec.blocks[j].size;
    }
    const int mk = spec.blocks[k].size;
    ComplexMatrix choi(total * mk, total * mk);

    // Phi(E_uv) = sum_t a_t P_t E_uv P_t* on coordinate pairs inside a single
    // source block; matrix units crossing blocks are pinched away.
    for (const auto& term : plan.terms) {
        std::vector<int> global;
        for (int j : term.source_blocks)
            for (int i = 0; i < spec.blocks[j].size; ++i) global.push_back(offset[j] + i);

        int off_u = 0;
        for (int jb : term.source_blocks) {
            const int sz = spec.blocks[jb].size;
            for (int u = 0; u < sz; ++u)
                for (int v = 0; v < sz; ++v) {
                    const int gu = global[off_u + u];
                    const int gv = global[off_u + v];
                    for (int a = 0; a < mk; ++a)
                        for (int b = 0; b < mk; ++b)
                            choi.at(gu * mk + a, gv * mk + b) +=
                                term.weight * term.map.at(a, off_u + u) *
                                std::conj(term.map.at(b, off_u + v));
                }
            off_u += sz;
        }
    }
    return choi;
}

double CertificateCheck::worst() const {
    return std::max({psd_defect, unital_defect, map_defect});
}

CertificateCheck verify_choi_certificate(const ComplexMatrix& choi, const ChoiProgram& program,
                                         const Tolerances& tol) {
    const int n = program.source.rows();
    const int k = program.target.rows();
    if (choi.rows() != n * k || choi.cols() != n * k)
        throw std::invalid_argument("certificate has the wrong dimension");

    CertificateCheck check;
    check.psd_defect = std::max(0.0, -min_eigenvalue(HermitianMatrix(choi, tol), tol));

    ComplexMatrix unit(k, k);
    ComplexMatrix mapped(k, k);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const Complex s = program.source.at(i, j);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b) {
                    const Complex block = choi.at(i * k + a, j * k + b);
                    if (i == j) unit.at(a, b) += block;
                    if (s != Complex(0.0, 0.0)) mapped.at(a, b) += s * block;
                }
        }
    check.unital_defect = (unit - ComplexMatrix::identity(k)).frobenius_norm();
    check.map_defect = (mapped - program.target).frobenius_norm();
    return check;
}

MatricialMembership in_matricial_range(const JordanSpec& spec, int k, const EngineOptions& opts) {
    const int n = spec.block_count();
    if (k < 0 || k >= n) throw std::invalid_argument("block index out of range");
    if (n < 2) throw std::invalid_argument("membership is vacuous for a single block");

    MatricialMembership out;

    // scalar targets reduce to numerical-range membership, decided on disks
    if (spec.blocks[k].size == 1) {
        const DiskHull hull = hull_of_block_ranges(spec, k, opts.disk_radius_bias);
        const double gap = hull.signed_gap(spec.blocks[k].eigenvalue);
        out.rule = MembershipRule::ScalarNumrange;
        out.margin = std::abs(gap);
        out.verdict = gap <= opts.tol.exact_eq ? RangeVerdict::In : RangeVerdict::Out;
        return out;
    }

    if (auto plan = compression_witness(spec, k, opts.tol)) {
        const ComplexMatrix reproduced = apply_plan(*plan, spec, k, opts.tol);
        const ComplexMatrix target = jordan_block(spec.blocks[k].size, spec.blocks[k].eigenvalue);
        out.rule = MembershipRule::CompressionWitness;
        out.margin = (reproduced - target).max_abs();
        out.verdict = RangeVerdict::In;
        out.plan = std::move(plan);
        return out;
    }

    const ChoiProgram program = rest_membership_program(spec, k, opts.tol);
    const ChoiResult oracle = choi_feasible(program, opts.tol, opts.max_iterations());
    out.rule = MembershipRule::ChoiOracle;
    out.margin = oracle.margin;
    switch (oracle.verdict) {
        case ChoiVerdict::Feasible:
            out.verdict = RangeVerdict::In;
            break;
        case ChoiVerdict::Infeasible:
            out.verdict = RangeVerdict::Out;
            break;
        case ChoiVerdict::Unknown:
            out.verdict = RangeVerdict::Undecided;
            break;
    }
    out.oracle = oracle;
    return out;
}

} // namespace jordanenv
