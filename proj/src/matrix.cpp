#include "jordanenv/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace jordanenv {

namespace {

void require_finite(Complex z) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument("non-finite matrix entry");
}

} // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), entries_(static_cast<size_t>(rows) * cols, Complex(0.0, 0.0)) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix dimensions must be positive");
    if (entries_.size() != static_cast<size_t>(rows) * cols)
        throw std::invalid_argument("entry count does not match dimensions");
    for (const Complex& z : entries_) require_finite(z);
}

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(int rows, int cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(i, j) = std::conj(at(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("shape mismatch in +");
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] + rhs.entries_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw std::invalid_argument("shape mismatch in -");
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] - rhs.entries_[i];
    return r;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("shape mismatch in *");
    ComplexMatrix r(rows_, rhs.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int k = 0; k < cols_; ++k) {
            const Complex a = at(i, k);
            if (a == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < rhs.cols_; ++j) r.at(i, j) += a * rhs.at(k, j);
        }
    }
    return r;
}

ComplexMatrix ComplexMatrix::operator*(Complex scalar) const {
    ComplexMatrix r(rows_, cols_);
    for (size_t i = 0; i < entries_.size(); ++i) r.entries_[i] = entries_[i] * scalar;
    return r;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m) { return m * scalar; }

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : entries_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const Complex& z : entries_) s = std::max(s, std::abs(z));
    return s;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += at(i, i);
    return t;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    if (!square()) return false;
    double worst = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            worst = std::max(worst, std::abs(at(i, j) - std::conj(at(j, i))));
    return worst <= tol * std::max(1.0, max_abs());
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
    if (blocks.empty()) throw std::invalid_argument("direct_sum of nothing");
    int n = 0;
    for (const auto& b : blocks) {
        if (!b.square()) throw std::invalid_argument("direct_sum expects square blocks");
        n += b.rows();
    }
    ComplexMatrix r(n, n);
    int off = 0;
    for (const auto& b : blocks) {
        for (int i = 0; i < b.rows(); ++i)
            for (int j = 0; j < b.cols(); ++j) r.at(off + i, off + j) = b.at(i, j);
        off += b.rows();
    }
    return r;
}

HermitianMatrix::HermitianMatrix(const ComplexMatrix& m, const Tolerances& tol) : mat_(m) {
    if (!m.square()) throw std::invalid_argument("HermitianMatrix needs a square matrix");
    if (!m.is_hermitian(tol.hermitian_admit))
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            mat_.at(i, j) = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
}

ComplexMatrix jordan_block(int m, Complex lambda) {
    if (m < 1) throw std::invalid_argument("jordan_block size must be >= 1");
    require_finite(lambda);
    ComplexMatrix j(m, m);
    for (int i = 0; i < m; ++i) {
        j.at(i, i) = lambda;
        if (i + 1 < m) j.at(i, i + 1) = 1.0;
    }
    return j;
}

namespace {

// One cyclic Jacobi pass over the strict upper triangle of a; rotations are
// accumulated into v. Returns the number of rotations applied.
int jacobi_sweep(ComplexMatrix& a, ComplexMatrix& v, double threshold) {
    const int n = a.rows();
    int rotations = 0;
    for (int p = 0; p < n - 1; ++p) {
        for (int q = p + 1; q < n; ++q) {
            const Complex apq = a.at(p, q);
            const double mag = std::abs(apq);
            if (mag <= threshold) continue;
            ++rotations;

            const double app = a.at(p, p).real();
            const double aqq = a.at(q, q).real();
            const Complex phase = apq / mag;
            const double tau = (aqq - app) / (2.0 * mag);
            const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                             (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const Complex s = -std::conj(phase) * (t * c);

            // A <- R* A R with R acting on columns (p,q):
            //   col_p' =  c * col_p + s * col_q
            //   col_q' = -conj(s) * col_p + c * col_q
            for (int i = 0; i < n; ++i) {
                const Complex aip = a.at(i, p);
                const Complex aiq = a.at(i, q);
                a.at(i, p) = c * aip + s * aiq;
                a.at(i, q) = -std::conj(s) * aip + c * aiq;
            }
            for (int i = 0; i < n; ++i) {
                const Complex api = a.at(p, i);
                const Complex aqi = a.at(q, i);
                a.at(p, i) = c * api + std::conj(s) * aqi;
                a.at(q, i) = -s * api + c * aqi;
            }
            a.at(p, q) = 0.0;
            a.at(q, p) = 0.0;
            a.at(p, p) = Complex(a.at(p, p).real(), 0.0);
            a.at(q, q) = Complex(a.at(q, q).real(), 0.0);

            for (int i = 0; i < v.rows(); ++i) {
                const Complex vip = v.at(i, p);
                const Complex viq = v.at(i, q);
                v.at(i, p) = c * vip + s * viq;
                v.at(i, q) = -std::conj(s) * vip + c * viq;
            }
        }
    }
    return rotations;
}

double offdiag_mass(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a.at(i, j));
    return std::sqrt(s);
}

} // namespace

Eigensystem hermitian_eigen(const HermitianMatrix& h, const Tolerances& tol,
                            const ComplexMatrix* warm_start) {
    const int n = h.dim();
    ComplexMatrix a = h.matrix();
    ComplexMatrix v = ComplexMatrix::identity(n);
    if (warm_start && warm_start->rows() == n && warm_start->cols() == n) {
        a = warm_start->adjoint() * a * (*warm_start);
        // symmetrize round-off from the conjugation
        for (int i = 0; i < n; ++i) {
            a.at(i, i) = Complex(a.at(i, i).real(), 0.0);
            for (int j = i + 1; j < n; ++j) {
                const Complex m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
                a.at(i, j) = m;
                a.at(j, i) = std::conj(m);
            }
        }
        v = *warm_start;
    }

    const double scale = h.matrix().frobenius_norm();
    const double goal = tol.jacobi_offdiag_rel * std::max(scale, 1e-300);
    for (int sweep = 0; sweep < tol.jacobi_max_sweeps; ++sweep) {
        if (offdiag_mass(a) <= goal) break;
        // threshold sweeps: skip entries already far below the target
        if (jacobi_sweep(a, v, goal / std::max(1, n)) == 0) break;
    }

    Eigensystem es;
    es.values.resize(n);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a.at(i, i).real();
    std::sort(order.begin(), order.end(), [&](int x, int y) { return diag[x] < diag[y]; });

    es.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        es.values[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) es.vectors.at(i, k) = v.at(i, order[k]);
    }
    return es;
}

double min_eigenvalue(const HermitianMatrix& h, const Tolerances& tol) {
    return hermitian_eigen(h, tol).values.front();
}

double operator_norm(const ComplexMatrix& a, const Tolerances& tol) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("operator_norm of empty matrix");
    const ComplexMatrix gram = a.adjoint() * a;
    const HermitianMatrix g(gram, tol);
    const double top = hermitian_eigen(g, tol).values.back();
    return std::sqrt(std::max(0.0, top));
}

HermitianMatrix psd_project(const HermitianMatrix& h, const Tolerances& tol) {
    const Eigensystem es = hermitian_eigen(h, tol);
    const int n = h.dim();
    ComplexMatrix r(n, n);
    for (int k = 0; k < n; ++k) {
        const double lam = es.values[k];
        if (lam <= 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const Complex vik = es.vectors.at(i, k);
            if (vik == Complex(0.0, 0.0)) continue;
            const Complex w = lam * vik;
            for (int j = 0; j < n; ++j) r.at(i, j) += w * std::conj(es.vectors.at(j, k));
        }
    }
    // exact Hermitian symmetry for the admit check
    for (int i = 0; i < n; ++i) {
        r.at(i, i) = Complex(r.at(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex m = 0.5 * (r.at(i, j) + std::conj(r.at(j, i)));
            r.at(i, j) = m;
            r.at(j, i) = std::conj(m);
        }
    }
    return HermitianMatrix(r, tol);
}

HermitianMatrix real_part_rotated(const ComplexMatrix& t, double theta, const Tolerances& tol) {
    if (!t.square()) throw std::invalid_argument("real_part_rotated expects a square matrix");
    const Complex w = std::polar(1.0, -theta);
    ComplexMatrix r(t.rows(), t.rows());
    for (int i = 0; i < t.rows(); ++i)
        for (int j = 0; j < t.cols(); ++j)
            r.at(i, j) = 0.5 * (w * t.at(i, j) + std::conj(w * t.at(j, i)));
    return HermitianMatrix(r, tol);
}

} // namespace jordanenv
