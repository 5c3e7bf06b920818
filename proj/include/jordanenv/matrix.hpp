#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "jordanenv/tolerances.hpp"

namespace jordanenv {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Immutable by convention: operations return
// fresh values, so instances can be shared freely across threads.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols);
    ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

    static ComplexMatrix identity(int n);
    static ComplexMatrix zero(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Complex& at(int r, int c) { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    const Complex& at(int r, int c) const { return entries_[static_cast<size_t>(r) * cols_ + c]; }
    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;

    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(Complex scalar) const;

    double frobenius_norm() const;
    double max_abs() const;
    Complex trace() const;
    bool is_hermitian(double tol) const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& m);

// Direct sum placed block-diagonally.
ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

// A square matrix admitted as Hermitian: construction checks the asymmetry
// against tol.hermitian_admit and stores the symmetrized part.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(const ComplexMatrix& m,
                             const Tolerances& tol = default_tolerances());

    int dim() const { return mat_.rows(); }
    const ComplexMatrix& matrix() const { return mat_; }

  private:
    ComplexMatrix mat_;
};

struct Eigensystem {
    std::vector<double> values; // ascending
    ComplexMatrix vectors;      // columns, same order as values
};

// m x m Jordan block: lambda on the diagonal, 1 on the superdiagonal.
ComplexMatrix jordan_block(int m, Complex lambda);

// Cyclic Jacobi with complex rotations. Small dense matrices only; the
// stopping rule is off-diagonal Frobenius mass < jacobi_offdiag_rel * ||H||_F.
// warm_start, when nonnull, is a unitary that approximately diagonalizes h
// (e.g. the eigenvectors of a nearby matrix); it cuts the sweep count when
// the solver is called on a slowly drifting sequence of matrices.
Eigensystem hermitian_eigen(const HermitianMatrix& h,
                            const Tolerances& tol = default_tolerances(),
                            const ComplexMatrix* warm_start = nullptr);

double min_eigenvalue(const HermitianMatrix& h,
                      const Tolerances& tol = default_tolerances());

// Largest singular value, via the top eigenvalue of a*a.
double operator_norm(const ComplexMatrix& a,
                     const Tolerances& tol = default_tolerances());

// Eigenvalue clipping onto the PSD cone.
HermitianMatrix psd_project(const HermitianMatrix& h,
                            const Tolerances& tol = default_tolerances());

// (e^{-i theta} t + e^{i theta} t*) / 2 as a Hermitian value.
HermitianMatrix real_part_rotated(const ComplexMatrix& t, double theta,
                                  const Tolerances& tol = default_tolerances());

} // namespace jordanenv
