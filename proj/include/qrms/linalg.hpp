#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace qrms {

using cdouble = std::complex<double>;

/// Small dense complex matrix, row-major. Square for operators, rectangular
/// for isometries. Dimensions in this toolkit stay in the single digits.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols);

    static Matrix identity(int dim);
    static Matrix zero(int rows, int cols);
    static Matrix from_rows(std::initializer_list<std::initializer_list<cdouble>> rows);
    /// Outer product |u><v|.
    static Matrix outer(const std::vector<cdouble>& u, const std::vector<cdouble>& v);
    static Matrix kron(const Matrix& a, const Matrix& b);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cdouble& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const cdouble& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    Matrix adjoint() const;
    cdouble trace() const;
    /// Largest entry magnitude (the max-norm used by all tolerance checks).
    double norm_max() const;
    bool is_hermitian(double tol) const;
    bool all_finite() const;

    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator*(cdouble s) const;
    std::vector<cdouble> apply(const std::vector<cdouble>& v) const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cdouble> a_;
};

inline Matrix operator*(cdouble s, const Matrix& m) { return m * s; }

/// Hermitian operator. Construction rejects non-Hermitian or non-finite input.
class Observable {
  public:
    explicit Observable(Matrix m);
    const Matrix& mat() const { return m_; }
    int dim() const { return m_.rows(); }

  private:
    Matrix m_;
};

/// Unit vector in C^d. Construction rejects non-normalized input.
class PureState {
  public:
    explicit PureState(std::vector<cdouble> amplitudes);
    const std::vector<cdouble>& amps() const { return v_; }
    int dim() const { return static_cast<int>(v_.size()); }

  private:
    std::vector<cdouble> v_;
};

cdouble inner(const PureState& a, const PureState& b);
/// Phase-insensitive overlap |<a|b>|.
double fidelity(const PureState& a, const PureState& b);

/// Raw eigensystem of a Hermitian matrix (cyclic Jacobi, deterministic sweep
/// order). Eigenvalues descending, eigenvectors as columns.
struct EigenSystem {
    std::vector<double> values;
    Matrix vectors;
};
EigenSystem hermitian_eigensystem(const Matrix& m);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // descending, near-degenerate merged
    std::vector<Matrix> projectors;
};

/// Eigenvalues sorted descending; eigenvalues closer than 1e-9 are merged
/// into a single projector on the joint eigenspace.
SpectralDecomposition spectral_decompose(const Observable& obs);

/// exp(i * angle * gen / 2) |psi>, computed through the spectral
/// decomposition of the generator. For gen = sigma_x this is the spin
/// rotation e^{(i alpha sigma_x)/2}.
PureState evolve(const PureState& psi, const Observable& gen, double angle);

/// <psi|obs|psi>; the imaginary residue (below 1e-12 for Hermitian obs) is
/// discarded.
double expectation(const PureState& psi, const Observable& obs);
double expectation(const PureState& psi, const Matrix& op);

/// Principal square root of a positive semidefinite Hermitian matrix.
/// Eigenvalues in [-1e-10, 0) are clamped to zero; below -1e-8 is an error.
Matrix matrix_sqrt_psd(const Matrix& m);
/// Inverse square root on the support (pseudo-inverse on near-zero modes).
Matrix matrix_inv_sqrt_psd(const Matrix& m);

}  // namespace qrms
