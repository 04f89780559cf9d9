#include "qrms/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qrms {

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("Matrix: dimensions must be positive");
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zero(int rows, int cols) { return Matrix(rows, cols); }

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<cdouble>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = static_cast<int>(rows.begin()->size());
    Matrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw std::invalid_argument("from_rows: ragged rows");
        int j = 0;
        for (const auto& x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

Matrix Matrix::outer(const std::vector<cdouble>& u, const std::vector<cdouble>& v) {
    Matrix m(static_cast<int>(u.size()), static_cast<int>(v.size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

Matrix Matrix::kron(const Matrix& a, const Matrix& b) {
    Matrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return m;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

cdouble Matrix::trace() const {
    if (!is_square()) throw std::invalid_argument("trace: non-square matrix");
    cdouble t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::norm_max() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

bool Matrix::is_hermitian(double tol) const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i; j < cols_; ++j)
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
    return true;
}

bool Matrix::all_finite() const {
    for (const auto& x : a_)
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix add: shape mismatch");
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sub: shape mismatch");
    Matrix m = *this;
    for (size_t i = 0; i < a_.size(); ++i) m.a_[i] -= o.a_[i];
    return m;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix mul: shape mismatch");
    Matrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const cdouble aik = (*this)(i, k);
            if (aik == cdouble{}) continue;
            for (int j = 0; j < o.cols_; ++j) m(i, j) += aik * o(k, j);
        }
    return m;
}

Matrix Matrix::operator*(cdouble s) const {
    Matrix m = *this;
    for (auto& x : m.a_) x *= s;
    return m;
}

std::vector<cdouble> Matrix::apply(const std::vector<cdouble>& v) const {
    if (cols_ != static_cast<int>(v.size())) throw std::invalid_argument("matrix apply: shape mismatch");
    std::vector<cdouble> r(rows_);
    for (int i = 0; i < rows_; ++i) {
        cdouble s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

Observable::Observable(Matrix m) : m_(std::move(m)) {
    if (!m_.is_square()) throw std::invalid_argument("Observable: matrix must be square");
    if (!m_.all_finite()) throw std::invalid_argument("Observable: non-finite entries");
    if (!m_.is_hermitian(1e-12)) throw std::invalid_argument("Observable: matrix not Hermitian within 1e-12");
}

PureState::PureState(std::vector<cdouble> amplitudes) : v_(std::move(amplitudes)) {
    if (v_.empty()) throw std::invalid_argument("PureState: empty vector");
    double n2 = 0.0;
    for (const auto& x : v_) {
        if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
            throw std::invalid_argument("PureState: non-finite amplitude");
        n2 += std::norm(x);
    }
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: vector not normalized within 1e-12");
}

cdouble inner(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner: dimension mismatch");
    cdouble s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += std::conj(a.amps()[i]) * b.amps()[i];
    return s;
}

double fidelity(const PureState& a, const PureState& b) { return std::abs(inner(a, b)); }

// Cyclic Jacobi with complex Givens rotations. The rotation for pivot (p,q)
// is G = D R: D carries the phase of a_pq onto the real axis, R is the
// classical real Jacobi rotation that annihilates the pivot.
EigenSystem hermitian_eigensystem(const Matrix& m) {
    if (!m.is_square()) throw std::invalid_argument("eigensystem: non-square matrix");
    if (!m.is_hermitian(1e-12)) throw std::invalid_argument("eigensystem: matrix not Hermitian");
    const int n = m.rows();
    Matrix a = m;
    Matrix v = Matrix::identity(n);

    const double scale = std::max(a.norm_max(), 1e-300);
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
        if (off <= 1e-15 * scale) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cdouble apq = a(p, q);
                const double r = std::abs(apq);
                if (r <= 1e-15 * scale) continue;
                const cdouble phase = apq / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * r);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // rows: G^H A
                for (int j = 0; j < n; ++j) {
                    const cdouble xp = a(p, j);
                    const cdouble xq = a(q, j);
                    a(p, j) = c * xp - s * phase * xq;
                    a(q, j) = s * xp + c * phase * xq;
                }
                // columns: (G^H A) G
                for (int i = 0; i < n; ++i) {
                    const cdouble xp = a(i, p);
                    const cdouble xq = a(i, q);
                    a(i, p) = c * xp - s * std::conj(phase) * xq;
                    a(i, q) = s * xp + c * std::conj(phase) * xq;
                    const cdouble vp = v(i, p);
                    const cdouble vq = v(i, q);
                    v(i, p) = c * vp - s * std::conj(phase) * vq;
                    v(i, q) = s * vp + c * std::conj(phase) * vq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return diag[i] > diag[j]; });

    EigenSystem es;
    es.values.resize(n);
    es.vectors = Matrix(n, n);
    for (int k = 0; k < n; ++k) {
        es.values[k] = diag[order[k]];
        for (int i = 0; i < n; ++i) es.vectors(i, k) = v(i, order[k]);
    }
    return es;
}

SpectralDecomposition spectral_decompose(const Observable& obs) {
    const EigenSystem es = hermitian_eigensystem(obs.mat());
    const int n = obs.dim();
    SpectralDecomposition sd;
    int k = 0;
    while (k < n) {
        int j = k;
        while (j + 1 < n && es.values[j] - es.values[j + 1] < 1e-9) ++j;
        double lambda = 0.0;
        Matrix proj = Matrix::zero(n, n);
        for (int c = k; c <= j; ++c) {
            lambda += es.values[c];
            std::vector<cdouble> col(n);
            for (int i = 0; i < n; ++i) col[i] = es.vectors(i, c);
            proj = proj + Matrix::outer(col, col);
        }
        sd.eigenvalues.push_back(lambda / (j - k + 1));
        sd.projectors.push_back(proj);
        k = j + 1;
    }
    return sd;
}

PureState evolve(const PureState& psi, const Observable& gen, double angle) {
    if (psi.dim() != gen.dim()) throw std::invalid_argument("evolve: dimension mismatch");
    const SpectralDecomposition sd = spectral_decompose(gen);
    std::vector<cdouble> out(psi.dim(), 0.0);
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
        const cdouble ph = std::exp(cdouble(0.0, 0.5 * angle * sd.eigenvalues[k]));
        const auto comp = sd.projectors[k].apply(psi.amps());
        for (int i = 0; i < psi.dim(); ++i) out[i] += ph * comp[i];
    }
    // renormalize the last few ulps so the PureState invariant holds exactly
    double n2 = 0.0;
    for (const auto& x : out) n2 += std::norm(x);
    const double n = std::sqrt(n2);
    for (auto& x : out) x /= n;
    return PureState(std::move(out));
}

double expectation(const PureState& psi, const Matrix& op) {
    if (psi.dim() != op.rows() || !op.is_square()) throw std::invalid_argument("expectation: dimension mismatch");
    const auto w = op.apply(psi.amps());
    cdouble s = 0.0;
    for (int i = 0; i < psi.dim(); ++i) s += std::conj(psi.amps()[i]) * w[i];
    return s.real();
}

double expectation(const PureState& psi, const Observable& obs) { return expectation(psi, obs.mat()); }

namespace {

Matrix psd_function(const Matrix& m, double (*f)(double), const char* what) {
    if (!m.is_hermitian(1e-12)) throw std::invalid_argument(std::string(what) + ": matrix not Hermitian");
    const EigenSystem es = hermitian_eigensystem(m);
    const int n = m.rows();
    Matrix out = Matrix::zero(n, n);
    double scale = 0.0;
    for (int k = 0; k < n; ++k) scale = std::max(scale, std::abs(es.values[k]));
    // eigenvalues at roundoff level would otherwise blow up under sqrt
    const double floor = 1e-13 * std::max(scale, 1.0);
    for (int k = 0; k < n; ++k) {
        double lambda = es.values[k];
        if (lambda < -1e-8) throw std::invalid_argument(std::string(what) + ": significantly negative eigenvalue");
        if (lambda < floor) lambda = 0.0;
        const double fl = f(lambda);
        std::vector<cdouble> col(n);
        for (int i = 0; i < n; ++i) col[i] = es.vectors(i, k);
        out = out + fl * Matrix::outer(col, col);
    }
    return out;
}

double sqrt_clamped(double x) { return std::sqrt(x); }
double inv_sqrt_clamped(double x) { return x > 1e-12 ? 1.0 / std::sqrt(x) : 0.0; }

}  // namespace

Matrix matrix_sqrt_psd(const Matrix& m) { return psd_function(m, sqrt_clamped, "matrix_sqrt_psd"); }
Matrix matrix_inv_sqrt_psd(const Matrix& m) { return psd_function(m, inv_sqrt_clamped, "matrix_inv_sqrt_psd"); }

}  // namespace qrms
