#include "qrms/random.hpp"

#include <cmath>
#include <stdexcept>

namespace qrms {

namespace {

uint64_t splitmix64(uint64_t& x) {
    x += 0x9e3779b97f4a7c15ULL;
    uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(uint64_t seed, uint64_t salt_a, uint64_t salt_b, uint64_t salt_c) {
    uint64_t x = seed;
    uint64_t h = splitmix64(x);
    x ^= salt_a;
    h ^= splitmix64(x);
    x ^= salt_b;
    h ^= splitmix64(x);
    x ^= salt_c;
    h ^= splitmix64(x);
    eng_.seed(h);
}

double RngStream::uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }

double RngStream::normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

long long RngStream::poisson(double mean) {
    if (mean < 0.0) throw std::invalid_argument("poisson: negative mean");
    if (mean == 0.0) return 0;
    return std::poisson_distribution<long long>(mean)(eng_);
}

size_t RngStream::pick(const std::vector<double>& probs) {
    const double u = uniform();
    double acc = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        if (u < acc) return i;
    }
    return probs.size() - 1;
}

Matrix random_hermitian(RngStream& rng, int dim, double scale) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i) {
        m(i, i) = scale * rng.normal();
        for (int j = i + 1; j < dim; ++j) {
            const cdouble x(scale * rng.normal() / std::sqrt(2.0), scale * rng.normal() / std::sqrt(2.0));
            m(i, j) = x;
            m(j, i) = std::conj(x);
        }
    }
    return m;
}

PureState random_state(RngStream& rng, int dim) {
    std::vector<cdouble> v(dim);
    double n2 = 0.0;
    for (auto& x : v) {
        x = cdouble(rng.normal(), rng.normal());
        n2 += std::norm(x);
    }
    const double n = std::sqrt(n2);
    for (auto& x : v) x /= n;
    return PureState(std::move(v));
}

Povm random_povm(RngStream& rng, int dim, int n_outcomes) {
    std::vector<Matrix> gs;
    Matrix sum = Matrix::zero(dim, dim);
    for (int k = 0; k < n_outcomes; ++k) {
        const Matrix x = random_hermitian(rng, dim);
        Matrix g = x * x.adjoint();
        // keep every effect strictly inside the positive cone
        g = g + Matrix::identity(dim) * cdouble(0.05);
        gs.push_back(g);
        sum = sum + g;
    }
    const Matrix w = matrix_inv_sqrt_psd(sum);
    std::vector<PovmOutcome> outs;
    for (int k = 0; k < n_outcomes; ++k) {
        Matrix e = w * gs[k] * w;
        // symmetrize round-off
        e = (e + e.adjoint()) * cdouble(0.5);
        outs.push_back({static_cast<double>(k) + rng.uniform() * 0.5, e});
    }
    return Povm(std::move(outs));
}

Povm random_projective_povm(RngStream& rng, int dim) {
    return sharp_from_observable(Observable(random_hermitian(rng, dim)));
}

Observable random_dichotomic_qubit(RngStream& rng) {
    double nx = rng.normal(), ny = rng.normal(), nz = rng.normal();
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    nx /= n;
    ny /= n;
    nz /= n;
    return Observable(Matrix::from_rows({{nz, cdouble(nx, -ny)}, {cdouble(nx, ny), -nz}}));
}

}  // namespace qrms
