#include "qrms/povm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qrms/qubit.hpp"

namespace qrms {

Povm::Povm(std::vector<PovmOutcome> outcomes) : outcomes_(std::move(outcomes)) {
    if (outcomes_.empty()) throw std::invalid_argument("Povm: no outcomes");
    const int d = outcomes_.front().effect.rows();
    Matrix sum = Matrix::zero(d, d);
    for (const auto& o : outcomes_) {
        if (o.effect.rows() != d || o.effect.cols() != d)
            throw std::invalid_argument("Povm: effect dimension mismatch");
        if (!o.effect.all_finite() || !o.effect.is_hermitian(1e-12))
            throw std::invalid_argument("Povm: effect not Hermitian");
        const auto es = hermitian_eigensystem(o.effect);
        if (es.values.back() < -1e-10) throw std::invalid_argument("Povm: effect not positive");
        sum = sum + o.effect;
    }
    if ((sum - Matrix::identity(d)).norm_max() > 1e-10)
        throw std::invalid_argument("Povm: effects do not sum to identity within 1e-10");
    for (size_t i = 0; i < outcomes_.size(); ++i)
        for (size_t j = i + 1; j < outcomes_.size(); ++j)
            if (std::abs(outcomes_[i].value - outcomes_[j].value) <= 1e-9)
                throw std::invalid_argument("Povm: outcome values not pairwise distinct");
}

Povm sharp_from_observable(const Observable& m) {
    const SpectralDecomposition sd = spectral_decompose(m);
    std::vector<PovmOutcome> outs;
    outs.reserve(sd.eigenvalues.size());
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k) outs.push_back({sd.eigenvalues[k], sd.projectors[k]});
    return Povm(std::move(outs));
}

Povm sharp_meter_povm() {
    const Matrix half_id = Matrix::identity(2) * cdouble(0.5);
    const Matrix sm = qubit::sigma_m() * cdouble(0.5);
    const double r2 = std::sqrt(2.0);
    return Povm({{r2, half_id + sm}, {-r2, half_id - sm}});
}

Povm unsharp_meter_povm() {
    const Matrix half_id = Matrix::identity(2) * cdouble(0.5);
    const Matrix tilt = (qubit::sigma_x() + qubit::sigma_z()) * cdouble(0.25);
    return Povm({{2.0, half_id + tilt}, {-2.0, half_id - tilt}});
}

Observable moment(const Povm& p) {
    Matrix m = Matrix::zero(p.dim(), p.dim());
    for (const auto& o : p.outcomes()) m = m + o.effect * cdouble(o.value);
    return Observable(m);
}

Observable second_moment(const Povm& p) {
    Matrix m = Matrix::zero(p.dim(), p.dim());
    for (const auto& o : p.outcomes()) m = m + o.effect * cdouble(o.value * o.value);
    return Observable(m);
}

bool is_projective(const Povm& p) {
    for (const auto& o : p.outcomes())
        if ((o.effect * o.effect - o.effect).norm_max() > 1e-9) return false;
    return true;
}

std::vector<std::pair<double, double>> outcome_distribution(const Povm& p, const PureState& psi) {
    if (p.dim() != psi.dim()) throw std::invalid_argument("outcome_distribution: dimension mismatch");
    std::vector<std::pair<double, double>> dist;
    dist.reserve(p.outcomes().size());
    for (const auto& o : p.outcomes()) {
        double prob = expectation(psi, o.effect);
        if (prob < -1e-10 || prob > 1.0 + 1e-10)
            throw std::runtime_error("outcome_distribution: probability out of range");
        prob = std::clamp(prob, 0.0, 1.0);
        dist.emplace_back(o.value, prob);
    }
    return dist;
}

bool is_accurate(const Observable& a, const Povm& p, const PureState& psi, double tol) {
    if (a.dim() != p.dim() || a.dim() != psi.dim()) throw std::invalid_argument("is_accurate: dimension mismatch");
    const SpectralDecomposition sd = spectral_decompose(a);
    const auto dist = outcome_distribution(p, psi);

    std::vector<bool> matched(dist.size(), false);
    for (size_t k = 0; k < sd.eigenvalues.size(); ++k) {
        const double spectral_prob = expectation(psi, sd.projectors[k]);
        double povm_prob = 0.0;
        for (size_t j = 0; j < dist.size(); ++j) {
            if (std::abs(dist[j].first - sd.eigenvalues[k]) <= 1e-9) {
                povm_prob += dist[j].second;
                matched[j] = true;
            }
        }
        if (std::abs(spectral_prob - povm_prob) > tol) return false;
    }
    for (size_t j = 0; j < dist.size(); ++j)
        if (!matched[j] && dist[j].second >= tol) return false;
    return true;
}

Dilation naimark_dilate(const Povm& p) {
    const int d = p.dim();
    const int k = p.size();
    Matrix v(d * k, d);
    Matrix meter = Matrix::zero(d * k, d * k);
    for (int x = 0; x < k; ++x) {
        const Matrix root = matrix_sqrt_psd(p.outcomes()[x].effect);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) v(i * k + x, j) = root(i, j);
        for (int i = 0; i < d; ++i) meter(i * k + x, i * k + x) = p.outcomes()[x].value;
    }
    return Dilation{k, std::move(v), std::move(meter)};
}

double dilation_error_norm(const Dilation& d, const Observable& a, const PureState& psi) {
    if (d.isometry.cols() != a.dim() || a.dim() != psi.dim())
        throw std::invalid_argument("dilation_error_norm: dimension mismatch");
    const auto lifted = d.meter.apply(d.isometry.apply(psi.amps()));
    const auto tracked = d.isometry.apply(a.mat().apply(psi.amps()));
    double n2 = 0.0;
    for (size_t i = 0; i < lifted.size(); ++i) n2 += std::norm(lifted[i] - tracked[i]);
    return std::sqrt(n2);
}

}  // namespace qrms
