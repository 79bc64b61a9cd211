#include "sicbell/noise_models.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace sicbell {

void SchmidtSpectrum::validate() const {
    if (amplitudes.empty()) {
        throw std::invalid_argument("SchmidtSpectrum: empty spectrum");
    }
    if (modes.size() != amplitudes.size()) {
        throw std::invalid_argument("SchmidtSpectrum: one amplitude per mode required");
    }
    if (std::set<int>(modes.begin(), modes.end()).size() != modes.size()) {
        throw std::invalid_argument("SchmidtSpectrum: modes must be distinct");
    }
    double total = 0.0;
    for (double c : amplitudes) {
        if (!(c >= 0.0)) {
            throw std::invalid_argument("SchmidtSpectrum: amplitudes must be nonnegative");
        }
        total += c * c;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::invalid_argument("SchmidtSpectrum: squared amplitudes must sum to 1");
    }
}

std::vector<int> default_modes(std::size_t d) {
    switch (d) {
        case 3:
            return {-3, 0, 3};
        case 4:
            return {-4, -1, 1, 4};
        case 6:
            return {-3, -2, -1, 1, 2, 3};
        default: {
            std::vector<int> modes(d);
            std::iota(modes.begin(), modes.end(), 0);
            return modes;
        }
    }
}

SchmidtSpectrum uniform_spectrum(const std::vector<int>& modes) {
    if (modes.empty()) {
        throw std::invalid_argument("uniform_spectrum: empty mode list");
    }
    SchmidtSpectrum s{modes, std::vector<double>(modes.size(), 1.0 / std::sqrt(static_cast<double>(modes.size())))};
    s.validate();
    return s;
}

SchmidtSpectrum spiral_spectrum(double width, const std::vector<int>& modes) {
    if (modes.empty()) {
        throw std::invalid_argument("spiral_spectrum: empty mode list");
    }
    if (!(width > 0.0)) {
        throw std::invalid_argument("spiral_spectrum: width must be positive");
    }
    if (std::isinf(width)) {
        return uniform_spectrum(modes);
    }
    SchmidtSpectrum s;
    s.modes = modes;
    double total = 0.0;
    for (int l : modes) {
        const double c = std::exp(-static_cast<double>(l) * l / (2.0 * width * width));
        s.amplitudes.push_back(c);
        total += c * c;
    }
    const double scale = 1.0 / std::sqrt(total);
    for (double& c : s.amplitudes) {
        c *= scale;
    }
    s.validate();
    return s;
}

BipartiteState schmidt_state(const SchmidtSpectrum& spectrum) {
    spectrum.validate();
    const auto d = static_cast<Eigen::Index>(spectrum.dimension());
    CVector psi = CVector::Zero(d * d);
    for (Eigen::Index k = 0; k < d; ++k) {
        psi(k * d + k) = spectrum.amplitudes[static_cast<std::size_t>(k)];
    }
    return BipartiteState::pure(spectrum.dimension(), psi);
}

FilterResult procrustean_filter(const SchmidtSpectrum& spectrum) {
    spectrum.validate();
    const double c_min = *std::min_element(spectrum.amplitudes.begin(), spectrum.amplitudes.end());
    if (c_min <= 0.0) {
        throw std::invalid_argument("procrustean_filter: a vanishing amplitude cannot be concentrated");
    }
    FilterResult out;
    out.spectrum = uniform_spectrum(spectrum.modes);
    for (double c : spectrum.amplitudes) {
        out.transmissions.push_back(c_min / c);
    }
    out.success_probability = static_cast<double>(spectrum.dimension()) * c_min * c_min;
    return out;
}

double entanglement_entropy(const BipartiteState& state) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(state.reduced_alice(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double p = es.eigenvalues()(k);
        if (p > 1e-15) {
            s -= p * std::log(p);
        }
    }
    return s;
}

void NoiseConfig::validate() const {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw std::invalid_argument("NoiseConfig: visibility must lie in [0, 1]");
    }
    if (!(crosstalk >= 0.0 && crosstalk < 1.0)) {
        throw std::invalid_argument("NoiseConfig: crosstalk must lie in [0, 1)");
    }
    if (spectrum) {
        spectrum->validate();
    }
}

NoisyModel apply_noise(const SicSet& set, const NoiseConfig& config) {
    config.validate();
    const std::size_t d = set.dimension;
    if (config.spectrum && config.spectrum->dimension() != d) {
        throw std::invalid_argument("apply_noise: spectrum length differs from the set dimension");
    }
    const BipartiteState pure = config.spectrum ? schmidt_state(*config.spectrum) : max_entangled_state(d);
    BipartiteState state = pure.mix(config.visibility, maximally_mixed_state(d));

    const auto dd = static_cast<Eigen::Index>(d);
    const CMatrix identity = CMatrix::Identity(dd, dd);
    const double eps = config.crosstalk;
    std::vector<CMatrix> effects;
    effects.reserve(set.size());
    for (const auto& v : set.vectors) {
        const CMatrix p = projector(to_eigen(normalized(v)));
        effects.push_back((1.0 - eps) * p + eps * (identity - p) / static_cast<double>(d - 1));
    }
    return {std::move(state), MeasurementModel(std::move(effects))};
}

}  // namespace sicbell
