#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sicbell/quantum_core.hpp"
#include "sicbell/sic_catalog.hpp"

namespace sicbell {

// Schmidt amplitudes c_ℓ over the chosen OAM modes. Mode k of the list is
// embedded as computational index k on both sides (|ℓ⟩_A|−ℓ⟩_B → |k⟩|k⟩).
struct SchmidtSpectrum {
    std::vector<int> modes;
    std::vector<double> amplitudes;

    std::size_t dimension() const { return amplitudes.size(); }
    void validate() const;
};

/// OAM bases used for d = 3, 4 and 6; other d get 0..d−1.
std::vector<int> default_modes(std::size_t d);

SchmidtSpectrum uniform_spectrum(const std::vector<int>& modes);

/// c_ℓ ∝ exp(−ℓ²/(2·width²)), normalized over the selected modes.
/// An infinite width gives the uniform spectrum.
SchmidtSpectrum spiral_spectrum(double width, const std::vector<int>& modes);

/// Σ_k c_k |k⟩|k⟩
BipartiteState schmidt_state(const SchmidtSpectrum& spectrum);

struct FilterResult {
    SchmidtSpectrum spectrum;
    std::vector<double> transmissions;  // amplitude factor per mode, one arm
    double success_probability = 0.0;
};

/// Procrustean concentration: attenuate each mode to the weakest amplitude,
/// t_ℓ = min_k c_k / c_ℓ, leaving a uniform spectrum with success d·min|c|².
FilterResult procrustean_filter(const SchmidtSpectrum& spectrum);

/// von Neumann entropy (natural log) of Alice's reduced state.
double entanglement_entropy(const BipartiteState& state);

struct NoiseConfig {
    double visibility = 1.0;  // weight of the pure component
    double crosstalk = 0.0;   // measurement depolarization ε
    std::optional<SchmidtSpectrum> spectrum;  // uniform if empty

    void validate() const;
};

struct NoisyModel {
    BipartiteState state;
    MeasurementModel measurements;
};

/// ρ = v|ψ⟩⟨ψ| + (1 − v) I/d² with |ψ⟩ from the spectrum, and effects
/// E_i = (1 − ε)Π_i + ε(I − Π_i)/(d − 1); Bob gets the conjugates.
NoisyModel apply_noise(const SicSet& set, const NoiseConfig& config);

}  // namespace sicbell
