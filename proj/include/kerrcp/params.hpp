#pragma once

#include "kerrcp/errors.hpp"

namespace kerrcp {

/// Physical rates of the driven Kerr cavity, all angular frequencies in a
/// single unit system. The library convention is gamma-normalized units
/// (gamma == 1); experiment-style inputs quoted as X/2pi in Hz are converted
/// with normalize().
struct CavityParams {
    double gamma = 1.0;    ///< cavity energy dissipation rate (> 0)
    double delta = 0.0;    ///< single-photon drive detuning, omega_a - omega_p
    double u_kerr = 0.0;   ///< Kerr coefficient U (>= 0), the sensing target
    double eps = 0.0;      ///< single-photon drive amplitude (real, >= 0)
    double g2 = 0.0;       ///< two-photon drive amplitude G (real, >= 0)

    /// Throws SimError(Validation) naming the offending field.
    void validate() const;
};

enum class UnitMode {
    AngularNormalized,  // rates divided by gamma; gamma == 1
    HzOver2Pi,          // values quoted as X/2pi in Hz
};

struct UnitConvention {
    UnitMode mode = UnitMode::AngularNormalized;
};

/// Convert a parameter set quoted as X/2pi in Hz into gamma-normalized units.
/// The 2*pi factors cancel: each field becomes value_hz / gamma_hz, gamma = 1.
CavityParams normalize(const CavityParams& raw_hz2pi, double gamma_hz);

/// Inverse of normalize(); round-trips to 1 part in 1e12.
CavityParams to_hz_over_2pi(const CavityParams& normalized, double gamma_hz);

/// Two-photon drive strength at the phase-transition point: gamma / 4,
/// in the same unit convention as p.
double critical_strength(const CavityParams& p);

}  // namespace kerrcp
