#include "kerrcp/params.hpp"

#include <cmath>
#include <sstream>

namespace kerrcp {

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::Validation: return "validation";
        case ErrorKind::UnstableLinearSystem: return "unstable_linear_system";
        case ErrorKind::NonConvergent: return "non_convergent";
        case ErrorKind::SolverFailure: return "solver_failure";
        case ErrorKind::DomainError: return "domain_error";
        case ErrorKind::OracleInfeasible: return "oracle_infeasible";
        case ErrorKind::DegenerateNullSpace: return "degenerate_null_space";
        case ErrorKind::ConfigError: return "config_error";
    }
    return "unknown";
}

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "parameter '" << field << "' is not finite";
        throw SimError(ErrorKind::Validation, os.str());
    }
}

void require_nonneg(double v, const char* field) {
    require_finite(v, field);
    if (v < 0.0) {
        std::ostringstream os;
        os << "parameter '" << field << "' must be >= 0, got " << v;
        throw SimError(ErrorKind::Validation, os.str());
    }
}

}  // namespace

void CavityParams::validate() const {
    require_finite(gamma, "gamma");
    if (gamma <= 0.0)
        throw SimError(ErrorKind::Validation, "parameter 'gamma' must be > 0");
    require_finite(delta, "delta");
    require_nonneg(u_kerr, "u_kerr");
    require_nonneg(eps, "eps");
    require_nonneg(g2, "g2");
}

CavityParams normalize(const CavityParams& raw, double gamma_hz) {
    require_finite(gamma_hz, "gamma_hz");
    if (gamma_hz <= 0.0)
        throw SimError(ErrorKind::Validation, "parameter 'gamma_hz' must be > 0");
    raw.validate();
    CavityParams out;
    out.gamma = 1.0;
    out.delta = raw.delta / gamma_hz;
    out.u_kerr = raw.u_kerr / gamma_hz;
    out.eps = raw.eps / gamma_hz;
    out.g2 = raw.g2 / gamma_hz;
    return out;
}

CavityParams to_hz_over_2pi(const CavityParams& p, double gamma_hz) {
    require_finite(gamma_hz, "gamma_hz");
    if (gamma_hz <= 0.0)
        throw SimError(ErrorKind::Validation, "parameter 'gamma_hz' must be > 0");
    p.validate();
    CavityParams out;
    out.gamma = p.gamma * gamma_hz;
    out.delta = p.delta * gamma_hz;
    out.u_kerr = p.u_kerr * gamma_hz;
    out.eps = p.eps * gamma_hz;
    out.g2 = p.g2 * gamma_hz;
    return out;
}

double critical_strength(const CavityParams& p) {
    p.validate();
    return p.gamma / 4.0;
}

}  // namespace kerrcp
