#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace kerrcp {

enum class ErrorKind {
    Validation,            // bad input parameter
    UnstableLinearSystem,  // linear cavity at/beyond threshold, no steady state
    NonConvergent,         // time integration did not settle within t_max
    SolverFailure,         // internal numerical failure (root verification, Newton, ...)
    DomainError,           // operation undefined at this input (e.g. U = 0 scaling law)
    OracleInfeasible,      // Fock truncation cap reached before convergence
    DegenerateNullSpace,   // Liouvillian null space not numerically unique
    ConfigError,           // sweep configuration file invalid
};

const char* error_kind_name(ErrorKind k);

class SimError : public std::runtime_error {
public:
    SimError(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}

    ErrorKind kind() const { return kind_; }
    const char* kind_name() const { return error_kind_name(kind_); }

private:
    ErrorKind kind_;
};

// Carries the last iterate so callers probing the unstable regime can inspect it.
class NonConvergentError : public SimError {
public:
    NonConvergentError(const std::string& msg, std::complex<double> final_state,
                       double residual, double t_reached)
        : SimError(ErrorKind::NonConvergent, msg),
          final_state(final_state), residual(residual), t_reached(t_reached) {}

    std::complex<double> final_state;
    double residual;
    double t_reached;
};

}  // namespace kerrcp
