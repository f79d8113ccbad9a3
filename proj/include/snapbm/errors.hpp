#pragma once

#include <stdexcept>
#include <string>

namespace snapbm {

struct InvalidDomain : std::runtime_error {
    explicit InvalidDomain(const std::string& what) : std::runtime_error(what) {}
};

struct PointNotOnCurve : std::runtime_error {
    explicit PointNotOnCurve(const std::string& what) : std::runtime_error(what) {}
};

struct PointOutsideDomain : std::runtime_error {
    explicit PointOutsideDomain(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateGeometry : std::runtime_error {
    explicit DegenerateGeometry(const std::string& what) : std::runtime_error(what) {}
};

struct NoBarriers : std::runtime_error {
    explicit NoBarriers(const std::string& what) : std::runtime_error(what) {}
};

struct InconsistentSigns : std::runtime_error {
    explicit InconsistentSigns(const std::string& what) : std::runtime_error(what) {}
};

struct StuckParticle : std::runtime_error {
    explicit StuckParticle(const std::string& what, long particle = -1)
        : std::runtime_error(what), particle_index(particle) {}
    long particle_index;
};

struct EmptyEnsemble : std::runtime_error {
    explicit EmptyEnsemble(const std::string& what) : std::runtime_error(what) {}
};

struct GridMismatch : std::runtime_error {
    explicit GridMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidMinorization : std::runtime_error {
    explicit InvalidMinorization(const std::string& what) : std::runtime_error(what) {}
};

struct ConstraintViolation : std::runtime_error {
    explicit ConstraintViolation(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace snapbm
