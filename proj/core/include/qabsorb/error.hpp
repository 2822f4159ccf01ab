#pragma once

#include <stdexcept>
#include <string>

namespace qabsorb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// Raised when a caller forces a value out of a divergent coupling, or asks an
// integrator to cross a singular time.
class DivergentCoupling : public Error {
public:
    DivergentCoupling(const std::string& what, double time)
        : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class IntegrationFailure : public Error {
public:
    IntegrationFailure(const std::string& what, double time)
        : Error(what), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

} // namespace qabsorb
