#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irci {

/// Raised when a swath/waveform combination breaks the CP sizing rule
/// L_o <= N / M_T. Carries both sides so callers can repartition.
class ConstraintViolation : public std::runtime_error {
public:
    ConstraintViolation(const std::string& what, std::size_t value, std::size_t limit)
        : std::runtime_error(what), value_(value), limit_(limit) {}

    std::size_t value() const noexcept { return value_; }
    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t value_;
    std::size_t limit_;
};

/// A metric whose reference level is zero (PAPR of silence, dB of an empty profile, ...).
class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Unsupported : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace irci
