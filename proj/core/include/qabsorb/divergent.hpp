#pragma once

#include <optional>
#include <utility>

#include "qabsorb/error.hpp"

namespace qabsorb {

// A value that may instead be a divergence marker. The exact absorber
// coupling is infinite at t = 0; callers branch on divergent() rather than
// testing for NaN or catching exceptions inside right-hand sides.
template <class T>
class MaybeDivergent {
public:
    MaybeDivergent(T value) : value_(std::move(value)) {}

    static MaybeDivergent divergent_at(double time) {
        MaybeDivergent out;
        out.divergent_time_ = time;
        return out;
    }

    bool divergent() const noexcept { return !value_.has_value(); }
    explicit operator bool() const noexcept { return value_.has_value(); }

    // Time at which the divergence was observed (only meaningful if divergent()).
    double divergent_time() const noexcept { return divergent_time_; }

    const T& value() const {
        if (!value_) {
            throw DivergentCoupling("coupling diverges", divergent_time_);
        }
        return *value_;
    }
    const T& operator*() const { return value(); }

    T value_or(T fallback) const { return value_ ? *value_ : std::move(fallback); }

private:
    MaybeDivergent() = default;

    std::optional<T> value_;
    double divergent_time_ = 0.0;
};

} // namespace qabsorb
