#pragma once

#include <complex>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace qabsorb {

enum class WavepacketKind { ExponentialDecay, Gaussian, Tabulated };

// Temporal profile xi(t) of a traveling single photon, normalized so that
// the integral of |xi|^2 over [0, inf) is one. Immutable; copies share state.
//
// head_energy(t) is the probability that the photon has already arrived by
// time t, tail_energy(t) the probability that it is still to come. Both are
// O(1) for analytic kinds and O(log n) for tabulated profiles.
class Wavepacket {
public:
    WavepacketKind kind() const noexcept;

    std::complex<double> amplitude(double t) const;
    double intensity(double t) const;

    double head_energy(double t) const;
    double tail_energy(double t) const;

    // |xi(t)| is exactly zero beyond this time.
    double horizon() const noexcept;

    // Factor by which raw tabulated samples were divided (energy units); 1 for
    // analytic kinds.
    double normalization_scale() const noexcept;
    bool normalization_warning() const noexcept;

    // Smallest t with head_energy(t) >= target, found by bisection.
    double time_at_head(double target) const;

    // Short human-readable descriptor, e.g. "exp:c=72000000".
    std::string describe() const;

    // Rate for ExponentialDecay; center/width for Gaussian. Throws otherwise.
    double rate() const;
    double center() const;
    double width() const;

    struct Impl;

private:
    explicit Wavepacket(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;

    friend Wavepacket make_exponential(double rate);
    friend Wavepacket make_gaussian(double center, double width);
    friend Wavepacket make_tabulated(std::span<const double> grid,
                                     std::span<const std::complex<double>> values);
};

// xi(t) = sqrt(c) exp(-c t / 2). Horizon 33/c.
Wavepacket make_exponential(double rate);

// |xi|^2 is a normal density (mean `center`, standard deviation `width`)
// restricted to t >= 0 and renormalized; xi is real and positive.
Wavepacket make_gaussian(double center, double width);

// Tabulated complex samples on a strictly increasing grid starting at 0.
// |xi|^2 is interpolated with a monotone piecewise cubic (Fritsch-Carlson)
// and renormalized to unit energy; the phase of xi(t) is that of the
// nearest sample. xi is zero beyond the last grid point.
Wavepacket make_tabulated(std::span<const double> grid,
                          std::span<const std::complex<double>> values);

// Reads `t,re_xi,im_xi` CSV.
Wavepacket load_tabulated_csv(const std::filesystem::path& path);

} // namespace qabsorb
