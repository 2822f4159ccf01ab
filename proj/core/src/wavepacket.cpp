#include "qabsorb/wavepacket.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <variant>

#include "qabsorb/csv.hpp"
#include "qabsorb/error.hpp"

namespace qabsorb {

namespace {

constexpr double kExponentialHorizonRates = 33.0;
constexpr double kGaussianTailCutoff = 1e-16;
constexpr double kRenormWarnThreshold = 1e-3;

// Standard normal CDF, accurate in both tails.
double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double normal_pdf(double z) {
    return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
}

// 10-point Gauss-Legendre on [a, b].
template <class F>
double gauss_legendre10(F&& f, double a, double b) {
    static constexpr std::array<double, 5> x = {
        0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
        0.8650633666889845, 0.9739065285171717};
    static constexpr std::array<double, 5> w = {
        0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
        0.1494513491505806, 0.0666713443086881};
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += w[i] * (f(mid - half * x[i]) + f(mid + half * x[i]));
    }
    return sum * half;
}

struct Exponential {
    double rate;
};

struct GaussianProfile {
    double center;
    double width;
    double mass; // P(X >= 0) for X ~ N(center, width^2)
};

struct Tabulated {
    std::vector<double> t;
    std::vector<double> intensity; // raw |xi|^2 samples
    std::vector<double> slope;     // Hermite slopes of the intensity
    std::vector<double> cumulative; // raw energy at knots
    std::vector<std::complex<double>> phase;
    double total;
};

std::size_t interval_of(const std::vector<double>& t, double x) {
    // t[k] <= x < t[k+1], clamped to the last interval.
    auto it = std::upper_bound(t.begin(), t.end(), x);
    auto k = static_cast<std::size_t>(std::distance(t.begin(), it));
    if (k == 0) return 0;
    return std::min(k - 1, t.size() - 2);
}

double hermite(const Tabulated& tab, std::size_t k, double x) {
    const double h = tab.t[k + 1] - tab.t[k];
    const double s = (x - tab.t[k]) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2 * s3 - 3 * s2 + 1;
    const double h10 = s3 - 2 * s2 + s;
    const double h01 = -2 * s3 + 3 * s2;
    const double h11 = s3 - s2;
    const double v = h00 * tab.intensity[k] + h10 * h * tab.slope[k] +
                     h01 * tab.intensity[k + 1] + h11 * h * tab.slope[k + 1];
    return std::max(v, 0.0);
}

// Simpson on [t_k, x] integrates the cubic segment exactly.
double partial_energy(const Tabulated& tab, std::size_t k, double x) {
    const double a = tab.t[k];
    if (x <= a) return 0.0;
    const double fa = hermite(tab, k, a);
    const double fm = hermite(tab, k, 0.5 * (a + x));
    const double fb = hermite(tab, k, x);
    return (x - a) / 6.0 * (fa + 4 * fm + fb);
}

double sign(double v) { return (v > 0) - (v < 0); }

std::vector<double> pchip_slopes(const std::vector<double>& t,
                                 const std::vector<double>& y) {
    const std::size_t n = t.size();
    std::vector<double> h(n - 1), delta(n - 1), d(n, 0.0);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        h[k] = t[k + 1] - t[k];
        delta[k] = (y[k + 1] - y[k]) / h[k];
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (delta[k - 1] * delta[k] <= 0.0) continue;
        const double w1 = 2 * h[k] + h[k - 1];
        const double w2 = h[k] + 2 * h[k - 1];
        d[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
    }
    auto edge = [](double h0, double h1, double m0, double m1) {
        double e = ((2 * h0 + h1) * m0 - h0 * m1) / (h0 + h1);
        if (sign(e) != sign(m0)) {
            e = 0.0;
        } else if (sign(m0) != sign(m1) && std::abs(e) > 3 * std::abs(m0)) {
            e = 3 * m0;
        }
        return e;
    };
    d[0] = edge(h[0], h[1], delta[0], delta[1]);
    d[n - 1] = edge(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return d;
}

} // namespace

struct Wavepacket::Impl {
    std::variant<Exponential, GaussianProfile, Tabulated> profile;
    double horizon = 0.0;
    double scale = 1.0;
};

WavepacketKind Wavepacket::kind() const noexcept {
    switch (impl_->profile.index()) {
    case 0: return WavepacketKind::ExponentialDecay;
    case 1: return WavepacketKind::Gaussian;
    default: return WavepacketKind::Tabulated;
    }
}

double Wavepacket::horizon() const noexcept { return impl_->horizon; }
double Wavepacket::normalization_scale() const noexcept { return impl_->scale; }
bool Wavepacket::normalization_warning() const noexcept {
    return std::abs(impl_->scale - 1.0) > kRenormWarnThreshold;
}

double Wavepacket::intensity(double t) const {
    if (t < 0.0 || t > impl_->horizon) return 0.0;
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Exponential>) {
                return p.rate * std::exp(-p.rate * t);
            } else if constexpr (std::is_same_v<P, GaussianProfile>) {
                return normal_pdf((t - p.center) / p.width) / (p.width * p.mass);
            } else {
                return hermite(p, interval_of(p.t, t), t) / p.total;
            }
        },
        impl_->profile);
}

std::complex<double> Wavepacket::amplitude(double t) const {
    if (t < 0.0 || t > impl_->horizon) return {0.0, 0.0};
    if (const auto* tab = std::get_if<Tabulated>(&impl_->profile)) {
        const std::size_t k = interval_of(tab->t, t);
        const bool left_nearer = (t - tab->t[k]) <= (tab->t[k + 1] - t);
        std::size_t pick = left_nearer ? k : k + 1;
        if (tab->intensity[pick] == 0.0) pick = left_nearer ? k + 1 : k;
        return std::sqrt(intensity(t)) * tab->phase[pick];
    }
    return {std::sqrt(intensity(t)), 0.0};
}

double Wavepacket::head_energy(double t) const {
    if (t < 0.0) {
        throw InvalidParameter("head_energy: negative time");
    }
    if (t >= impl_->horizon) return 1.0;
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Exponential>) {
                return -std::expm1(-p.rate * t);
            } else if constexpr (std::is_same_v<P, GaussianProfile>) {
                if (t > p.center) return 1.0 - tail_energy(t);
                const double z0 = -p.center / p.width;
                const double z1 = (t - p.center) / p.width;
                const double num = (z1 - z0) < 0.5
                                       ? gauss_legendre10(normal_pdf, z0, z1)
                                       : normal_cdf(z1) - normal_cdf(z0);
                return num / p.mass;
            } else {
                const std::size_t k = interval_of(p.t, t);
                return (p.cumulative[k] + partial_energy(p, k, t)) / p.total;
            }
        },
        impl_->profile);
}

double Wavepacket::tail_energy(double t) const {
    if (t < 0.0) {
        throw InvalidParameter("tail_energy: negative time");
    }
    if (t >= impl_->horizon) return 0.0;
    return std::visit(
        [&](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Exponential>) {
                return std::exp(-p.rate * t);
            } else if constexpr (std::is_same_v<P, GaussianProfile>) {
                if (t <= p.center) return 1.0 - head_energy(t);
                return normal_cdf(-(t - p.center) / p.width) / p.mass;
            } else {
                const std::size_t k = interval_of(p.t, t);
                const double head = p.cumulative[k] + partial_energy(p, k, t);
                return std::max(p.total - head, 0.0) / p.total;
            }
        },
        impl_->profile);
}

double Wavepacket::time_at_head(double target) const {
    if (!(target >= 0.0 && target <= 1.0)) {
        throw InvalidParameter("time_at_head: target must lie in [0, 1]");
    }
    if (const auto* e = std::get_if<Exponential>(&impl_->profile)) {
        return std::min(-std::log1p(-target) / e->rate, impl_->horizon);
    }
    double lo = 0.0;
    double hi = impl_->horizon;
    if (head_energy(lo) >= target) return lo;
    for (int i = 0; i < 400 && hi - lo > 0.0; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (head_energy(mid) >= target ? hi : lo) = mid;
    }
    return hi;
}

std::string Wavepacket::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, Exponential>) {
                os << "exp:c=" << csv::format_double(p.rate, 10);
            } else if constexpr (std::is_same_v<P, GaussianProfile>) {
                os << "gauss:center=" << csv::format_double(p.center, 10)
                   << ",width=" << csv::format_double(p.width, 10);
            } else {
                os << "tabulated:points=" << p.t.size()
                   << ",scale=" << csv::format_double(impl_->scale, 10);
            }
        },
        impl_->profile);
    return os.str();
}

double Wavepacket::rate() const {
    if (const auto* e = std::get_if<Exponential>(&impl_->profile)) return e->rate;
    throw InvalidParameter("rate: not an exponential wavepacket");
}

double Wavepacket::center() const {
    if (const auto* g = std::get_if<GaussianProfile>(&impl_->profile)) return g->center;
    throw InvalidParameter("center: not a Gaussian wavepacket");
}

double Wavepacket::width() const {
    if (const auto* g = std::get_if<GaussianProfile>(&impl_->profile)) return g->width;
    throw InvalidParameter("width: not a Gaussian wavepacket");
}

Wavepacket make_exponential(double rate) {
    if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw InvalidParameter("exponential wavepacket: rate must be positive and finite");
    }
    auto impl = std::make_shared<Wavepacket::Impl>();
    impl->profile = Exponential{rate};
    impl->horizon = kExponentialHorizonRates / rate;
    return Wavepacket(std::move(impl));
}

Wavepacket make_gaussian(double center, double width) {
    if (!(width > 0.0) || !std::isfinite(width) || !std::isfinite(center)) {
        throw InvalidParameter("gaussian wavepacket: width must be positive and finite");
    }
    const double mass = normal_cdf(center / width);
    if (mass < 1e-12) {
        throw InvalidParameter("gaussian wavepacket: almost no energy at t >= 0");
    }
    // Smallest horizon with normalized tail below the cutoff.
    double lo = std::max(center, 0.0);
    double hi = lo + width;
    auto tail = [&](double t) { return normal_cdf(-(t - center) / width) / mass; };
    while (tail(hi) > kGaussianTailCutoff) hi += width;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (tail(mid) > kGaussianTailCutoff ? lo : hi) = mid;
    }
    auto impl = std::make_shared<Wavepacket::Impl>();
    impl->profile = GaussianProfile{center, width, mass};
    impl->horizon = hi;
    return Wavepacket(std::move(impl));
}

Wavepacket make_tabulated(std::span<const double> grid,
                          std::span<const std::complex<double>> values) {
    if (grid.size() != values.size()) {
        throw InvalidParameter("tabulated wavepacket: grid and values differ in length");
    }
    if (grid.size() < 4) {
        throw InvalidParameter("tabulated wavepacket: need at least 4 samples");
    }
    if (grid.front() != 0.0) {
        throw InvalidParameter("tabulated wavepacket: grid must start at 0");
    }
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!std::isfinite(grid[k]) || !std::isfinite(values[k].real()) ||
            !std::isfinite(values[k].imag())) {
            throw InvalidParameter("tabulated wavepacket: non-finite entry");
        }
        if (k > 0 && !(grid[k] > grid[k - 1])) {
            throw InvalidParameter("tabulated wavepacket: grid must be strictly increasing");
        }
    }

    Tabulated tab;
    tab.t.assign(grid.begin(), grid.end());
    tab.intensity.resize(grid.size());
    tab.phase.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double mag = std::abs(values[k]);
        tab.intensity[k] = mag * mag;
        tab.phase[k] = mag > 0.0 ? values[k] / mag : std::complex<double>{1.0, 0.0};
    }
    tab.slope = pchip_slopes(tab.t, tab.intensity);
    tab.cumulative.assign(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        tab.cumulative[k + 1] = tab.cumulative[k] + partial_energy(tab, k, tab.t[k + 1]);
    }
    tab.total = tab.cumulative.back();
    if (!(tab.total > 0.0)) {
        throw InvalidParameter("tabulated wavepacket: zero total energy");
    }

    auto impl = std::make_shared<Wavepacket::Impl>();
    impl->horizon = tab.t.back();
    impl->scale = tab.total;
    impl->profile = std::move(tab);
    return Wavepacket(std::move(impl));
}

Wavepacket load_tabulated_csv(const std::filesystem::path& path) {
    const auto table = csv::read(path);
    const std::vector<std::string> expected = {"t", "re_xi", "im_xi"};
    if (table.header != expected) {
        throw InvalidParameter("'" + path.string() + "': header must be t,re_xi,im_xi");
    }
    std::vector<double> t;
    std::vector<std::complex<double>> xi;
    t.reserve(table.rows.size());
    xi.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != 3) {
            throw InvalidParameter("'" + path.string() + "': row " + std::to_string(r + 2) +
                                   " does not have 3 fields");
        }
        t.push_back(csv::parse_double(row[0]));
        xi.emplace_back(csv::parse_double(row[1]), csv::parse_double(row[2]));
    }
    return make_tabulated(t, xi);
}

} // namespace qabsorb
