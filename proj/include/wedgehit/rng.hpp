#pragma once

#include <cmath>
#include <cstdint>

namespace wedgehit {

/// Counter-derived random stream.  Stream i of seed s is a splitmix-style
/// generator whose start state and (odd) increment are both hashes of
/// (s, i), so any number of streams can be created independently and the
/// draws of stream i never depend on how many other streams exist or in
/// which order they run.  That is what makes Monte-Carlo results
/// reproducible for any worker count.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream) {
        inc_ = mix(stream * 0x9E3779B97F4A7C15ull + 0x632BE59BD9B4E019ull) | 1ull;
        state_ = mix(seed ^ mix(stream + 0x1F123BB5C1CA1B0Cull));
    }

    std::uint64_t next_u64() {
        state_ += inc_;
        return mix(state_);
    }

    /// Uniform on the open interval (0,1).
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    /// Standard normal via the Marsaglia polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang squeeze; shape < 1 handled by the
    /// boosting identity G(a) = G(a+1) * U^(1/a).
    double gamma(double shape) {
        if (shape < 1.0) {
            const double u = uniform();
            return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, t;
            do {
                x = normal();
                t = 1.0 + c * x;
            } while (t <= 0.0);
            const double v = t * t * t;
            const double u = uniform();
            if (u < 1.0 - 0.0331 * (x * x) * (x * x)) return d * v;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
        }
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xBF58476D1CE4E5B9ull;
        z ^= z >> 27;
        z *= 0x94D049BB133111EBull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_ = 0;
    std::uint64_t inc_ = 1;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace wedgehit
