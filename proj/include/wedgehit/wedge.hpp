#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "wedgehit/common.hpp"

namespace wedgehit {

enum class Parity { even, odd };

/// Dihedral wedge geometry and multiplicity data.  `index` is p for the
/// even family D2(2p) and n for the odd family D2(n); the process of
/// interest carries the effective multiplicity 1-k on every wall, and
/// hits the boundary almost surely exactly when 1-k < 1/2, i.e. k > 1/2.
struct WedgeSpec {
    Parity parity = Parity::even;
    int index = 2;
    double k = 0.75;

    /// Validated even-group spec D2(2p): p >= 2, k in (1/2, 1].
    static WedgeSpec even_group(int p, double k) {
        if (p < 2) throw std::invalid_argument("WedgeSpec: even parity requires index p >= 2");
        require_hitting_k(k);
        return WedgeSpec{Parity::even, p, k};
    }

    /// Validated odd-group spec D2(n): n odd >= 3, k in (1/2, 1].
    static WedgeSpec odd_group(int n, double k) {
        if (n < 3 || n % 2 == 0)
            throw std::invalid_argument("WedgeSpec: odd parity requires an odd index n >= 3");
        require_hitting_k(k);
        return WedgeSpec{Parity::odd, n, k};
    }

    /// Escape hatch for simulation studies of the non-hitting regime
    /// (k <= 1/2); density and transform evaluations still require
    /// k in (1/2, 1].
    static WedgeSpec unchecked(Parity parity, int index, double k) {
        if (index < 2 || !(k > 0.0))
            throw std::invalid_argument("WedgeSpec: index >= 2 and k > 0 required");
        return WedgeSpec{parity, index, k};
    }

    static void require_hitting_k(double k) {
        if (!(k > 0.5) || !(k <= 1.0))
            throw std::invalid_argument(
                "WedgeSpec: multiplicity parameter k must lie in (1/2, 1] "
                "(effective multiplicity 1-k < 1/2 makes boundary hitting almost sure)");
    }

    double nu() const { return k - 0.5; }
    double effective_multiplicity() const { return 1.0 - k; }
    bool hits_almost_surely() const { return effective_multiplicity() < 0.5; }

    /// Rotation order of the underlying group D2(fold): 2p or n.  Chamber
    /// angle, density prefactor and series all organize around it.
    int fold() const { return parity == Parity::even ? 2 * index : index; }

    double chamber_angle() const { return pi / fold(); }
    double bisector() const { return 0.5 * chamber_angle(); }

    /// Exponent of v in the density prefactor: fold * nu - 1.
    double density_power() const { return fold() * nu() - 1.0; }

    std::string label() const {
        return (parity == Parity::even ? "even p=" : "odd n=") + std::to_string(index) +
               " k=" + std::to_string(k);
    }
};

/// Starting point in polar coordinates, strictly inside the open chamber.
struct StartPoint {
    double rho = 1.0;
    double phi = 0.0;

    static StartPoint interior(const WedgeSpec& spec, double rho, double phi) {
        if (!(rho > 0.0)) throw std::invalid_argument("StartPoint: rho must be > 0");
        if (!(phi > 0.0) || !(phi < spec.chamber_angle()))
            throw std::invalid_argument("StartPoint: phi must lie strictly inside (0, pi/" +
                                        std::to_string(spec.fold()) + ")");
        return StartPoint{rho, phi};
    }

    static StartPoint bisector(const WedgeSpec& spec, double rho) {
        return interior(spec, rho, spec.bisector());
    }
};

}  // namespace wedgehit
