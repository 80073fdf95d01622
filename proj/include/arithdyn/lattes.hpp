#pragma once

#include "arithdyn/elliptic.hpp"
#include "arithdyn/morphism.hpp"

#include <array>
#include <cstdint>

namespace arithdyn {

/// The degree-4 map on P^1 induced on x-coordinates by doubling on E:
/// ((x^2 - a z^2)^2 - 8b x z^3 : 4z (x^3 + a x z^2 + b z^3)).
ProjMorphism lattes_map(const WeierstrassCurve& E);

/// Quartics H_0, H_1, H_2 on P^2 whose restriction to E is doubling. Checked
/// against ec_double on points of E(F_p) for several good primes before
/// returning; a mismatch throws std::logic_error.
std::array<HomogeneousForm, 3> duplication_quartics(const WeierstrassCurve& E);

/// F_i = H_i + l_i * C, a self-map of P^2 extending doubling on E.
struct ExtensionResult {
    ProjMorphism morphism;  // F_0, F_1, F_2 with their certificate
    std::array<HomogeneousForm, 3> quartics;
    std::array<HomogeneousForm, 3> correctors;
    std::uint64_t candidates_tried = 0;
};

struct ExtendOptions {
    /// Largest absolute value of a corrector coefficient.
    int budget = 2;
    unsigned threads = 1;
};

/// Searches the linear correctors l_i in radial order: shells of increasing
/// max |coefficient|, each an odometer over the nine coefficients (l_0's x, y,
/// z first, last digit fastest) with values ordered 0, 1, -1, 2, -2, ...
/// Returns the first candidate whose forms carry a Macaulay certificate.
/// Throws BudgetExceeded when the shells up to the budget are exhausted.
ExtensionResult extend_duplication(const WeierstrassCurve& E, const ExtendOptions& opts = {});

struct GenusFeasibility {
    Rational genus;
    bool feasible = false;
};

/// Genus of the preimage of a general line under a general degree-d map of
/// P^N, by Riemann-Hurwitz for a degree d^N cover of the line simply branched
/// over d^{N-1}(N+1)(d-1) points: 2g - 2 = -2d^N + d^{N-1}(N+1)(d-1).
/// Feasible iff g >= 2.
GenusFeasibility genus_feasibility(unsigned N, unsigned d);

/// d^{N-1}(N+1)(d-1) >= 2d^N + 2, evaluated directly.
bool genus_inequality(unsigned N, unsigned d);

}  // namespace arithdyn
