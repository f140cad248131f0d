// invariants.hpp - integer topological invariants: chiral winding in 1D,
// spectral winding about a base energy, the Chern number on the 2D torus,
// and the Chern number of iSV for chiral non-Hermitian 2D systems.
//
// Discretization: windings accumulate the phase of a determinant around the
// BZ loop, refining the grid (x2, up to 4 times) whenever a single step
// rotates the phase by pi/2 or more; the Chern number uses the plaquette
// link-variable construction, whose total flux is an exact multiple of 2 pi.
#pragma once

#include <optional>
#include <vector>

#include "topolab/bloch.hpp"
#include "topolab/symmetry.hpp"

namespace topolab {

enum class InvariantKind { winding_chiral, winding_spectral, chern, chern_isv };

std::string to_string(InvariantKind k);

struct InvariantResult {
    InvariantKind kind = InvariantKind::winding_chiral;
    int value = 0;
    double raw = 0.0;  // before rounding
    int grid_m = 0;    // per-axis nodes actually used (after refinement)
    std::optional<cxd> base_energy;
    double residual = 0.0;    // |raw - value|
    bool quantized = false;   // residual < 0.01
};

// Winding of det Q around the BZ circle, Q being the block of H(k) mapping
// the S = +1 eigenspace into the S = -1 eigenspace in the basis where
// S = diag(I, -I). Requires a Hermitian involution S that anticommutes with
// H (NotChiral otherwise) and a spectrum gapped at zero (GapClosed).
InvariantResult winding_chiral_1d(const BlochModel& model, const SymmetryOp& s, const KGrid& grid,
                                  double tol = kDefaultTol,
                                  exec::Mode mode = exec::default_mode());

// Winding of det(H(k) - E) around the loop; sums every band's winding.
InvariantResult winding_spectral_1d(const BlochModel& model, cxd base_energy, const KGrid& grid,
                                    double tol = kDefaultTol,
                                    exec::Mode mode = exec::default_mode());

// Occupied-band choice for the Chern number: everything below a real energy,
// or an explicit set of band indices (ascending eigenvalue order).
struct BandSelector {
    std::optional<double> below;
    std::vector<int> bands;

    static BandSelector below_energy(double e);
    static BandSelector explicit_bands(std::vector<int> idx);
};

// Plaquette-link Chern number of the occupied projector. Hermitian models
// only; eigenvalues within 1e-9 of the dividing energy raise GapClosed.
InvariantResult chern_2d(const BlochModel& model, const BandSelector& selector, const KGrid& grid,
                         double tol = kDefaultTol, exec::Mode mode = exec::default_mode());

// Chern number of i S V, V the polar (unitarized) factor of H(k) - E. The
// combination is checked to be Hermitian and to square to one; its negative
// eigenspace is fed to the plaquette sum.
InvariantResult chern_isv_2d(const BlochModel& model, const SymmetryOp& s, cxd base_energy,
                             const KGrid& grid, double tol = kDefaultTol,
                             exec::Mode mode = exec::default_mode());

// Total plaquette flux (in radians) of the occupied frames on an mx-by-my
// torus grid, exposed so gauge-invariance can be probed directly.
double chern_plaquette_sum(const std::vector<Mat>& occupied_frames, int mx, int my);

}  // namespace topolab
