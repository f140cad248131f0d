// realspace.hpp - finite-lattice builder and diagnostics: open/periodic/ribbon
// boundary conditions, emitter stripes, sector classification, edge and skin
// localization measures.
#pragma once

#include <array>
#include <optional>
#include <vector>

#include "topolab/bloch.hpp"
#include "topolab/mediator.hpp"

namespace topolab {

enum class Sector { photonic, atomic };
enum class BC { open, periodic };

struct Site {
    std::array<int, 2> cell{0, 0};
    int sublattice = 0;
    Sector sector = Sector::photonic;
    std::array<double, 2> position{0.0, 0.0};  // unit-cell units
};

// Single-excitation Hamiltonian of a finite lattice, photonic sites first,
// atomic sites (when attached) after them. Immutable after construction.
struct RealSpaceSystem {
    Mat hamiltonian;
    std::vector<Site> sites;
    int dim = 1;
    std::array<int, 2> n_cells{1, 1};
    std::array<BC, 2> bc{BC::open, BC::open};
    std::optional<EmitterLayout> layout;
    int n_photonic = 0;

    std::vector<int> sector_indices(Sector s) const;
};

// Real-space bath from the inverse Fourier transform of the Bloch matrix.
// Periodic axes wrap, open axes truncate. Throws InfiniteRange when the
// hopping blocks do not truncate (mediated models).
RealSpaceSystem build_bath(const BlochModel& model, std::array<int, 2> n_cells,
                           std::array<BC, 2> bc);

// Appends one emitter per (cell, sublattice) selected by the projector,
// skipping stripe_d cells at both ends of every axis; emitters sit at
// omega_e and couple to their resonator with amplitude g.
RealSpaceSystem attach_emitters(const RealSpaceSystem& bath, const EmitterLayout& layout);

struct SpectrumWithSectors {
    CVec energies;
    Mat right_vectors;  // columns, normalized
    std::vector<Sector> sector;
    std::vector<double> atomic_weight;  // per state, in [0, 1]
};

// Dense diagonalization; a state is ATOMIC when more than half of its weight
// sits on atomic sites.
SpectrumWithSectors spectrum_with_sectors(const RealSpaceSystem& system);

struct ModeProfile {
    std::vector<double> weights;  // per site of the chosen sector, sums to 1
    std::vector<cxd> state_energies;
};

// Per-site weight averaged over every (right) eigenstate of the sector.
ModeProfile skin_profile(const RealSpaceSystem& system, Sector sector);
ModeProfile skin_profile(const RealSpaceSystem& system, const SpectrumWithSectors& spectrum,
                         Sector sector);

// (<x> - center) / half-extent along the axis: +1 right boundary, -1 left,
// ~0 delocalized. Weights need not be normalized; positions set the extent.
double localization_score(const std::vector<double>& weights,
                          const std::vector<double>& positions);

// Convenience: score of one eigenstate over the sites of a sector (weights
// renormalized within the sector), measured along the given axis.
double state_localization_score(const RealSpaceSystem& system, const CVec& state, Sector sector,
                                int axis = 0);

// A (near-)degenerate multiplet diagonalizes the Hamiltonian only up to an
// arbitrary rotation, so boundary pairs come out as even/odd superpositions.
// Rotating the multiplet to diagonalize the position operator recovers the
// individually localized states. Columns of `states` are the multiplet.
Mat position_localized_combinations(const RealSpaceSystem& system, const Mat& states,
                                    int axis = 0);

struct RibbonState {
    double ky = 0.0;
    cxd energy{0.0, 0.0};
    double score = 0.0;  // along the open axis, over all sites
    Sector sector = Sector::photonic;
};

// Cylinder spectrum of a 2D model: open along x (l_cells unit cells),
// momentum ky along y on an odd uniform grid. Emitters follow the layout
// with stripes of width stripe_d along x.
std::vector<RibbonState> ribbon_spectrum(const BlochModel& model2d, const EmitterLayout& layout,
                                         int l_cells, int ky_nodes = 101,
                                         exec::Mode mode = exec::default_mode());
// Bare-bath variant (no emitters attached).
std::vector<RibbonState> ribbon_spectrum(const BlochModel& model2d, int l_cells,
                                         int ky_nodes = 101,
                                         exec::Mode mode = exec::default_mode());

// omega_e + g^2 (omega_e - H_bath)^-1 restricted to the given sites of a
// finite bath, via direct linear solves.
Mat effective_atomic_realspace(const RealSpaceSystem& bath, const std::vector<int>& emitter_sites,
                               cxd omega_e, double g);

}  // namespace topolab
