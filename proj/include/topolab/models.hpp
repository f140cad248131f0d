// models.hpp - the lattice zoo: staggered-hopping chains, the QWZ Chern
// insulator, non-reciprocal chains, their non-Hermitian relatives, and the
// unit-cell doubling used by the two-emitters-per-doubled-cell setups.
#pragma once

#include <map>
#include <string>
#include <vector>

#include "topolab/bloch.hpp"
#include "topolab/mediator.hpp"
#include "topolab/symmetry.hpp"

namespace topolab::zoo {

// H(k) = (v + w cos k) sx + (w sin k) sy. Chiral (S = sz), class BDI.
BlochModel ssh(double v, double w);

// H(k) = (v + w cos k) sx + w sin k (cos 2t sy + sin 2t sz), t in [0, pi/4].
// Unitarily equivalent to ssh(v, w) via U = cos t + i sin t sx; requires
// v, w > 0. At t = pi/4 the sy component vanishes (a Creutz-ladder limit).
BlochModel theta_model(double v, double w, double theta);

// H(k) = J sin kx sx + J sin ky sy + J (u + cos kx + cos ky) sz. Class A;
// Chern-nontrivial for |u| < 2.
BlochModel qwz(double u, double j = 1.0);

// Scalar H(k) = J(1+delta) e^{ik} + J(1-delta) e^{-ik} - i gamma.
BlochModel hatano_nelson(double j, double delta, double gamma);
// Default uniform loss gamma = 2 delta J, centering the spectrum at -i gamma.
BlochModel hatano_nelson(double j, double delta);

// H(k) = J sin kx sx + J sin ky sy + i J (2 cos kx + cos ky - 3). Chiral in
// the non-Hermitian sense (S = sz); the dissipative shift keeps Im E <= 0.
BlochModel chiral_nh_2d(double j);

// Two unidirectional non-reciprocal chains with opposite chiralities and a
// Hermitian rung J: H(k) = [[kappa(e^{ik} - i), J], [J, kappa(e^{-ik} - i)]].
// Emitters couple to the first chain only (projector diag(1, 0)).
BlochModel stacked_hn(double kappa, double j);
std::vector<int> stacked_hn_projector();

// The (factor * n_bands)-band model obtained by regrouping factor adjacent
// unit cells into one. Built from the real-space hopping blocks so the new
// sublattices are addressable; the spectrum at K folds the original bands:
// eig H'(K) = union over m of eig H((K + 2 pi m) / factor). 1D only.
BlochModel enlarge_cell(const BlochModel& model, int factor);

// --- catalog (the CLI / JSON vocabulary) ---------------------------------

struct CatalogEntry {
    std::string name;
    std::vector<std::pair<std::string, double>> defaults;  // ordered
    std::string summary;
};

const std::vector<CatalogEntry>& catalog();

using Params = std::map<std::string, double>;

// Builds a model by catalog name, filling absent parameters from defaults.
// Unknown names or parameter keys throw std::invalid_argument.
BlochModel make(const std::string& name, const Params& params = {});

// The symmetry operators a model family imposes by construction (empty for
// class A entries). An exhaustive Pauli search may additionally turn up
// accidental constraints of a specific parametrization; these declared sets
// are what classification of the family means.
std::vector<SymmetryOp> physical_symmetries(const std::string& name, const Params& params = {});

// Band-center energy the resolvent should be referenced to when on resonance
// (0 for the Hermitian entries, the uniform-loss point for the lossy ones).
cxd default_base_energy(const std::string& name, const Params& params = {});

// --- doubled-cell emitter arrangements -----------------------------------

// The doubled theta-model cell hosts two inequivalent two-emitter patterns:
// on_cell couples both emitters to one intracell dimer, cell_breaking couples
// them to the pair straddling the w bond inside the doubled cell.
struct ThetaLab {
    BlochModel bath;  // 4 bands
    EmitterLayout on_cell;
    EmitterLayout cell_breaking;
};

ThetaLab make_theta_lab(double v, double w, double theta, cxd omega_e, double g,
                        int stripe_d = 0);

BlochModel theta_on_cell_effective(const ThetaLab& lab);
// Mediated two-band model in chain order, so its sublattice roles line up
// with the ssh convention above.
BlochModel theta_cell_breaking_effective(const ThetaLab& lab);

}  // namespace topolab::zoo
