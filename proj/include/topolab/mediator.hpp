// mediator.hpp - the photon-to-atom map: bath-mediated effective models via
// the bath resolvent, the full atom-light Bloch Hamiltonian, real-space
// mediated couplings, and the full-system triviality certificate.
#pragma once

#include <optional>
#include <vector>

#include "topolab/bloch.hpp"

namespace topolab {

// Emitter arrangement: which sublattices carry an emitter (projector
// diagonal), the emitter frequency, the coupling, and the width in unit
// cells of the emitter-free boundary stripes used by real-space builds.
struct EmitterLayout {
    std::vector<int> pi_diagonal;  // 0/1 per bath sublattice, at least one 1
    cxd omega_e{0.0, 0.0};
    double g = 0.1;  // > 0
    int stripe_d = 0;

    EmitterLayout(std::vector<int> pi, cxd omega, double g_, int stripe = 0);
    static EmitterLayout full(int n_bands, cxd omega, double g, int stripe = 0);

    int rank() const;
    bool is_full() const;
    std::vector<int> selected() const;  // indices of the 1 entries, ascending
};

// k |-> Pi (omega_e + g^2 (omega_e - H_p(k))^-1) Pi restricted to the
// rank(Pi) selected sublattices. Evaluation throws ResolventSingular when the
// smallest singular value of (omega_e - H_p(k)) falls below tol.
//
// The formula is exact for any gapped bath; callers are expected to have run
// gap_check. When the gap distance is supplied and g exceeds half of it, a
// warning is attached to the returned model.
BlochModel effective_bloch(const BlochModel& bath, const EmitterLayout& layout,
                           double tol = 1e-12,
                           std::optional<double> gap_distance = std::nullopt);

// [[omega_e I, g I], [g I, H_p(k)]], atomic block first. Requires Pi = I.
BlochModel full_bloch(const BlochModel& bath, const EmitterLayout& layout);

struct DeformationCertificate {
    bool passed = false;
    double worst_rel_error = 0.0;
    Kv worst_k{0.0, 0.0};
    double worst_lambda = 0.0;
    cxd expected_det{0.0, 0.0};
    int lambda_steps = 0;
};

// Deforms the full Hamiltonian linearly onto the k-independent endpoint
// omega_e + g sigma_x (x) I and verifies det(H_lambda(k) - omega_e) equals
// (-g^2)^{n_bands} at every (k, lambda) node. Throws CertificateFailed with
// the worst offender when the relative error exceeds rtol.
DeformationCertificate deformation_gap_certificate(const BlochModel& bath,
                                                   const EmitterLayout& layout, const KGrid& grid,
                                                   int lambda_steps = 11, double rtol = 1e-8,
                                                   exec::Mode mode = exec::default_mode());

// Mediated couplings on a periodic ring of n_cells unit cells:
//   h[(n,s),(m,s')] = g^2 (1/N) sum_k e^{i k (r_m - r_n)} [(omega_e - H_p(k))^-1]_{ss'}
// restricted to emitter sublattices. The Bloch sum uses exactly n_cells
// nodes, making this the exact discrete Fourier pair of effective_bloch.
// Returned matrix is (n_cells * rank) square, cell-major.
Mat mediated_couplings_realspace(const BlochModel& bath, const EmitterLayout& layout, int n_cells,
                                 exec::Mode mode = exec::default_mode());

}  // namespace topolab
