#include "topolab/mediator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "topolab/errors.hpp"

namespace topolab {

EmitterLayout::EmitterLayout(std::vector<int> pi, cxd omega, double g_, int stripe)
    : pi_diagonal(std::move(pi)), omega_e(omega), g(g_), stripe_d(stripe) {
    if (pi_diagonal.empty()) throw std::invalid_argument("EmitterLayout: empty projector");
    int ones = 0;
    for (int p : pi_diagonal) {
        if (p != 0 && p != 1)
            throw std::invalid_argument("EmitterLayout: projector entries must be 0 or 1");
        ones += p;
    }
    if (ones == 0) throw std::invalid_argument("EmitterLayout: projector selects no sublattice");
    if (g <= 0.0) throw std::invalid_argument("EmitterLayout: coupling g must be positive");
    if (stripe_d < 0) throw std::invalid_argument("EmitterLayout: stripe width must be >= 0");
}

EmitterLayout EmitterLayout::full(int n_bands, cxd omega, double g, int stripe) {
    return EmitterLayout(std::vector<int>(n_bands, 1), omega, g, stripe);
}

int EmitterLayout::rank() const {
    int r = 0;
    for (int p : pi_diagonal) r += p;
    return r;
}

bool EmitterLayout::is_full() const { return rank() == static_cast<int>(pi_diagonal.size()); }

std::vector<int> EmitterLayout::selected() const {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(pi_diagonal.size()); ++i)
        if (pi_diagonal[i]) idx.push_back(i);
    return idx;
}

namespace {

// (omega - H)^-1 with an explicit smallest-singular-value guard.
Mat guarded_resolvent(const Mat& h, cxd omega, double tol, const Kv& k) {
    const Mat a = omega * Mat::Identity(h.rows(), h.cols()) - h;
    Eigen::JacobiSVD<Mat> svd(a);
    if (svd.singularValues().minCoeff() < tol) {
        std::ostringstream msg;
        msg << "resolvent singular at k = (" << k[0] << ", " << k[1] << ")";
        throw ResolventSingular(msg.str());
    }
    return a.partialPivLu().solve(Mat::Identity(h.rows(), h.cols()));
}

}  // namespace

BlochModel effective_bloch(const BlochModel& bath, const EmitterLayout& layout, double tol,
                           std::optional<double> gap_distance) {
    if (static_cast<int>(layout.pi_diagonal.size()) != bath.n_bands)
        throw LayoutMismatch("effective_bloch: projector length differs from bath bands");

    const std::vector<int> sel = layout.selected();
    BlochModel out;
    out.dim = bath.dim;
    out.n_bands = static_cast<int>(sel.size());
    out.name = bath.name + "_mediated";
    const bool bath_herm = is_hermitian(bath);
    out.hermitian_hint = bath_herm && std::abs(layout.omega_e.imag()) < 1e-14;
    if (gap_distance && layout.g > 0.5 * *gap_distance)
        out.warning = "coupling g exceeds half the gap distance; the weak-coupling picture of "
                      "the mediated model may not apply";

    out.eval = [bath_eval = bath.eval, omega = layout.omega_e, g = layout.g, sel, tol,
                n = bath.n_bands](const Kv& k) {
        const Mat resolvent = guarded_resolvent(bath_eval(k), omega, tol, k);
        const Mat full = omega * Mat::Identity(n, n) + g * g * resolvent;
        Mat block(sel.size(), sel.size());
        for (std::size_t i = 0; i < sel.size(); ++i)
            for (std::size_t j = 0; j < sel.size(); ++j) block(i, j) = full(sel[i], sel[j]);
        return block;
    };
    return out;
}

BlochModel full_bloch(const BlochModel& bath, const EmitterLayout& layout) {
    if (static_cast<int>(layout.pi_diagonal.size()) != bath.n_bands)
        throw LayoutMismatch("full_bloch: projector length differs from bath bands");
    if (!layout.is_full())
        throw UnsupportedLayout("full_bloch: requires one emitter per sublattice (Pi = I)");

    BlochModel out;
    out.dim = bath.dim;
    out.n_bands = 2 * bath.n_bands;
    out.name = bath.name + "_full";
    out.hermitian_hint =
        is_hermitian(bath) && std::abs(layout.omega_e.imag()) < 1e-14;
    out.eval = [bath_eval = bath.eval, omega = layout.omega_e, g = layout.g,
                n = bath.n_bands](const Kv& k) {
        Mat h = Mat::Zero(2 * n, 2 * n);
        h.topLeftCorner(n, n) = omega * Mat::Identity(n, n);
        h.topRightCorner(n, n) = g * Mat::Identity(n, n);
        h.bottomLeftCorner(n, n) = g * Mat::Identity(n, n);
        h.bottomRightCorner(n, n) = bath_eval(k);
        return h;
    };
    return out;
}

DeformationCertificate deformation_gap_certificate(const BlochModel& bath,
                                                   const EmitterLayout& layout, const KGrid& grid,
                                                   int lambda_steps, double rtol,
                                                   exec::Mode mode) {
    if (!layout.is_full())
        throw UnsupportedLayout("deformation_gap_certificate: requires Pi = I");
    if (lambda_steps < 2)
        throw std::invalid_argument("deformation_gap_certificate: need at least 2 lambda steps");

    const int n = bath.n_bands;
    const cxd expected = std::pow(cxd(-layout.g * layout.g, 0.0), n);
    const BlochModel full = full_bloch(bath, layout);

    // k-independent endpoint: omega_e + g sigma_x acting on the atom/photon blocks
    Mat h1 = Mat::Zero(2 * n, 2 * n);
    h1.topLeftCorner(n, n) = layout.omega_e * Mat::Identity(n, n);
    h1.bottomRightCorner(n, n) = layout.omega_e * Mat::Identity(n, n);
    h1.topRightCorner(n, n) = layout.g * Mat::Identity(n, n);
    h1.bottomLeftCorner(n, n) = layout.g * Mat::Identity(n, n);

    const std::size_t nk = grid.size();
    std::vector<double> worst(nk, 0.0);
    std::vector<double> worst_lambda(nk, 0.0);

    exec::parallel_for(nk, mode, [&](std::size_t i) {
        const Kv k = grid.node(i);
        const Mat h0 = full.eval(k);
        for (int s = 0; s < lambda_steps; ++s) {
            const double lambda = static_cast<double>(s) / (lambda_steps - 1);
            const Mat hl = (1.0 - lambda) * h0 + lambda * h1 -
                           layout.omega_e * Mat::Identity(2 * n, 2 * n);
            const cxd det = hl.determinant();
            double rel = std::abs(det - expected) / std::abs(expected);
            if (!std::isfinite(rel)) rel = std::numeric_limits<double>::infinity();
            if (rel > worst[i]) {
                worst[i] = rel;
                worst_lambda[i] = lambda;
            }
        }
    });

    DeformationCertificate cert;
    cert.expected_det = expected;
    cert.lambda_steps = lambda_steps;
    for (std::size_t i = 0; i < nk; ++i) {
        if (worst[i] > cert.worst_rel_error) {
            cert.worst_rel_error = worst[i];
            cert.worst_k = grid.node(i);
            cert.worst_lambda = worst_lambda[i];
        }
    }
    cert.passed = cert.worst_rel_error <= rtol;
    if (!cert.passed) {
        std::ostringstream msg;
        msg << "determinant identity violated: relative error " << cert.worst_rel_error
            << " at k = (" << cert.worst_k[0] << ", " << cert.worst_k[1] << "), lambda = "
            << cert.worst_lambda;
        throw CertificateFailed(msg.str());
    }
    return cert;
}

Mat mediated_couplings_realspace(const BlochModel& bath, const EmitterLayout& layout, int n_cells,
                                 exec::Mode mode) {
    if (bath.dim != 1)
        throw std::invalid_argument("mediated_couplings_realspace: 1D baths only");
    if (static_cast<int>(layout.pi_diagonal.size()) != bath.n_bands)
        throw LayoutMismatch("mediated_couplings_realspace: projector length mismatch");
    if (n_cells < 2) throw std::invalid_argument("mediated_couplings_realspace: n_cells >= 2");

    const std::vector<int> sel = layout.selected();
    const int r = static_cast<int>(sel.size());
    const int n = bath.n_bands;

    // projected resolvent at each of the n_cells commensurate nodes
    std::vector<Mat> res(n_cells);
    exec::parallel_for(static_cast<std::size_t>(n_cells), mode, [&](std::size_t i) {
        const Kv k{kTwoPi * static_cast<double>(i) / n_cells, 0.0};
        const Mat inv = guarded_resolvent(bath.eval(k), layout.omega_e, 1e-12, k);
        Mat block(r, r);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b) block(a, b) = inv(sel[a], sel[b]);
        res[i] = block;
    });
    (void)n;

    // hopping block at cell offset d: t(d) = (g^2/N) sum_k e^{+i k d} R(k)
    std::vector<Mat> t(n_cells, Mat::Zero(r, r));
    for (int d = 0; d < n_cells; ++d) {
        Mat acc = Mat::Zero(r, r);
        for (int i = 0; i < n_cells; ++i) {
            const double phase = kTwoPi * static_cast<double>(i) * d / n_cells;
            acc += std::exp(cxd(0.0, phase)) * res[i];
        }
        t[d] = (layout.g * layout.g / n_cells) * acc;
    }

    Mat h = Mat::Zero(n_cells * r, n_cells * r);
    for (int cn = 0; cn < n_cells; ++cn)
        for (int cm = 0; cm < n_cells; ++cm) {
            const int d = ((cm - cn) % n_cells + n_cells) % n_cells;
            h.block(cn * r, cm * r, r, r) = t[d];
        }
    return h;
}

}  // namespace topolab
