#include "topolab/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "topolab/errors.hpp"

namespace topolab {

std::string to_string(InvariantKind k) {
    switch (k) {
        case InvariantKind::winding_chiral: return "winding_chiral";
        case InvariantKind::winding_spectral: return "winding_spectral";
        case InvariantKind::chern: return "chern";
        case InvariantKind::chern_isv: return "chern_isv";
    }
    return "?";
}

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxRefinements = 4;
constexpr double kQuantizationTol = 0.01;

InvariantResult finish(InvariantKind kind, double raw, int grid_m, std::optional<cxd> base) {
    InvariantResult r;
    r.kind = kind;
    r.raw = raw;
    r.value = static_cast<int>(std::lround(raw));
    r.grid_m = grid_m;
    r.base_energy = base;
    r.residual = std::abs(raw - r.value);
    r.quantized = r.residual < kQuantizationTol;
    return r;
}

// Phase of f(k) accumulated over the loop k = 0..2pi, in turns. Refines the
// grid whenever one step advances the phase by >= pi/2; a persistent jump
// after kMaxRefinements signals a closing gap. f guards its own zeros.
double accumulated_phase_turns(const std::function<cxd(double)>& f, int m0, int* m_used,
                               exec::Mode mode, const char* gap_error) {
    int m = m0;
    for (int refine = 0; refine <= kMaxRefinements; ++refine, m *= 2) {
        std::vector<cxd> vals(m);
        exec::parallel_for(static_cast<std::size_t>(m), mode,
                           [&](std::size_t i) { vals[i] = f(kTwoPi * static_cast<double>(i) / m); });
        bool ok = true;
        double total = 0.0;
        for (int i = 0; i < m; ++i) {
            const double step = std::arg(vals[(i + 1) % m] / vals[i]);
            if (std::abs(step) >= 0.5 * kPi) {
                ok = false;
                break;
            }
            total += step;
        }
        if (ok) {
            if (m_used) *m_used = m;
            return total / kTwoPi;
        }
    }
    throw PointGapClosed(gap_error);
}

}  // namespace

InvariantResult winding_chiral_1d(const BlochModel& model, const SymmetryOp& s, const KGrid& grid,
                                  double tol, exec::Mode mode) {
    if (model.dim != 1)
        throw std::invalid_argument("winding_chiral_1d: 1D models only");
    if (s.unitary.rows() != model.n_bands)
        throw std::invalid_argument("winding_chiral_1d: operator dimension mismatch");
    const Mat& u = s.unitary;
    if ((u - u.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
        (u * u - Mat::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() > 1e-10)
        throw NotChiral("winding_chiral_1d: S must be a Hermitian involution");
    if (!check_symmetry(model, s, grid, tol, mode))
        throw NotChiral("winding_chiral_1d: model does not anticommute with S");

    // basis where S = diag(I, -I)
    Eigen::SelfAdjointEigenSolver<Mat> es(u);
    Mat plus(u.rows(), 0), minus(u.rows(), 0);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        Mat& side = es.eigenvalues()[i] > 0 ? plus : minus;
        side.conservativeResize(u.rows(), side.cols() + 1);
        side.col(side.cols() - 1) = es.eigenvectors().col(i);
    }
    if (plus.cols() != minus.cols())
        throw NotChiral("winding_chiral_1d: S eigenspaces have unequal dimension");

    auto det_q = [&, plus, minus](double k) -> cxd {
        const Mat h = model.eval({k, 0.0});
        const Mat q = minus.adjoint() * h * plus;  // maps +1 eigenspace into -1 rows
        Eigen::JacobiSVD<Mat> svd(q);
        if (svd.singularValues().minCoeff() < tol)
            throw GapClosed("winding_chiral_1d: spectrum touches zero");
        return q.determinant();
    };

    int m_used = grid.m;
    const double raw = accumulated_phase_turns(det_q, grid.m, &m_used, mode,
                                               "winding_chiral_1d: gap too small to resolve");
    return finish(InvariantKind::winding_chiral, raw, m_used, std::nullopt);
}

InvariantResult winding_spectral_1d(const BlochModel& model, cxd base_energy, const KGrid& grid,
                                    double tol, exec::Mode mode) {
    if (model.dim != 1)
        throw std::invalid_argument("winding_spectral_1d: 1D models only");
    const int n = model.n_bands;
    auto det_shifted = [&, n](double k) {
        const Mat h = model.eval({k, 0.0}) - base_energy * Mat::Identity(n, n);
        Eigen::JacobiSVD<Mat> svd(h);
        if (svd.singularValues().minCoeff() < tol)
            throw PointGapClosed("winding_spectral_1d: spectrum touches the base energy");
        return h.determinant();
    };
    int m_used = grid.m;
    const double raw =
        accumulated_phase_turns(det_shifted, grid.m, &m_used, mode,
                                "winding_spectral_1d: point gap too small to resolve");
    return finish(InvariantKind::winding_spectral, raw, m_used, base_energy);
}

BandSelector BandSelector::below_energy(double e) {
    BandSelector s;
    s.below = e;
    return s;
}

BandSelector BandSelector::explicit_bands(std::vector<int> idx) {
    BandSelector s;
    s.bands = std::move(idx);
    return s;
}

double chern_plaquette_sum(const std::vector<Mat>& occ, int mx, int my) {
    if (static_cast<int>(occ.size()) != mx * my)
        throw std::invalid_argument("chern_plaquette_sum: frame count mismatch");
    auto at = [&](int ix, int iy) -> const Mat& {
        ix = (ix % mx + mx) % mx;
        iy = (iy % my + my) % my;
        return occ[static_cast<std::size_t>(ix) + static_cast<std::size_t>(iy) * mx];
    };
    auto link = [&](int ix, int iy, int dx, int dy) {
        const cxd det = (at(ix, iy).adjoint() * at(ix + dx, iy + dy)).determinant();
        if (std::abs(det) < 1e-14)
            throw GapClosed("chern_plaquette_sum: singular link overlap");
        return det / std::abs(det);
    };
    double total = 0.0;
    for (int ix = 0; ix < mx; ++ix)
        for (int iy = 0; iy < my; ++iy) {
            const cxd loop = link(ix, iy, 1, 0) * link(ix + 1, iy, 0, 1) /
                             (link(ix, iy + 1, 1, 0) * link(ix, iy, 0, 1));
            total += std::arg(loop);
        }
    return total;
}

namespace {

InvariantResult chern_of_frames(InvariantKind kind, const std::vector<Mat>& occ, int m,
                                std::optional<cxd> base) {
    const double raw = chern_plaquette_sum(occ, m, m) / kTwoPi;
    return finish(kind, raw, m, base);
}

}  // namespace

InvariantResult chern_2d(const BlochModel& model, const BandSelector& selector, const KGrid& grid,
                         double tol, exec::Mode mode) {
    if (model.dim != 2) throw std::invalid_argument("chern_2d: 2D models only");
    if (!is_hermitian(model, tol))
        throw NonHermitianInput("chern_2d: model is not Hermitian");
    if (!selector.below.has_value() && selector.bands.empty())
        throw std::invalid_argument("chern_2d: empty band selection");

    constexpr double kDegeneracyTol = 1e-9;
    const int m = grid.m;
    const std::size_t nodes = static_cast<std::size_t>(m) * m;
    std::vector<Mat> occ(nodes);
    std::vector<int> n_occ(nodes, 0);
    std::vector<int> bad(nodes, 0);

    exec::parallel_for(nodes, mode, [&](std::size_t i) {
        const int ix = static_cast<int>(i % m);
        const int iy = static_cast<int>(i / m);
        Eigen::SelfAdjointEigenSolver<Mat> es(model.eval({kTwoPi * ix / m, kTwoPi * iy / m}));
        const auto& vals = es.eigenvalues();
        std::vector<int> idx;
        if (selector.below.has_value()) {
            for (int b = 0; b < vals.size(); ++b) {
                if (std::abs(vals[b] - *selector.below) < kDegeneracyTol) {
                    bad[i] = 1;
                    return;
                }
                if (vals[b] < *selector.below) idx.push_back(b);
            }
        } else {
            idx = selector.bands;
            for (int b : idx)
                if (b < 0 || b >= vals.size()) {
                    bad[i] = 2;
                    return;
                }
        }
        Mat frame(model.n_bands, idx.size());
        for (std::size_t c = 0; c < idx.size(); ++c) frame.col(c) = es.eigenvectors().col(idx[c]);
        occ[i] = frame;
        n_occ[i] = static_cast<int>(idx.size());
    });

    for (std::size_t i = 0; i < nodes; ++i) {
        if (bad[i] == 1) throw GapClosed("chern_2d: eigenvalue degenerate with the dividing energy");
        if (bad[i] == 2) throw std::invalid_argument("chern_2d: band index out of range");
        if (n_occ[i] != n_occ[0]) throw GapClosed("chern_2d: occupied rank varies over the zone");
    }
    if (n_occ[0] == 0 || n_occ[0] == model.n_bands)
        return finish(InvariantKind::chern, 0.0, m,
                      selector.below ? std::optional<cxd>(cxd(*selector.below, 0.0)) : std::nullopt);
    return chern_of_frames(InvariantKind::chern, occ, m,
                           selector.below ? std::optional<cxd>(cxd(*selector.below, 0.0))
                                          : std::nullopt);
}

InvariantResult chern_isv_2d(const BlochModel& model, const SymmetryOp& s, cxd base_energy,
                             const KGrid& grid, double tol, exec::Mode mode) {
    if (model.dim != 2) throw std::invalid_argument("chern_isv_2d: 2D models only");
    if (s.unitary.rows() != model.n_bands)
        throw std::invalid_argument("chern_isv_2d: operator dimension mismatch");

    // chiral constraint relative to the base energy: S (H-E)^dag S^-1 = -(H-E)
    const BlochModel shifted{
        model.dim, model.n_bands, model.name + "_shifted", model.hermitian_hint, "",
        [base = model.eval, base_energy, n = model.n_bands](const Kv& k) {
            return (base(k) - base_energy * Mat::Identity(n, n)).eval();
        }};
    SymmetryOp nh_chiral(s.unitary, SymFlavor::chiral, SymVariant::nh_az);
    if (!check_symmetry(shifted, nh_chiral, grid, std::max(tol, 1e-8), mode))
        throw NotChiral("chern_isv_2d: model is not chiral about the base energy");

    const int m = grid.m;
    const std::size_t nodes = static_cast<std::size_t>(m) * m;
    std::vector<Mat> occ(nodes);
    std::vector<int> n_occ(nodes, 0);
    std::vector<int> bad(nodes, 0);
    const cxd unit_i(0.0, 1.0);

    exec::parallel_for(nodes, mode, [&](std::size_t i) {
        const int ix = static_cast<int>(i % m);
        const int iy = static_cast<int>(i / m);
        const Mat a = shifted.eval({kTwoPi * ix / m, kTwoPi * iy / m});
        Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
        if (svd.singularValues().minCoeff() < tol) {
            bad[i] = 1;
            return;
        }
        const Mat v = svd.matrixU() * svd.matrixV().adjoint();
        const Mat w = unit_i * s.unitary * v;
        const Mat id = Mat::Identity(w.rows(), w.cols());
        if ((w - w.adjoint()).cwiseAbs().maxCoeff() > 1e-8 ||
            (w * w - id).cwiseAbs().maxCoeff() > 1e-8) {
            bad[i] = 2;
            return;
        }
        Eigen::SelfAdjointEigenSolver<Mat> es(w);
        Mat frame(w.rows(), 0);
        for (int b = 0; b < es.eigenvalues().size(); ++b)
            if (es.eigenvalues()[b] < 0.0) {
                frame.conservativeResize(w.rows(), frame.cols() + 1);
                frame.col(frame.cols() - 1) = es.eigenvectors().col(b);
            }
        occ[i] = frame;
        n_occ[i] = static_cast<int>(frame.cols());
    });

    for (std::size_t i = 0; i < nodes; ++i) {
        if (bad[i] == 1) throw PointGapClosed("chern_isv_2d: point gap closes at a grid node");
        if (bad[i] == 2)
            throw UnitarizationFailed("chern_isv_2d: iSV is not a Hermitian involution");
        if (n_occ[i] != n_occ[0])
            throw UnitarizationFailed("chern_isv_2d: iSV eigenspace rank varies over the zone");
    }
    if (n_occ[0] == 0 || n_occ[0] == model.n_bands)
        return finish(InvariantKind::chern_isv, 0.0, m, base_energy);
    return chern_of_frames(InvariantKind::chern_isv, occ, m, base_energy);
}

}  // namespace topolab
