#include "topolab/realspace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "topolab/errors.hpp"

namespace topolab {

std::vector<int> RealSpaceSystem::sector_indices(Sector s) const {
    std::vector<int> idx;
    for (int i = 0; i < static_cast<int>(sites.size()); ++i)
        if (sites[i].sector == s) idx.push_back(i);
    return idx;
}

RealSpaceSystem build_bath(const BlochModel& model, std::array<int, 2> n_cells,
                           std::array<BC, 2> bc) {
    if (model.dim == 1) n_cells[1] = 1;
    if (n_cells[0] < 1 || (model.dim == 2 && n_cells[1] < 1))
        throw std::invalid_argument("build_bath: need at least one cell per axis");

    const HoppingTable table = extract_hoppings(model);
    for (int axis = 0; axis < model.dim; ++axis) {
        if (bc[axis] == BC::periodic && n_cells[axis] > 1 &&
            n_cells[axis] < 2 * table.range[axis] + 1)
            throw std::invalid_argument("build_bath: periodic axis shorter than hopping range");
    }

    const int nb = model.n_bands;
    const int nx = n_cells[0];
    const int ny = model.dim == 2 ? n_cells[1] : 1;
    const int n_sites = nx * ny * nb;

    RealSpaceSystem sys;
    sys.dim = model.dim;
    sys.n_cells = {nx, ny};
    sys.bc = bc;
    sys.n_photonic = n_sites;
    sys.hamiltonian = Mat::Zero(n_sites, n_sites);
    sys.sites.resize(n_sites);

    auto site_index = [&](int cx, int cy, int s) { return (cx + cy * nx) * nb + s; };
    for (int cy = 0; cy < ny; ++cy)
        for (int cx = 0; cx < nx; ++cx)
            for (int s = 0; s < nb; ++s) {
                Site& site = sys.sites[site_index(cx, cy, s)];
                site.cell = {cx, cy};
                site.sublattice = s;
                site.sector = Sector::photonic;
                site.position = {cx + static_cast<double>(s) / nb, static_cast<double>(cy)};
            }

    // place each hopping block from every source cell, wrapping or dropping
    // the target according to the boundary conditions
    for (int cy = 0; cy < ny; ++cy)
        for (int cx = 0; cx < nx; ++cx)
            for (const auto& [off, block] : table.blocks) {
                int tx = cx + off[0];
                int ty = cy + off[1];
                if (bc[0] == BC::periodic)
                    tx = (tx % nx + nx) % nx;
                else if (tx < 0 || tx >= nx)
                    continue;
                if (model.dim == 2) {
                    if (bc[1] == BC::periodic)
                        ty = (ty % ny + ny) % ny;
                    else if (ty < 0 || ty >= ny)
                        continue;
                } else {
                    ty = 0;
                }
                sys.hamiltonian.block(site_index(cx, cy, 0), site_index(tx, ty, 0), nb, nb) +=
                    block;
            }
    return sys;
}

RealSpaceSystem attach_emitters(const RealSpaceSystem& bath, const EmitterLayout& layout) {
    const int nb = bath.n_photonic / (bath.n_cells[0] * bath.n_cells[1]);
    if (static_cast<int>(layout.pi_diagonal.size()) != nb)
        throw LayoutMismatch("attach_emitters: projector length differs from bath sublattices");
    for (int axis = 0; axis < bath.dim; ++axis)
        if (layout.stripe_d > bath.n_cells[axis] / 2)
            throw LayoutMismatch("attach_emitters: stripes wider than half the lattice");

    const int d = layout.stripe_d;
    auto in_stripe = [&](const std::array<int, 2>& cell) {
        for (int axis = 0; axis < bath.dim; ++axis)
            if (cell[axis] < d || cell[axis] >= bath.n_cells[axis] - d) return true;
        return false;
    };

    std::vector<int> hosts;  // photonic site index carrying each emitter
    for (int i = 0; i < bath.n_photonic; ++i) {
        const Site& site = bath.sites[i];
        if (!layout.pi_diagonal[site.sublattice]) continue;
        if (in_stripe(site.cell)) continue;
        hosts.push_back(i);
    }
    if (hosts.empty()) throw LayoutMismatch("attach_emitters: no emitters left after stripes");

    const int n_old = bath.n_photonic;
    const int n_new = n_old + static_cast<int>(hosts.size());
    RealSpaceSystem sys = bath;
    sys.layout = layout;
    sys.hamiltonian = Mat::Zero(n_new, n_new);
    sys.hamiltonian.topLeftCorner(n_old, n_old) = bath.hamiltonian;
    for (int e = 0; e < static_cast<int>(hosts.size()); ++e) {
        const int a = n_old + e;
        sys.hamiltonian(a, a) = layout.omega_e;
        sys.hamiltonian(a, hosts[e]) = layout.g;
        sys.hamiltonian(hosts[e], a) = layout.g;
        Site site = bath.sites[hosts[e]];
        site.sector = Sector::atomic;
        sys.sites.push_back(site);
    }
    return sys;
}

SpectrumWithSectors spectrum_with_sectors(const RealSpaceSystem& system) {
    const Mat& h = system.hamiltonian;
    const bool herm = (h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-12;

    SpectrumWithSectors out;
    if (herm) {
        Eigen::SelfAdjointEigenSolver<Mat> es(h);
        if (es.info() != Eigen::Success)
            throw Error("spectrum_with_sectors: eigensolver failed");
        out.energies = es.eigenvalues().cast<cxd>();
        out.right_vectors = es.eigenvectors();
    } else {
        Eigen::ComplexEigenSolver<Mat> es(h, true);
        if (es.info() != Eigen::Success)
            throw Error("spectrum_with_sectors: eigensolver failed");
        out.energies = es.eigenvalues();
        out.right_vectors = es.eigenvectors();
        for (int c = 0; c < out.right_vectors.cols(); ++c)
            out.right_vectors.col(c).normalize();
    }

    const int n = static_cast<int>(system.sites.size());
    out.sector.resize(n);
    out.atomic_weight.resize(n);
    for (int c = 0; c < n; ++c) {
        double atomic = 0.0;
        for (int i = 0; i < n; ++i)
            if (system.sites[i].sector == Sector::atomic)
                atomic += std::norm(out.right_vectors(i, c));
        out.atomic_weight[c] = atomic;
        out.sector[c] = atomic > 0.5 ? Sector::atomic : Sector::photonic;
    }
    return out;
}

ModeProfile skin_profile(const RealSpaceSystem& system, const SpectrumWithSectors& spectrum,
                         Sector sector) {
    const std::vector<int> sites = system.sector_indices(sector);
    if (sites.empty()) throw EmptySector("skin_profile: sector has no sites");

    ModeProfile profile;
    profile.weights.assign(sites.size(), 0.0);
    int n_states = 0;
    for (int c = 0; c < spectrum.energies.size(); ++c) {
        if (spectrum.sector[c] != sector) continue;
        ++n_states;
        profile.state_energies.push_back(spectrum.energies[c]);
        for (std::size_t j = 0; j < sites.size(); ++j)
            profile.weights[j] += std::norm(spectrum.right_vectors(sites[j], c));
    }
    if (n_states == 0) throw EmptySector("skin_profile: sector has no eigenstates");
    double total = 0.0;
    for (double w : profile.weights) total += w;
    for (double& w : profile.weights) w /= total;
    return profile;
}

ModeProfile skin_profile(const RealSpaceSystem& system, Sector sector) {
    return skin_profile(system, spectrum_with_sectors(system), sector);
}

double localization_score(const std::vector<double>& weights,
                          const std::vector<double>& positions) {
    if (weights.size() != positions.size() || weights.empty())
        throw std::invalid_argument("localization_score: size mismatch");
    const auto [lo, hi] = std::minmax_element(positions.begin(), positions.end());
    const double center = 0.5 * (*lo + *hi);
    const double half = 0.5 * (*hi - *lo);
    double total = 0.0, mean = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        total += weights[i];
        mean += weights[i] * positions[i];
    }
    if (total <= 0.0) throw std::invalid_argument("localization_score: zero total weight");
    mean /= total;
    return half > 0.0 ? (mean - center) / half : 0.0;
}

Mat position_localized_combinations(const RealSpaceSystem& system, const Mat& states, int axis) {
    if (states.rows() != static_cast<Eigen::Index>(system.sites.size()))
        throw std::invalid_argument("position_localized_combinations: state length mismatch");
    Eigen::VectorXd x(states.rows());
    for (Eigen::Index i = 0; i < states.rows(); ++i) x[i] = system.sites[i].position[axis];
    const Mat x_sub = states.adjoint() * x.asDiagonal().toDenseMatrix().cast<cxd>() * states;
    Eigen::SelfAdjointEigenSolver<Mat> es(x_sub);
    return states * es.eigenvectors();
}

double state_localization_score(const RealSpaceSystem& system, const CVec& state, Sector sector,
                                int axis) {
    const std::vector<int> sites = system.sector_indices(sector);
    if (sites.empty()) throw EmptySector("state_localization_score: sector has no sites");
    std::vector<double> w(sites.size()), x(sites.size());
    for (std::size_t j = 0; j < sites.size(); ++j) {
        w[j] = std::norm(state[sites[j]]);
        x[j] = system.sites[sites[j]].position[axis];
    }
    return localization_score(w, x);
}

namespace {

std::vector<RibbonState> ribbon_impl(const BlochModel& model2d, const EmitterLayout* layout,
                                     int l_cells, int ky_nodes, exec::Mode mode) {
    if (model2d.dim != 2) throw std::invalid_argument("ribbon_spectrum: 2D models only");
    if (ky_nodes < 3) throw std::invalid_argument("ribbon_spectrum: need at least 3 ky nodes");

    std::vector<std::vector<RibbonState>> buckets(ky_nodes);
    exec::parallel_for(static_cast<std::size_t>(ky_nodes), mode, [&](std::size_t i) {
        const double ky = kTwoPi * static_cast<double>(i) / ky_nodes;
        BlochModel chain;
        chain.dim = 1;
        chain.n_bands = model2d.n_bands;
        chain.name = model2d.name + "_ribbon";
        chain.hermitian_hint = model2d.hermitian_hint;
        chain.eval = [eval2d = model2d.eval, ky](const Kv& k) { return eval2d({k[0], ky}); };

        RealSpaceSystem sys = build_bath(chain, {l_cells, 1}, {BC::open, BC::open});
        if (layout) sys = attach_emitters(sys, *layout);
        const SpectrumWithSectors sp = spectrum_with_sectors(sys);

        std::vector<double> x(sys.sites.size());
        for (std::size_t j = 0; j < sys.sites.size(); ++j) x[j] = sys.sites[j].position[0];
        std::vector<RibbonState> local;
        local.reserve(sp.energies.size());
        for (int c = 0; c < sp.energies.size(); ++c) {
            std::vector<double> w(sys.sites.size());
            for (std::size_t j = 0; j < sys.sites.size(); ++j)
                w[j] = std::norm(sp.right_vectors(j, c));
            local.push_back({ky, sp.energies[c], localization_score(w, x), sp.sector[c]});
        }
        buckets[i] = std::move(local);
    });

    std::vector<RibbonState> out;
    for (auto& bucket : buckets)
        out.insert(out.end(), bucket.begin(), bucket.end());
    return out;
}

}  // namespace

std::vector<RibbonState> ribbon_spectrum(const BlochModel& model2d, const EmitterLayout& layout,
                                         int l_cells, int ky_nodes, exec::Mode mode) {
    return ribbon_impl(model2d, &layout, l_cells, ky_nodes, mode);
}

std::vector<RibbonState> ribbon_spectrum(const BlochModel& model2d, int l_cells, int ky_nodes,
                                         exec::Mode mode) {
    return ribbon_impl(model2d, nullptr, l_cells, ky_nodes, mode);
}

Mat effective_atomic_realspace(const RealSpaceSystem& bath, const std::vector<int>& emitter_sites,
                               cxd omega_e, double g) {
    const int n = static_cast<int>(bath.sites.size());
    const int ne = static_cast<int>(emitter_sites.size());
    if (ne == 0) throw std::invalid_argument("effective_atomic_realspace: no emitter sites");
    for (int s : emitter_sites)
        if (s < 0 || s >= n)
            throw std::invalid_argument("effective_atomic_realspace: site index out of range");

    const Mat a = omega_e * Mat::Identity(n, n) - bath.hamiltonian;
    Eigen::PartialPivLU<Mat> lu(a);
    Mat rhs = Mat::Zero(n, ne);
    for (int j = 0; j < ne; ++j) rhs(emitter_sites[j], j) = 1.0;
    const Mat x = lu.solve(rhs);
    if ((a * x - rhs).cwiseAbs().maxCoeff() > 1e-8)
        throw ResolventSingular("effective_atomic_realspace: bath resolvent is singular");

    Mat h = Mat::Zero(ne, ne);
    for (int i = 0; i < ne; ++i) {
        for (int j = 0; j < ne; ++j) h(i, j) = g * g * x(emitter_sites[i], j);
        h(i, i) += omega_e;
    }
    return h;
}

}  // namespace topolab
