// figures.cpp - reproduction recipes: each writes CSV artifacts plus a
// self-contained plot script and returns the quantitative results block.
#include <algorithm>
#include <cmath>

#include "tasks.hpp"
#include "topolab/errors.hpp"
#include "topolab/models.hpp"

namespace topolab::cli {

namespace {

using Rows = std::vector<std::vector<std::string>>;

void ensure_model(Config& c, const std::string& name,
                  const std::map<std::string, double>& params) {
    if (c.model_name.empty()) {
        c.model_name = name;
        c.model_params = params;
    }
}

void ensure_layout(Config& c, const EmitterLayout& layout) {
    if (!c.layout) c.layout = layout;
}

void profile_rows(Rows& rows, const std::string& tag, const RealSpaceSystem& sys,
                  const std::vector<int>& sites, const std::vector<double>& weights) {
    for (std::size_t j = 0; j < sites.size(); ++j) {
        const Site& s = sys.sites[sites[j]];
        rows.push_back({tag, std::to_string(j), std::to_string(s.cell[0]),
                        std::to_string(s.sublattice),
                        s.sector == Sector::atomic ? "atomic" : "photonic",
                        fmt(s.position[0]), fmt(weights[j])});
    }
}

// indices of the two smallest-|E| states within a sector
std::vector<int> midgap_pair(const SpectrumWithSectors& sp, Sector sector) {
    std::vector<int> idx;
    for (int i = 0; i < sp.energies.size(); ++i)
        if (sp.sector[i] == sector) idx.push_back(i);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(sp.energies[a]) < std::abs(sp.energies[b]);
    });
    idx.resize(std::min<std::size_t>(2, idx.size()));
    return idx;
}

const char* kPlotProfiles = R"PY(#!/usr/bin/env python3
# plots the per-site profiles emitted next to this script
import csv, collections
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

series = collections.defaultdict(lambda: ([], []))
with open("profiles.csv") as fh:
    for row in csv.DictReader(fh):
        xs, ws = series[row["profile"]]
        xs.append(float(row["position"]))
        ws.append(float(row["weight"]))

fig, axes = plt.subplots(len(series), 1, figsize=(6, 2.6 * len(series)), squeeze=False)
for ax, (name, (xs, ws)) in zip(axes[:, 0], sorted(series.items())):
    ax.semilogy(xs, [max(w, 1e-18) for w in ws], "o-", ms=3)
    ax.set_title(name)
    ax.set_xlabel("position (unit cells)")
    ax.set_ylabel("weight")
fig.tight_layout()
fig.savefig("profiles.png", dpi=160)
print("wrote profiles.png")
)PY";

const char* kPlotSpectra = R"PY(#!/usr/bin/env python3
# complex-plane view of the spectra emitted next to this script
import csv, collections
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

series = collections.defaultdict(lambda: ([], []))
with open("spectra.csv") as fh:
    for row in csv.DictReader(fh):
        re, im = series[row["source"]]
        re.append(float(row["e_re"]))
        im.append(float(row["e_im"]))

fig, ax = plt.subplots(figsize=(6, 4.5))
for name, (re, im) in sorted(series.items()):
    ax.plot(re, im, ".", ms=2, label=name)
ax.set_xlabel("Re E")
ax.set_ylabel("Im E")
ax.legend()
fig.tight_layout()
fig.savefig("spectra.png", dpi=160)
print("wrote spectra.png")
)PY";

const char* kPlotRibbon = R"PY(#!/usr/bin/env python3
# cylinder spectra colored by boundary localization, one panel per stripe width
import csv, collections
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt

panels = collections.defaultdict(lambda: ([], [], []))
with open("ribbon.csv") as fh:
    for row in csv.DictReader(fh):
        ky, e, s = panels[int(row["d"])]
        ky.append(float(row["ky"]))
        e.append(float(row["e_re"]))
        s.append(float(row["score"]))

ds = sorted(panels)
fig, axes = plt.subplots(2, len(ds), figsize=(3.2 * len(ds), 6), squeeze=False)
for col, d in enumerate(ds):
    ky, e, s = panels[d]
    for row, ylim in ((0, None), (1, 0.02)):
        ax = axes[row][col]
        sc = ax.scatter(ky, e, c=s, cmap="coolwarm", vmin=-1, vmax=1, s=2)
        ax.set_title(f"d = {d}" if row == 0 else "atomic window")
        ax.set_xlabel("ky")
        ax.set_ylabel("Re E")
        if ylim:
            ax.set_ylim(-ylim, ylim)
fig.colorbar(sc, ax=axes.ravel().tolist(), label="localization")
fig.savefig("ribbon.png", dpi=160)
print("wrote ribbon.png")
)PY";

json fig1(Config& c, const std::filesystem::path& outdir) {
    ensure_model(c, "ssh", {{"v", 1.0}, {"w", 1.5}});
    const BlochModel bath = zoo::make(c.model_name, c.model_params);
    ensure_layout(c, EmitterLayout::full(bath.n_bands, cxd(0, 0), 0.1, 4));
    if (c.n_cells[0] == 0) c.n_cells = {30, 1};
    c.bc = {BC::periodic, BC::open};
    const KGrid grid = c.grid_m > 0 ? KGrid(1, c.grid_m) : KGrid::default_for(1);
    c.grid_m = grid.m;

    Rows profiles, spectra;
    json out;

    // bare open chain: photonic boundary pair
    const RealSpaceSystem open_bath =
        build_bath(bath, {c.n_cells[0], 1}, {BC::open, BC::open});
    const SpectrumWithSectors open_sp = spectrum_with_sectors(open_bath);
    for (int i = 0; i < open_sp.energies.size(); ++i)
        spectra.push_back({"open_bath", std::to_string(i), fmt(open_sp.energies[i].real()),
                           fmt(open_sp.energies[i].imag()), "photonic", "0"});
    {
        const std::vector<int> pair = midgap_pair(open_sp, Sector::photonic);
        Mat cols(open_sp.right_vectors.rows(), pair.size());
        for (std::size_t j = 0; j < pair.size(); ++j)
            cols.col(j) = open_sp.right_vectors.col(pair[j]);
        const Mat localized = position_localized_combinations(open_bath, cols);
        const std::vector<int> sites = open_bath.sector_indices(Sector::photonic);
        for (int j = 0; j < localized.cols(); ++j) {
            std::vector<double> w(sites.size());
            for (std::size_t i = 0; i < sites.size(); ++i)
                w[i] = std::norm(localized(sites[i], j));
            profile_rows(profiles, "photonic_edge_" + std::to_string(j), open_bath, sites, w);
        }
        out["photonic_midgap_energy"] = std::abs(open_sp.energies[pair[0]]);
    }

    // periodic bath with striped emitters: atomic boundary pair
    const RealSpaceSystem bath_rs =
        build_bath(bath, {c.n_cells[0], 1}, {BC::periodic, BC::open});
    const RealSpaceSystem sys = attach_emitters(bath_rs, *c.layout);
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    out["n_emitters"] = static_cast<int>(sys.sites.size()) - sys.n_photonic;
    for (int i = 0; i < sp.energies.size(); ++i)
        spectra.push_back({"attached", std::to_string(i), fmt(sp.energies[i].real()),
                           fmt(sp.energies[i].imag()),
                           sp.sector[i] == Sector::atomic ? "atomic" : "photonic",
                           fmt(sp.atomic_weight[i])});

    const std::vector<int> pair = midgap_pair(sp, Sector::atomic);
    Mat cols(sp.right_vectors.rows(), pair.size());
    for (std::size_t j = 0; j < pair.size(); ++j) cols.col(j) = sp.right_vectors.col(pair[j]);
    const Mat localized = position_localized_combinations(sys, cols);
    const std::vector<int> atomic_sites = sys.sector_indices(Sector::atomic);
    json scores = json::array();
    for (int j = 0; j < localized.cols(); ++j) {
        std::vector<double> w(atomic_sites.size());
        for (std::size_t i = 0; i < atomic_sites.size(); ++i)
            w[i] = std::norm(localized(atomic_sites[i], j));
        profile_rows(profiles, "atomic_edge_" + std::to_string(j), sys, atomic_sites, w);
        scores.push_back(state_localization_score(sys, localized.col(j), Sector::atomic));
    }
    out["atomic_edge_scores"] = scores;
    out["atomic_midgap_energies"] =
        json::array({std::abs(sp.energies[pair[0]]), std::abs(sp.energies[pair[1]])});

    out["nu_photonic"] = to_json(
        winding_chiral_1d(bath, zoo::physical_symmetries(c.model_name, c.model_params)[2], grid));
    out["nu_atomic"] = to_json(winding_chiral_1d(
        effective_bloch(bath, *c.layout),
        zoo::physical_symmetries(c.model_name, c.model_params)[2], grid));

    write_csv(outdir / "profiles.csv",
              {"profile", "index", "cell", "sublattice", "sector", "position", "weight"},
              profiles);
    write_csv(outdir / "spectra.csv", {"source", "index", "e_re", "e_im", "sector", "atomic_weight"},
              spectra);
    write_text(outdir / "plot_fig1.py", kPlotProfiles);
    return out;
}

json fig2(Config& c, const std::filesystem::path& outdir) {
    ensure_model(c, "qwz", {{"u", 1.2}, {"j", 1.0}});
    const BlochModel bath = zoo::make(c.model_name, c.model_params);
    ensure_layout(c, EmitterLayout::full(bath.n_bands, cxd(0, 0), 0.1, 0));
    if (c.n_cells[0] == 0) c.n_cells = {50, 1};
    const int ky_nodes = 101;
    const std::vector<int> stripe_widths = {0, 1, 4, 8};
    const KGrid grid = c.grid_m > 0 ? KGrid(2, c.grid_m) : KGrid::default_for(2);
    c.grid_m = grid.m;

    Rows rows;
    json out;
    for (int d : stripe_widths) {
        EmitterLayout layout = *c.layout;
        layout.stripe_d = d;
        const auto states = ribbon_spectrum(bath, layout, c.n_cells[0], ky_nodes);
        for (const auto& s : states)
            rows.push_back({std::to_string(d), fmt(s.ky), fmt(s.energy.real()),
                            fmt(s.energy.imag()), fmt(s.score),
                            s.sector == Sector::atomic ? "atomic" : "photonic"});

        if (d == 4) {
            // right-boundary branch slopes at the gap center, per sector
            auto branch_slope = [&](Sector sector, double window) {
                double best_slope = 0.0;
                double best_gap = 1e9;
                std::map<double, std::vector<const RibbonState*>> by_ky;
                for (const auto& s : states)
                    if (s.sector == sector && s.score > 0.5 &&
                        std::abs(s.energy.real()) < window)
                        by_ky[s.ky].push_back(&s);
                std::vector<std::pair<double, double>> branch;  // (ky, Re E) nearest zero
                for (const auto& [ky, list] : by_ky) {
                    const RibbonState* nearest = nullptr;
                    for (const auto* s : list)
                        if (!nearest ||
                            std::abs(s->energy.real()) < std::abs(nearest->energy.real()))
                            nearest = s;
                    branch.push_back({ky, nearest->energy.real()});
                }
                for (std::size_t i = 0; i + 1 < branch.size(); ++i) {
                    const auto [k0, e0] = branch[i];
                    const auto [k1, e1] = branch[i + 1];
                    if (k1 - k0 > 1.5 * kTwoPi / ky_nodes) continue;  // gap in the branch
                    const double mid = 0.5 * std::abs(e0 + e1);
                    if (e0 * e1 <= 0.0 || mid < best_gap) {
                        if (e0 * e1 <= 0.0 || mid < best_gap) {
                            best_gap = e0 * e1 <= 0.0 ? 0.0 : mid;
                            best_slope = (e1 - e0) / (k1 - k0);
                        }
                    }
                }
                return best_slope;
            };
            const double photonic_slope = branch_slope(Sector::photonic, 0.35);
            const double atomic_slope = branch_slope(Sector::atomic, 0.01);
            out["right_boundary_slopes"] = json{{"photonic", photonic_slope},
                                                {"atomic", atomic_slope},
                                                {"opposite", photonic_slope * atomic_slope < 0}};
        }
        if (d == 0) {
            int in_gap = 0;
            for (const auto& s : states)
                if (std::abs(s.energy.real()) < 0.0025) ++in_gap;
            out["d0_states_in_atomic_gap"] = in_gap;
        }
    }
    write_csv(outdir / "ribbon.csv", {"d", "ky", "e_re", "e_im", "score", "sector"}, rows);

    out["chern_photonic"] = to_json(chern_2d(bath, BandSelector::below_energy(0.0), grid));
    out["chern_atomic"] = to_json(
        chern_2d(effective_bloch(bath, *c.layout), BandSelector::below_energy(0.0), grid));
    write_text(outdir / "plot_fig2.py", kPlotRibbon);
    return out;
}

json fig3(Config& c, const std::filesystem::path& outdir) {
    ensure_model(c, "hn", {{"j", 1.0}, {"delta", 0.5}, {"gamma", -1.0}});
    const BlochModel bath = zoo::make(c.model_name, c.model_params);
    ensure_layout(c, EmitterLayout({1}, cxd(0.0, -1.0), 0.5, 5));
    if (c.n_cells[0] == 0) c.n_cells = {20, 1};
    const KGrid grid = c.grid_m > 0 ? KGrid(1, c.grid_m) : KGrid::default_for(1);
    c.grid_m = grid.m;
    const cxd base = c.layout->omega_e;

    Rows profiles, spectra;
    // skin profile of every eigenstate of the bare open chain
    const RealSpaceSystem bare = build_bath(bath, {c.n_cells[0], 1}, {BC::open, BC::open});
    const ModeProfile photonic = skin_profile(bare, Sector::photonic);
    profile_rows(profiles, "bare_photonic", bare, bare.sector_indices(Sector::photonic),
                 photonic.weights);

    // periodic bath, emitter stripes removed: atomic skin profile
    const RealSpaceSystem bath_rs =
        build_bath(bath, {c.n_cells[0], 1}, {BC::periodic, BC::open});
    const RealSpaceSystem sys = attach_emitters(bath_rs, *c.layout);
    const ModeProfile atomic = skin_profile(sys, Sector::atomic);
    profile_rows(profiles, "atomic", sys, sys.sector_indices(Sector::atomic), atomic.weights);

    const BandStructure bloch_bath = band_structure(bath, grid);
    const BlochModel mediated = effective_bloch(bath, *c.layout);
    const BandStructure bloch_med = band_structure(mediated, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        spectra.push_back({"bath_bloch", fmt(grid.node(i)[0]), "0",
                           fmt(bloch_bath.energies[i][0].real()),
                           fmt(bloch_bath.energies[i][0].imag())});
        spectra.push_back({"mediated_bloch", fmt(grid.node(i)[0]), "0",
                           fmt(bloch_med.energies[i][0].real()),
                           fmt(bloch_med.energies[i][0].imag())});
    }

    json out;
    out["photonic_profile_argmax"] = static_cast<int>(
        std::max_element(photonic.weights.begin(), photonic.weights.end()) -
        photonic.weights.begin());
    out["atomic_profile_argmax"] = static_cast<int>(
        std::max_element(atomic.weights.begin(), atomic.weights.end()) - atomic.weights.begin());
    out["n_photonic_sites"] = static_cast<int>(photonic.weights.size());
    out["n_atomic_sites"] = static_cast<int>(atomic.weights.size());
    out["nu_photonic"] = to_json(winding_spectral_1d(bath, base, grid));
    out["nu_atomic"] = to_json(winding_spectral_1d(mediated, base, grid));

    write_csv(outdir / "profiles.csv",
              {"profile", "index", "cell", "sublattice", "sector", "position", "weight"},
              profiles);
    write_csv(outdir / "spectra.csv", {"source", "kx", "band", "e_re", "e_im"}, spectra);
    write_text(outdir / "plot_fig3.py", kPlotProfiles);
    write_text(outdir / "plot_fig3_spectra.py", kPlotSpectra);
    return out;
}

json fig4(Config& c, const std::filesystem::path& outdir) {
    ensure_model(c, "chiral_nh_2d", {{"j", 1.0}});
    const BlochModel bath = zoo::make(c.model_name, c.model_params);
    ensure_layout(c, EmitterLayout::full(bath.n_bands, cxd(0.0, -1.0), 0.5, 0));
    const KGrid grid = c.grid_m > 0 ? KGrid(2, c.grid_m) : KGrid(2, 64);
    c.grid_m = grid.m;
    const cxd base = c.layout->omega_e;

    const BlochModel mediated = effective_bloch(bath, *c.layout);
    Rows spectra;
    const BandStructure bb = band_structure(bath, grid);
    const BandStructure mb = band_structure(mediated, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Kv k = grid.node(i);
        for (int b = 0; b < bb.energies[i].size(); ++b) {
            spectra.push_back({"bath", fmt(k[0]), fmt(k[1]), std::to_string(b),
                               fmt(bb.energies[i][b].real()), fmt(bb.energies[i][b].imag())});
            spectra.push_back({"mediated", fmt(k[0]), fmt(k[1]), std::to_string(b),
                               fmt(mb.energies[i][b].real()), fmt(mb.energies[i][b].imag())});
        }
    }
    write_csv(outdir / "spectra.csv", {"source", "kx", "ky", "band", "e_re", "e_im"}, spectra);

    const auto ops = zoo::physical_symmetries(c.model_name, c.model_params);
    json out;
    out["invariant_photonic"] = to_json(chern_isv_2d(bath, ops[0], base, grid));
    out["invariant_atomic"] = to_json(chern_isv_2d(mediated, ops[0], base, grid));
    write_text(outdir / "plot_fig4.py", kPlotSpectra);
    return out;
}

json fig5(Config& c, const std::filesystem::path& outdir) {
    // doubled-cell arrangements; defaults pick the photonically trivial side
    std::map<std::string, double> params = {{"v", 1.0}, {"w", 0.8}, {"theta", 0.0}};
    ensure_model(c, "theta", params);
    const double v = c.model_params.at("v");
    const double w = c.model_params.at("w");
    const double theta = c.model_params.at("theta");
    if (!c.layout) c.layout = EmitterLayout({1, 0, 0, 1}, cxd(0, 0), 0.1, 3);
    const double g = c.layout->g;
    if (c.n_cells[0] == 0) c.n_cells = {30, 1};
    const KGrid grid = c.grid_m > 0 ? KGrid(1, c.grid_m) : KGrid::default_for(1);
    c.grid_m = grid.m;

    const zoo::ThetaLab lab = zoo::make_theta_lab(v, w, theta, c.layout->omega_e, g,
                                                  c.layout->stripe_d);
    const BlochModel on = zoo::theta_on_cell_effective(lab);
    const BlochModel brk = zoo::theta_cell_breaking_effective(lab);

    json out;
    // proportionality constants against the reference staggered chains
    if (theta == 0.0) {
        const BlochModel ref_on = zoo::ssh(v * v, -w * w);
        const BlochModel ref_brk = zoo::ssh(w * w, -v * v);
        double worst_on = 0.0, worst_brk = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double k = grid.node(i)[0];
            worst_on = std::max(worst_on, max_abs_diff(Mat(on.at(k) * ref_on.at(k)),
                                                       -g * g * v * Mat::Identity(2, 2)));
            worst_brk = std::max(worst_brk, max_abs_diff(Mat(brk.at(k) * ref_brk.at(k)),
                                                         -g * g * w * Mat::Identity(2, 2)));
        }
        out["on_cell_proportionality"] = json{{"constant", -g * g * v}, {"residual", worst_on}};
        out["cell_breaking_proportionality"] =
            json{{"constant", -g * g * w}, {"residual", worst_brk}};
    }

    // spectral gap of the cell-breaking model against 2 g^2 w cos(2 theta)/(v^2+w^2)
    const GapReport brk_gap = gap_check(brk, grid, cxd(0, 0), 1e-12, GapKind::line);
    out["cell_breaking_gap"] = 2.0 * brk_gap.min_distance;
    out["cell_breaking_gap_formula"] =
        2.0 * g * g * w * std::cos(2.0 * theta) / (v * v + w * w);

    const SymmetryOp chiral_z(zoo::physical_symmetries("ssh")[2]);
    if (theta == 0.0) {
        out["nu_photonic"] = to_json(
            winding_chiral_1d(zoo::theta_model(v, w, theta), chiral_z, grid));
        out["nu_on_cell"] = to_json(winding_chiral_1d(on, chiral_z, grid));
        out["nu_cell_breaking"] = to_json(winding_chiral_1d(brk, chiral_z, grid));
    }

    // mediated bands over the zone
    Rows spectra;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double k = grid.node(i)[0];
        for (const auto& [tag, model] : {std::pair<const char*, const BlochModel*>{"on_cell", &on},
                                         {"cell_breaking", &brk}}) {
            Eigen::SelfAdjointEigenSolver<Mat> es(model->at(k));
            for (int b = 0; b < 2; ++b)
                spectra.push_back({tag, fmt(k), "0", std::to_string(b),
                                   fmt(es.eigenvalues()[b]), "0"});
        }
    }
    write_csv(outdir / "spectra.csv", {"source", "kx", "ky", "band", "e_re", "e_im"}, spectra);

    // real-space edge states of the cell-breaking arrangement
    Rows profiles;
    const RealSpaceSystem bath_rs =
        build_bath(lab.bath, {c.n_cells[0], 1}, {BC::periodic, BC::open});
    const RealSpaceSystem sys = attach_emitters(bath_rs, lab.cell_breaking);
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);
    const std::vector<int> pair = midgap_pair(sp, Sector::atomic);
    Mat cols(sp.right_vectors.rows(), pair.size());
    for (std::size_t j = 0; j < pair.size(); ++j) cols.col(j) = sp.right_vectors.col(pair[j]);
    const Mat localized = position_localized_combinations(sys, cols);
    const std::vector<int> atomic_sites = sys.sector_indices(Sector::atomic);
    json scores = json::array();
    for (int j = 0; j < localized.cols(); ++j) {
        std::vector<double> weights(atomic_sites.size());
        for (std::size_t i = 0; i < atomic_sites.size(); ++i)
            weights[i] = std::norm(localized(atomic_sites[i], j));
        profile_rows(profiles, "cell_breaking_edge_" + std::to_string(j), sys, atomic_sites,
                     weights);
        scores.push_back(state_localization_score(sys, localized.col(j), Sector::atomic));
    }
    out["cell_breaking_edge_scores"] = scores;
    write_csv(outdir / "profiles.csv",
              {"profile", "index", "cell", "sublattice", "sector", "position", "weight"},
              profiles);
    write_text(outdir / "plot_fig5.py", kPlotProfiles);
    return out;
}

json fig6(Config& c, const std::filesystem::path& outdir) {
    ensure_model(c, "stacked_hn", {{"kappa", 1.0}, {"j", 0.5}});
    const BlochModel bath = zoo::make(c.model_name, c.model_params);
    ensure_layout(c, EmitterLayout(zoo::stacked_hn_projector(), cxd(0.0, -1.0), 0.1, 3));
    if (c.n_cells[0] == 0) c.n_cells = {20, 1};
    const KGrid grid = c.grid_m > 0 ? KGrid(1, c.grid_m) : KGrid::default_for(1);
    c.grid_m = grid.m;
    const cxd base = c.layout->omega_e;

    const RealSpaceSystem bath_rs = build_bath(bath, {c.n_cells[0], 1}, {BC::open, BC::open});
    const RealSpaceSystem sys = attach_emitters(bath_rs, *c.layout);
    const SpectrumWithSectors sp = spectrum_with_sectors(sys);

    const ModeProfile photonic = skin_profile(sys, sp, Sector::photonic);
    const ModeProfile atomic = skin_profile(sys, sp, Sector::atomic);

    // photonic weight summed per unit cell (the two rungs share a column)
    std::vector<double> cellsum(c.n_cells[0], 0.0);
    const std::vector<int> photonic_sites = sys.sector_indices(Sector::photonic);
    for (std::size_t j = 0; j < photonic_sites.size(); ++j)
        cellsum[sys.sites[photonic_sites[j]].cell[0]] += photonic.weights[j];

    Rows profiles;
    for (int cell = 0; cell < c.n_cells[0]; ++cell)
        profiles.push_back({"photonic_cellsum", std::to_string(cell), std::to_string(cell), "0",
                            "photonic", fmt(static_cast<double>(cell)), fmt(cellsum[cell])});
    profile_rows(profiles, "atomic", sys, sys.sector_indices(Sector::atomic), atomic.weights);
    write_csv(outdir / "profiles.csv",
              {"profile", "index", "cell", "sublattice", "sector", "position", "weight"},
              profiles);

    const auto [pmin, pmax] = std::minmax_element(cellsum.begin(), cellsum.end());
    const auto [amin, amax] = std::minmax_element(atomic.weights.begin(), atomic.weights.end());
    json out;
    out["photonic_cellsum_ratio"] = *pmax / *pmin;
    out["atomic_ratio"] = *amax / *amin;
    out["nu_photonic"] = to_json(winding_spectral_1d(bath, base, grid));
    out["nu_atomic"] = to_json(winding_spectral_1d(effective_bloch(bath, *c.layout), base, grid));
    write_text(outdir / "plot_fig6.py", kPlotProfiles);
    return out;
}

}  // namespace

json run_figure(Config& c, const std::filesystem::path& outdir) {
    if (c.figure == "fig1") return fig1(c, outdir);
    if (c.figure == "fig2") return fig2(c, outdir);
    if (c.figure == "fig3") return fig3(c, outdir);
    if (c.figure == "fig4") return fig4(c, outdir);
    if (c.figure == "fig5") return fig5(c, outdir);
    if (c.figure == "fig6") return fig6(c, outdir);
    throw ConfigError("config: unknown figure '" + c.figure + "'");
}

}  // namespace topolab::cli
