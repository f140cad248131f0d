#include "tasks.hpp"

#include <cmath>
#include <cstdio>

#include "topolab/errors.hpp"
#include "topolab/models.hpp"

namespace topolab::cli {

namespace {

BlochModel model_from_config(const Config& c) {
    if (c.model_name.empty()) throw ConfigError("config: this task needs a model");
    return zoo::make(c.model_name, c.model_params);
}

KGrid grid_for(const BlochModel& m, const Config& c) {
    return c.grid_m > 0 ? KGrid(m.dim, c.grid_m) : KGrid::default_for(m.dim);
}

const SymmetryOp* find_chiral(const std::vector<SymmetryOp>& ops) {
    for (const auto& op : ops)
        if (op.flavor == SymFlavor::chiral) return &op;
    return nullptr;
}

InvariantResult compute_invariant(const std::string& kind, const BlochModel& m,
                                  const std::vector<SymmetryOp>& ops, cxd base,
                                  const KGrid& grid) {
    if (kind == "winding_chiral") {
        const SymmetryOp* s = find_chiral(ops);
        if (!s) throw ConfigError("invariant: model declares no chiral symmetry");
        return winding_chiral_1d(m, *s, grid);
    }
    if (kind == "winding_spectral") return winding_spectral_1d(m, base, grid);
    if (kind == "chern") return chern_2d(m, BandSelector::below_energy(base.real()), grid);
    if (kind == "chern_isv") {
        const SymmetryOp* s = find_chiral(ops);
        if (!s) throw ConfigError("invariant: model declares no chiral symmetry");
        return chern_isv_2d(m, SymmetryOp(s->unitary, SymFlavor::chiral, SymVariant::nh_az), base,
                            grid);
    }
    throw ConfigError("config.invariant: unknown kind '" + kind + "'");
}

}  // namespace

json run_invariant(Config& c) {
    const BlochModel bath = model_from_config(c);
    const KGrid grid = grid_for(bath, c);
    c.grid_m = grid.m;
    if (c.invariant_kind.empty()) throw ConfigError("config.invariant: missing 'kind'");
    if (!c.invariant_base)
        c.invariant_base = zoo::default_base_energy(c.model_name, c.model_params);
    const auto ops = zoo::physical_symmetries(c.model_name, c.model_params);

    json out;
    out["photonic"] = to_json(compute_invariant(c.invariant_kind, bath, ops, *c.invariant_base, grid));
    if (c.layout) {
        const BlochModel mediated = effective_bloch(bath, *c.layout);
        const bool needs_symmetry =
            c.invariant_kind == "winding_chiral" || c.invariant_kind == "chern_isv";
        if (needs_symmetry && !c.layout->is_full())
            throw ConfigError(
                "invariant: symmetry-based invariants of projected layouts need the mediated "
                "model's own symmetry; use the full projector here");
        out["atomic"] =
            to_json(compute_invariant(c.invariant_kind, mediated, ops, *c.invariant_base, grid));
        if (!mediated.warning.empty()) out["warning"] = mediated.warning;
    }
    return out;
}

json run_classify(Config& c) {
    const BlochModel bath = model_from_config(c);
    const KGrid grid = grid_for(bath, c);
    c.grid_m = grid.m;
    const auto ops = zoo::physical_symmetries(c.model_name, c.model_params);

    json out;
    const ClassLabel bath_label = classify(bath, ops, grid);
    out["photonic"] = to_json(bath_label);
    json residuals = json::array();
    for (const auto& op : ops) {
        residuals.push_back(json{{"flavor", to_string(op.flavor)},
                                 {"variant", to_string(op.variant)},
                                 {"residual", symmetry_residual(bath, op, grid)}});
    }
    out["constraint_residuals"] = residuals;
    std::printf("photonic class: %s\n", to_string(bath_label.name).c_str());

    if (c.layout) {
        const BlochModel mediated = effective_bloch(bath, *c.layout);
        const ClassLabel direct = classify(mediated, ops, grid);
        const ClassLabel predicted = predict_inherited_class(bath_label, c.layout->omega_e);
        out["atomic"] = to_json(direct);
        out["predicted"] = to_json(predicted);
        out["prediction_matches"] = direct.name == predicted.name;
        std::printf("atomic class: %s (predicted %s)\n", to_string(direct.name).c_str(),
                    to_string(predicted.name).c_str());
    }
    return out;
}

json run_mediate(Config& c, const std::filesystem::path& outdir) {
    const BlochModel bath = model_from_config(c);
    if (!c.layout) throw ConfigError("config: task 'mediate' needs a layout");
    const KGrid grid = grid_for(bath, c);
    c.grid_m = grid.m;

    const GapReport gap = gap_check(bath, grid, c.layout->omega_e);
    if (!gap.gapped)
        throw ResolventSingular("mediate: bath spectrum touches omega_e on the grid");
    const BlochModel mediated = effective_bloch(bath, *c.layout, 1e-12, gap.min_distance);

    const BandStructure bath_bands = band_structure(bath, grid);
    const BandStructure mediated_bands = band_structure(mediated, grid);

    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Kv k = grid.node(i);
        for (int b = 0; b < bath_bands.energies[i].size(); ++b)
            rows.push_back({"bath", fmt(k[0]), fmt(k[1]), std::to_string(b),
                            fmt(bath_bands.energies[i][b].real()),
                            fmt(bath_bands.energies[i][b].imag())});
        for (int b = 0; b < mediated_bands.energies[i].size(); ++b)
            rows.push_back({"mediated", fmt(k[0]), fmt(k[1]), std::to_string(b),
                            fmt(mediated_bands.energies[i][b].real()),
                            fmt(mediated_bands.energies[i][b].imag())});
    }
    write_csv(outdir / "spectra.csv", {"source", "kx", "ky", "band", "e_re", "e_im"}, rows);

    // largest violation of (omega - H_p)(H_a - omega) = g^2 over the grid
    double worst = 0.0;
    const int nb = bath.n_bands;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Kv k = grid.node(i);
        if (!c.layout->is_full()) break;
        const Mat lhs = (c.layout->omega_e * Mat::Identity(nb, nb) - bath.eval(k)) *
                        (mediated.eval(k) - c.layout->omega_e * Mat::Identity(nb, nb));
        worst = std::max(worst,
                         max_abs_diff(lhs, c.layout->g * c.layout->g * Mat::Identity(nb, nb)));
    }

    json out;
    out["gap"] = to_json(gap);
    out["resolvent_identity_residual"] = worst;
    out["mediated_bands"] = mediated.n_bands;
    if (!mediated.warning.empty()) out["warning"] = mediated.warning;
    return out;
}

json run_table1(Config& c, const std::filesystem::path& outdir) {
    (void)outdir;
    struct Row {
        const char* model;
        int dim;
        bool hermitian;
    };
    const Row spec_rows[] = {
        {"ssh", 1, true}, {"qwz", 2, true}, {"hn", 1, false}, {"chiral_nh_2d", 2, false}};

    json table = json::array();
    bool all_pass = true;
    for (const Row& row : spec_rows) {
        const BlochModel bath = zoo::make(row.model);
        const KGrid grid = c.grid_m > 0 ? KGrid(bath.dim, c.grid_m) : KGrid::default_for(bath.dim);
        const cxd base = zoo::default_base_energy(row.model);
        const GapReport gap =
            gap_check(bath, grid, base, 1e-8,
                      row.hermitian ? GapKind::line : GapKind::point);
        const double g = 0.1 * gap.min_distance;
        const BlochModel mediated =
            effective_bloch(bath, EmitterLayout::full(bath.n_bands, base, g));
        const auto ops = zoo::physical_symmetries(row.model);

        InvariantResult nu_p, nu_a;
        if (row.model == std::string("ssh")) {
            nu_p = winding_chiral_1d(bath, *find_chiral(ops), grid);
            nu_a = winding_chiral_1d(mediated, *find_chiral(ops), grid);
        } else if (row.model == std::string("qwz")) {
            nu_p = chern_2d(bath, BandSelector::below_energy(0.0), grid);
            nu_a = chern_2d(mediated, BandSelector::below_energy(0.0), grid);
        } else if (row.model == std::string("hn")) {
            nu_p = winding_spectral_1d(bath, base, grid);
            nu_a = winding_spectral_1d(mediated, base, grid);
        } else {
            nu_p = chern_isv_2d(bath, *find_chiral(ops), base, grid);
            nu_a = chern_isv_2d(mediated, *find_chiral(ops), base, grid);
        }

        const int sign = ((row.dim + (row.hermitian ? 1 : 0)) % 2 == 0) ? 1 : -1;
        const bool pass = nu_a.value == sign * nu_p.value && std::abs(nu_p.value) == 1 &&
                          nu_p.quantized && nu_a.quantized;
        all_pass &= pass;
        std::printf("%-14s D=%d %-13s nu_p=%+d nu_a=%+d expected sign %+d  %s\n", row.model,
                    row.dim, row.hermitian ? "hermitian" : "non-hermitian", nu_p.value,
                    nu_a.value, sign, pass ? "PASS" : "FAIL");
        table.push_back(json{{"model", row.model},
                             {"dim", row.dim},
                             {"hermitian", row.hermitian},
                             {"g", g},
                             {"nu_p", to_json(nu_p)},
                             {"nu_a", to_json(nu_a)},
                             {"expected_sign", sign},
                             {"pass", pass}});
    }
    json out;
    out["rows"] = table;
    out["all_pass"] = all_pass;
    return out;
}

json list_models() {
    json out = json::array();
    for (const auto& entry : zoo::catalog()) {
        json defaults = json::object();
        for (const auto& [key, value] : entry.defaults) {
            if (entry.name == "hn" && key == "gamma" && value < 0.0)
                defaults[key] = "2*delta*j";
            else
                defaults[key] = value;
        }
        out.push_back(json{{"name", entry.name},
                           {"defaults", defaults},
                           {"summary", entry.summary}});
    }
    return out;
}

}  // namespace topolab::cli
