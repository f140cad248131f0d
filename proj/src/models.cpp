#include "topolab/models.hpp"

#include <cmath>
#include <stdexcept>

#include "topolab/errors.hpp"

namespace topolab::zoo {

namespace {

const cxd kI{0.0, 1.0};

Mat pauli_x() {
    Mat m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

Mat pauli_y() {
    Mat m(2, 2);
    m << 0, cxd(0, -1), cxd(0, 1), 0;
    return m;
}

Mat pauli_z() {
    Mat m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

}  // namespace

BlochModel ssh(double v, double w) {
    BlochModel m;
    m.dim = 1;
    m.n_bands = 2;
    m.name = "ssh";
    m.hermitian_hint = true;
    m.eval = [v, w](const Kv& k) {
        const cxd upper = v + w * std::exp(-kI * k[0]);  // (v + w cos k) - i w sin k
        Mat h(2, 2);
        h << 0.0, upper, std::conj(upper), 0.0;
        return h;
    };
    return m;
}

BlochModel theta_model(double v, double w, double theta) {
    if (!(v > 0.0) || !(w > 0.0))
        throw std::invalid_argument("theta_model: requires v, w > 0");
    if (theta < 0.0 || theta > 0.25 * 3.14159265358979323846 + 1e-12)
        throw std::invalid_argument("theta_model: theta must lie in [0, pi/4]");
    BlochModel m;
    m.dim = 1;
    m.n_bands = 2;
    m.name = "theta";
    m.hermitian_hint = true;
    const double c = std::cos(2.0 * theta);
    const double s = std::sin(2.0 * theta);
    m.eval = [v, w, c, s](const Kv& k) {
        const double hx = v + w * std::cos(k[0]);
        const double hy = w * std::sin(k[0]) * c;
        const double hz = w * std::sin(k[0]) * s;
        Mat h(2, 2);
        h << hz, cxd(hx, -hy), cxd(hx, hy), -hz;
        return h;
    };
    return m;
}

BlochModel qwz(double u, double j) {
    BlochModel m;
    m.dim = 2;
    m.n_bands = 2;
    m.name = "qwz";
    m.hermitian_hint = true;
    m.eval = [u, j](const Kv& k) {
        const double hx = j * std::sin(k[0]);
        const double hy = j * std::sin(k[1]);
        const double hz = j * (u + std::cos(k[0]) + std::cos(k[1]));
        Mat h(2, 2);
        h << hz, cxd(hx, -hy), cxd(hx, hy), -hz;
        return h;
    };
    return m;
}

BlochModel hatano_nelson(double j, double delta, double gamma) {
    BlochModel m;
    m.dim = 1;
    m.n_bands = 1;
    m.name = "hn";
    m.hermitian_hint = delta == 0.0 && gamma == 0.0;
    const double jr = j * (1.0 + delta);
    const double jl = j * (1.0 - delta);
    m.eval = [jr, jl, gamma](const Kv& k) {
        Mat h(1, 1);
        h(0, 0) = jr * std::exp(kI * k[0]) + jl * std::exp(-kI * k[0]) - kI * gamma;
        return h;
    };
    return m;
}

BlochModel hatano_nelson(double j, double delta) {
    return hatano_nelson(j, delta, 2.0 * delta * j);
}

BlochModel chiral_nh_2d(double j) {
    BlochModel m;
    m.dim = 2;
    m.n_bands = 2;
    m.name = "chiral_nh_2d";
    m.hermitian_hint = false;
    m.eval = [j](const Kv& k) {
        const double hx = j * std::sin(k[0]);
        const double hy = j * std::sin(k[1]);
        const cxd diag = kI * j * (2.0 * std::cos(k[0]) + std::cos(k[1]) - 3.0);
        Mat h(2, 2);
        h << diag, cxd(hx, -hy), cxd(hx, hy), diag;
        return h;
    };
    return m;
}

BlochModel stacked_hn(double kappa, double j) {
    BlochModel m;
    m.dim = 1;
    m.n_bands = 2;
    m.name = "stacked_hn";
    m.hermitian_hint = false;
    m.eval = [kappa, j](const Kv& k) {
        Mat h(2, 2);
        h << kappa * (std::exp(kI * k[0]) - kI), j, j, kappa * (std::exp(-kI * k[0]) - kI);
        return h;
    };
    return m;
}

std::vector<int> stacked_hn_projector() { return {1, 0}; }

BlochModel enlarge_cell(const BlochModel& model, int factor) {
    if (model.dim != 1) throw std::invalid_argument("enlarge_cell: 1D models only");
    if (factor < 1) throw std::invalid_argument("enlarge_cell: factor must be >= 1");
    if (factor == 1) return model;

    const HoppingTable table = extract_hoppings(model);
    const int nb = model.n_bands;
    const int nb_new = nb * factor;

    // T(R)[(a,s),(b,s')] = t(R*factor + b - a)[s,s'] with a, b subcell indices
    std::vector<std::pair<int, Mat>> big_blocks;
    const int r_max = table.range[0] / factor + 1;
    for (int r = -r_max; r <= r_max; ++r) {
        Mat block = Mat::Zero(nb_new, nb_new);
        bool nonzero = false;
        for (int a = 0; a < factor; ++a)
            for (int b = 0; b < factor; ++b) {
                if (const Mat* t = table.block(r * factor + b - a)) {
                    block.block(a * nb, b * nb, nb, nb) = *t;
                    nonzero = true;
                }
            }
        if (nonzero) big_blocks.push_back({r, block});
    }

    BlochModel out;
    out.dim = 1;
    out.n_bands = nb_new;
    out.name = model.name + "_x" + std::to_string(factor);
    out.hermitian_hint = model.hermitian_hint;
    out.eval = [big_blocks, nb_new](const Kv& k) {
        Mat h = Mat::Zero(nb_new, nb_new);
        for (const auto& [r, block] : big_blocks) h += std::exp(-kI * (k[0] * r)) * block;
        return h;
    };
    return out;
}

// --- catalog ---------------------------------------------------------------

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = {
        {"ssh", {{"v", 1.0}, {"w", 1.5}}, "staggered-hopping chain, 2 bands, 1D"},
        {"theta",
         {{"v", 1.0}, {"w", 1.5}, {"theta", 0.0}},
         "rotated staggered chain, 2 bands, 1D"},
        {"qwz", {{"u", 1.2}, {"j", 1.0}}, "two-band Chern insulator, 2D"},
        {"hn",
         {{"j", 1.0}, {"delta", 0.5}, {"gamma", -1.0}},
         "non-reciprocal chain with uniform loss (gamma < 0 means 2*delta*j), 1 band, 1D"},
        {"chiral_nh_2d", {{"j", 1.0}}, "chiral-symmetric lossy lattice, 2 bands, 2D"},
        {"stacked_hn",
         {{"kappa", 1.0}, {"j", 0.5}},
         "two opposite unidirectional chains with a Hermitian rung, 2 bands, 1D"},
    };
    return entries;
}

namespace {

Params fill_defaults(const std::string& name, const Params& params) {
    const CatalogEntry* entry = nullptr;
    for (const auto& e : catalog())
        if (e.name == name) entry = &e;
    if (!entry) throw std::invalid_argument("unknown model name '" + name + "'");
    Params full;
    for (const auto& [key, value] : entry->defaults) full[key] = value;
    for (const auto& [key, value] : params) {
        if (!full.count(key))
            throw std::invalid_argument("model '" + name + "' has no parameter '" + key + "'");
        full[key] = value;
    }
    return full;
}

}  // namespace

BlochModel make(const std::string& name, const Params& params) {
    const Params p = fill_defaults(name, params);
    if (name == "ssh") return ssh(p.at("v"), p.at("w"));
    if (name == "theta") return theta_model(p.at("v"), p.at("w"), p.at("theta"));
    if (name == "qwz") return qwz(p.at("u"), p.at("j"));
    if (name == "hn") {
        const double gamma = p.at("gamma") < 0.0 ? 2.0 * p.at("delta") * p.at("j") : p.at("gamma");
        return hatano_nelson(p.at("j"), p.at("delta"), gamma);
    }
    if (name == "chiral_nh_2d") return chiral_nh_2d(p.at("j"));
    if (name == "stacked_hn") return stacked_hn(p.at("kappa"), p.at("j"));
    throw std::invalid_argument("unknown model name '" + name + "'");
}

std::vector<SymmetryOp> physical_symmetries(const std::string& name, const Params& params) {
    const Params p = fill_defaults(name, params);
    if (name == "ssh") {
        return {SymmetryOp(Mat::Identity(2, 2), SymFlavor::trs, SymVariant::hermitian),
                SymmetryOp(pauli_z(), SymFlavor::phs, SymVariant::hermitian),
                SymmetryOp(pauli_z(), SymFlavor::chiral, SymVariant::hermitian)};
    }
    if (name == "theta") {
        const double c = std::cos(2.0 * p.at("theta"));
        const double s = std::sin(2.0 * p.at("theta"));
        const Mat u_trs = c * Mat::Identity(2, 2) - kI * s * pauli_x();
        const Mat u_chiral = c * pauli_z() - s * pauli_y();
        return {SymmetryOp(u_trs, SymFlavor::trs, SymVariant::hermitian),
                SymmetryOp(pauli_z(), SymFlavor::phs, SymVariant::hermitian),
                SymmetryOp(u_chiral, SymFlavor::chiral, SymVariant::hermitian)};
    }
    if (name == "qwz") return {};
    if (name == "hn") {
        const double gamma = p.at("gamma") < 0.0 ? 2.0 * p.at("delta") * p.at("j") : p.at("gamma");
        if (p.at("delta") == 0.0 && gamma == 0.0)
            return {SymmetryOp(Mat::Identity(1, 1), SymFlavor::trs, SymVariant::hermitian)};
        return {};
    }
    if (name == "chiral_nh_2d")
        return {SymmetryOp(pauli_z(), SymFlavor::chiral, SymVariant::nh_az)};
    if (name == "stacked_hn")
        return {SymmetryOp(pauli_x(), SymFlavor::trs, SymVariant::nh_az_dag)};
    throw std::invalid_argument("unknown model name '" + name + "'");
}

cxd default_base_energy(const std::string& name, const Params& params) {
    const Params p = fill_defaults(name, params);
    if (name == "hn") {
        const double gamma = p.at("gamma") < 0.0 ? 2.0 * p.at("delta") * p.at("j") : p.at("gamma");
        return cxd(0.0, -gamma);
    }
    if (name == "chiral_nh_2d") return cxd(0.0, -p.at("j"));
    if (name == "stacked_hn") return cxd(0.0, -p.at("kappa"));
    (void)fill_defaults(name, params);
    return cxd(0.0, 0.0);
}

// --- doubled-cell emitter arrangements -------------------------------------

ThetaLab make_theta_lab(double v, double w, double theta, cxd omega_e, double g, int stripe_d) {
    ThetaLab lab{enlarge_cell(theta_model(v, w, theta), 2),
                 EmitterLayout({1, 1, 0, 0}, omega_e, g, stripe_d),
                 EmitterLayout({1, 0, 0, 1}, omega_e, g, stripe_d)};
    return lab;
}

BlochModel theta_on_cell_effective(const ThetaLab& lab) {
    BlochModel m = effective_bloch(lab.bath, lab.on_cell);
    m.name = "theta_on_cell_mediated";
    return m;
}

BlochModel theta_cell_breaking_effective(const ThetaLab& lab) {
    // chain order: the emitter sitting later in the doubled cell hops toward
    // the next cell, so it plays the first-sublattice role
    BlochModel m = permute_bands(effective_bloch(lab.bath, lab.cell_breaking), {1, 0});
    m.name = "theta_cell_breaking_mediated";
    return m;
}

}  // namespace topolab::zoo
