#include "cli_common.hpp"

#include <cstdio>

#include "topolab/models.hpp"

namespace topolab::cli {

namespace {

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& where) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : j.items()) {
        bool ok = false;
        for (const auto& a : allowed) ok |= key == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

BC bc_from_string(const std::string& s, const std::string& where) {
    if (s == "open") return BC::open;
    if (s == "periodic") return BC::periodic;
    throw ConfigError(where + ": boundary condition must be 'open' or 'periodic'");
}

std::string bc_to_string(BC bc) { return bc == BC::open ? "open" : "periodic"; }

}  // namespace

json complex_to_json(cxd z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

cxd complex_from_json(const json& j, const std::string& where) {
    reject_unknown_keys(j, {"re", "im"}, where);
    if (!j.contains("re") || !j.contains("im"))
        throw ConfigError(where + ": complex values need both 're' and 'im'");
    return {j["re"].get<double>(), j["im"].get<double>()};
}

Config parse_config(const json& j) {
    reject_unknown_keys(j, {"task", "figure", "model", "layout", "grid", "realspace",
                            "invariant", "output", "seed"},
                        "config");
    Config c;
    if (!j.contains("task")) throw ConfigError("config: missing 'task'");
    c.task = j["task"].get<std::string>();
    const bool known_task = c.task == "invariant" || c.task == "classify" ||
                            c.task == "mediate" || c.task == "figure" || c.task == "table1";
    if (!known_task) throw ConfigError("config: unknown task '" + c.task + "'");

    if (j.contains("figure")) c.figure = j["figure"].get<std::string>();
    if (c.task == "figure") {
        const bool known_fig = c.figure == "fig1" || c.figure == "fig2" || c.figure == "fig3" ||
                               c.figure == "fig4" || c.figure == "fig5" || c.figure == "fig6";
        if (!known_fig)
            throw ConfigError("config: task 'figure' needs 'figure' in fig1..fig6");
    }

    if (j.contains("model")) {
        reject_unknown_keys(j["model"], {"name", "params"}, "config.model");
        if (!j["model"].contains("name"))
            throw ConfigError("config.model: missing 'name'");
        c.model_name = j["model"]["name"].get<std::string>();
        if (c.model_name.empty()) throw ConfigError("config.model: empty model name");
        if (j["model"].contains("params")) {
            for (const auto& [key, value] : j["model"]["params"].items()) {
                if (!value.is_number())
                    throw ConfigError("config.model.params: '" + key + "' must be a number");
                c.model_params[key] = value.get<double>();
            }
        }
    }

    if (j.contains("layout")) {
        const json& l = j["layout"];
        reject_unknown_keys(l, {"pi", "omega_e", "g", "d"}, "config.layout");
        if (!l.contains("pi") || !l.contains("g"))
            throw ConfigError("config.layout: needs 'pi' and 'g'");
        std::vector<int> pi;
        for (const auto& p : l["pi"]) pi.push_back(p.get<int>());
        const cxd omega = l.contains("omega_e")
                              ? complex_from_json(l["omega_e"], "config.layout.omega_e")
                              : cxd(0.0, 0.0);
        const int d = l.contains("d") ? l["d"].get<int>() : 0;
        try {
            c.layout = EmitterLayout(pi, omega, l["g"].get<double>(), d);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("config.layout: ") + e.what());
        }
    }

    if (j.contains("grid")) {
        reject_unknown_keys(j["grid"], {"m"}, "config.grid");
        if (j["grid"].contains("m")) c.grid_m = j["grid"]["m"].get<int>();
    }

    if (j.contains("realspace")) {
        const json& r = j["realspace"];
        reject_unknown_keys(r, {"n_cells", "bc"}, "config.realspace");
        if (r.contains("n_cells")) {
            const auto& n = r["n_cells"];
            if (!n.is_array() || n.empty() || n.size() > 2)
                throw ConfigError("config.realspace.n_cells: expected [nx] or [nx, ny]");
            c.n_cells[0] = n[0].get<int>();
            c.n_cells[1] = n.size() == 2 ? n[1].get<int>() : 1;
        }
        if (r.contains("bc")) {
            const auto& b = r["bc"];
            if (!b.is_array() || b.empty() || b.size() > 2)
                throw ConfigError("config.realspace.bc: expected one or two entries");
            c.bc[0] = bc_from_string(b[0].get<std::string>(), "config.realspace.bc");
            if (b.size() == 2)
                c.bc[1] = bc_from_string(b[1].get<std::string>(), "config.realspace.bc");
        }
    }

    if (j.contains("invariant")) {
        const json& inv = j["invariant"];
        reject_unknown_keys(inv, {"kind", "base"}, "config.invariant");
        if (inv.contains("kind")) c.invariant_kind = inv["kind"].get<std::string>();
        if (inv.contains("base"))
            c.invariant_base = complex_from_json(inv["base"], "config.invariant.base");
    }

    if (j.contains("output")) c.output = j["output"].get<std::string>();
    if (j.contains("seed")) c.seed = j["seed"].get<long>();
    return c;
}

json effective_config(const Config& c) {
    json j;
    j["task"] = c.task;
    if (!c.figure.empty()) j["figure"] = c.figure;
    if (!c.model_name.empty()) {
        json params = json::object();
        for (const auto& [key, value] : c.model_params) params[key] = value;
        j["model"] = json{{"name", c.model_name}, {"params", params}};
    }
    if (c.layout) {
        j["layout"] = json{{"pi", c.layout->pi_diagonal},
                           {"omega_e", complex_to_json(c.layout->omega_e)},
                           {"g", c.layout->g},
                           {"d", c.layout->stripe_d}};
    }
    if (c.grid_m > 0) j["grid"] = json{{"m", c.grid_m}};
    if (c.n_cells[0] > 0) {
        j["realspace"] = json{{"n_cells", std::vector<int>{c.n_cells[0], c.n_cells[1]}},
                              {"bc", std::vector<std::string>{bc_to_string(c.bc[0]),
                                                              bc_to_string(c.bc[1])}}};
    }
    if (!c.invariant_kind.empty() || c.invariant_base) {
        json inv = json::object();
        if (!c.invariant_kind.empty()) inv["kind"] = c.invariant_kind;
        if (c.invariant_base) inv["base"] = complex_to_json(*c.invariant_base);
        j["invariant"] = inv;
    }
    j["output"] = c.output;
    if (c.seed != 0) j["seed"] = c.seed;
    return j;
}

json to_json(const InvariantResult& r) {
    json j;
    j["kind"] = to_string(r.kind);
    j["value"] = r.value;
    j["raw"] = r.raw;
    j["grid_m"] = r.grid_m;
    if (r.base_energy) j["base_energy"] = complex_to_json(*r.base_energy);
    j["residual"] = r.residual;
    j["quantized"] = r.quantized;
    return j;
}

json to_json(const ClassLabel& label) {
    json j;
    j["class"] = to_string(label.name);
    j["variant"] = to_string(label.variant);
    j["trs"] = label.has_trs;
    j["phs"] = label.has_phs;
    j["chiral"] = label.has_chiral;
    j["worst_residual"] = label.worst_residual;
    return j;
}

json to_json(const GapReport& report) {
    json j;
    j["kind"] = report.kind == GapKind::point ? "point" : "line";
    j["base_energy"] = complex_to_json(report.base_energy);
    j["min_distance"] = report.min_distance;
    j["argmin_k"] = std::vector<double>{report.argmin_k[0], report.argmin_k[1]};
    j["gapped"] = report.gapped;
    return j;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) throw topolab::Error("cannot open " + path.string() + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "\n");
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw topolab::Error("cannot open " + path.string() + " for writing");
    out << content;
}

}  // namespace topolab::cli
