#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cldpt/errors.hpp"
#include "cldpt/limits.hpp"
#include "cldpt/model.hpp"
#include "cldpt/report_io.hpp"
#include "cldpt/spectra.hpp"
#include "cldpt/suite.hpp"

namespace {

using cldpt::format_g17;

struct Options {
    std::string model = "J1";
    double g = 2.0;
    double h = 3.0;
    double ell = 0.5;
    int n_max = 4;
    int grid_points = 2000;
    int quad_order = 80;
    double tol_residual = 1e-8;
    double tol_quad = 1e-9;
    double tol_fd = 1e-6;
    std::uint64_t seed = 987654321ull;
    std::string format = "csv";
    std::string output;
    std::string config_path;
    std::vector<double> h_values = {1e2, 1e3, 1e4};
    double x_radial = 1.0;
    bool h_supplied = false;
};

void add_common(CLI::App* s, Options& o) {
    s->set_help_flag("--help", "print this help message and exit");
    s->add_option("--model", o.model, "model family: J1 (trig) or L1 (radial)")
        ->check(CLI::IsMember({"J1", "L1"}));
    s->add_option("--g", o.g, "wall coupling g");
    s->add_option("--h", o.h, "barrier coupling h (trig model only)");
    s->add_option("--ell", o.ell, "continuous deformation degree");
    s->add_option("--n-max", o.n_max, "highest level index in tables and checks");
    s->add_option("--grid-points", o.grid_points, "scan grid size");
    s->add_option("--quad-order", o.quad_order, "quadrature order for norm checks");
    s->add_option("--tol-residual", o.tol_residual, "identity residual tolerance");
    s->add_option("--tol-quad", o.tol_quad, "quadrature agreement tolerance");
    s->add_option("--seed", o.seed, "seed echoed into reports");
    s->add_option("--format", o.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    s->add_option("--output", o.output, "output file (default stdout)");
    s->add_option("--config", o.config_path, "JSON config file; flags override its keys");
}

// flags win over config keys; config keys win over defaults
void apply_config(CLI::App* sub, Options& o) {
    if (o.config_path.empty()) return;
    std::ifstream f(o.config_path, std::ios::binary);
    if (!f) throw cldpt::ParameterError("config file not readable: " + o.config_path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw cldpt::ParameterError(std::string("config file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw cldpt::ParameterError("config file must hold a JSON object");
    auto flag_unset = [&](const char* name) {
        return sub->get_option(name)->count() == 0;
    };
    for (const auto& [key, val] : j.items()) {
        try {
            if (key == "model") {
                if (flag_unset("--model")) o.model = val.get<std::string>();
                if (o.model != "J1" && o.model != "L1")
                    throw cldpt::ParameterError("config model must be J1 or L1");
            } else if (key == "g") {
                if (flag_unset("--g")) o.g = val.get<double>();
            } else if (key == "h") {
                if (flag_unset("--h")) o.h = val.get<double>();
                o.h_supplied = true;
            } else if (key == "ell") {
                if (flag_unset("--ell")) o.ell = val.get<double>();
            } else if (key == "n_max") {
                if (flag_unset("--n-max")) o.n_max = val.get<int>();
            } else if (key == "grid_points") {
                if (flag_unset("--grid-points")) o.grid_points = val.get<int>();
            } else if (key == "quad_order") {
                if (flag_unset("--quad-order")) o.quad_order = val.get<int>();
            } else if (key == "tol_residual") {
                if (flag_unset("--tol-residual")) o.tol_residual = val.get<double>();
            } else if (key == "tol_quad") {
                if (flag_unset("--tol-quad")) o.tol_quad = val.get<double>();
            } else if (key == "tol_fd") {
                o.tol_fd = val.get<double>();
            } else if (key == "seed") {
                if (flag_unset("--seed")) o.seed = val.get<std::uint64_t>();
            } else if (key == "format") {
                if (flag_unset("--format")) o.format = val.get<std::string>();
                if (o.format != "csv" && o.format != "json")
                    throw cldpt::ParameterError("config format must be csv or json");
            } else if (key == "h_values") {
                o.h_values = val.get<std::vector<double>>();
                if (o.h_values.empty())
                    throw cldpt::ParameterError("config h_values must not be empty");
            } else if (key == "x_radial") {
                o.x_radial = val.get<double>();
            } else {
                throw cldpt::ParameterError("unknown config key: " + key);
            }
        } catch (const nlohmann::json::exception&) {
            throw cldpt::ParameterError("config key has the wrong type: " + key);
        }
    }
}

int write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fputs(text.c_str(), stdout);
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::fprintf(stderr, "cldpt: cannot open output file: %s\n", path.c_str());
        return 1;
    }
    f << text;
    return f.good() ? 0 : 1;
}

cldpt::Params make_params(cldpt::ModelKind m, const Options& o) {
    if (m == cldpt::ModelKind::L1 && o.h_supplied)
        throw cldpt::ParameterError("the radial model has no h parameter; drop --h");
    cldpt::Params p;
    p.g = o.g;
    p.ell = o.ell;
    if (m == cldpt::ModelKind::J1) p.h = o.h;
    return p;
}

std::vector<std::pair<std::string, std::string>> param_meta(const char* cmd,
                                                            cldpt::ModelKind m,
                                                            const cldpt::Params& p,
                                                            const Options& o) {
    std::vector<std::pair<std::string, std::string>> meta;
    meta.emplace_back("command", cmd);
    meta.emplace_back("model", cldpt::model_name(m));
    meta.emplace_back("g", format_g17(p.g));
    if (p.h) meta.emplace_back("h", format_g17(*p.h));
    meta.emplace_back("ell", format_g17(p.ell));
    meta.emplace_back("n_max", std::to_string(o.n_max));
    return meta;
}

int run_tabulate(const Options& o) {
    const cldpt::ModelKind m = o.model == "J1" ? cldpt::ModelKind::J1 : cldpt::ModelKind::L1;
    const cldpt::Params p = make_params(m, o);
    cldpt::require_deform_valid(m, p, "tabulate");
    if (o.n_max < 0 || o.grid_points < 2)
        throw cldpt::ParameterError("tabulate needs n_max >= 0 and grid_points >= 2");
    cldpt::Table t;
    t.meta = param_meta("tabulate", m, p, o);
    t.meta.emplace_back("grid_points", std::to_string(o.grid_points));
    t.columns = {"x", "eta", "V", "psi_ell"};
    for (int n = 0; n <= o.n_max; ++n) t.columns.push_back("phi_ell_" + std::to_string(n));
    for (double x : cldpt::scan_grid(m, o.grid_points)) {
        std::vector<double> row;
        row.reserve(t.columns.size());
        row.push_back(x);
        row.push_back(cldpt::eta_of_x(m, x));
        row.push_back(cldpt::def_potential(m, p, x));
        row.push_back(cldpt::def_psi(m, p, x));
        for (int n = 0; n <= o.n_max; ++n) row.push_back(cldpt::def_phi(m, p, n, x));
        t.rows.push_back(std::move(row));
    }
    return write_output(cldpt::table_serialize(t, o.format), o.output);
}

int run_spectrum(const Options& o) {
    const cldpt::ModelKind m = o.model == "J1" ? cldpt::ModelKind::J1 : cldpt::ModelKind::L1;
    const cldpt::Params p = make_params(m, o);
    cldpt::require_deform_valid(m, p, "spectrum");
    if (o.n_max < 0) throw cldpt::ParameterError("spectrum needs n_max >= 0");
    cldpt::Table t;
    t.meta = param_meta("spectrum", m, p, o);
    t.columns = {"n", "E", "h_norm"};
    for (int n = 0; n <= o.n_max; ++n)
        t.rows.push_back({static_cast<double>(n), cldpt::def_energy(m, p, n),
                          cldpt::def_norm(m, p, n)});
    return write_output(cldpt::table_serialize(t, o.format), o.output);
}

int run_verify(const Options& o) {
    const cldpt::ModelKind m = o.model == "J1" ? cldpt::ModelKind::J1 : cldpt::ModelKind::L1;
    const cldpt::Params p = make_params(m, o);
    cldpt::SuiteConfig cfg;
    cfg.n_max = o.n_max;
    cfg.grid_points = o.grid_points;
    cfg.quad_order = o.quad_order;
    cfg.tol_residual = o.tol_residual;
    cfg.tol_quad = o.tol_quad;
    cfg.tol_fd = o.tol_fd;
    cfg.seed = o.seed;
    const cldpt::VerificationReport rep = cldpt::run_invariant_suite(m, p, cfg);
    const int io_rc = write_output(cldpt::report_serialize(rep), o.output);
    if (io_rc != 0) return io_rc;
    if (rep.all_pass) return 0;
    const bool gate_only =
        rep.entries.size() == 1 && rep.entries[0].name == "parameter_validation";
    return gate_only ? 2 : 1;
}

int run_limit(const Options& o) {
    const cldpt::LimitRecord rec =
        cldpt::jacobi_to_laguerre_limit(o.g, o.ell, o.h_values, o.x_radial);
    cldpt::Table t;
    t.meta.emplace_back("command", "limit");
    t.meta.emplace_back("g", format_g17(o.g));
    t.meta.emplace_back("ell", format_g17(o.ell));
    t.meta.emplace_back("x_radial", format_g17(o.x_radial));
    t.meta.emplace_back("xi_exponent", format_g17(rec.xi_exponent));
    t.meta.emplace_back("base_exponent", format_g17(rec.base_exponent));
    t.meta.emplace_back("twist_exponent", format_g17(rec.twist_exponent));
    t.columns = {"h", "xi_err", "base_err", "twist_err"};
    for (std::size_t k = 0; k < rec.h_values.size(); ++k)
        t.rows.push_back({rec.h_values[k], rec.xi_err[k], rec.base_err[k], rec.twist_err[k]});
    return write_output(cldpt::table_serialize(t, o.format), o.output);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"shape-invariantly deformed solvable systems: tables, spectra, checks"};
    app.set_help_flag("--help", "print this help message and exit");
    Options o;
    CLI::App* tab = app.add_subcommand(
        "tabulate", "write potential, ground-state weight, and bound states over the scan grid");
    CLI::App* spc = app.add_subcommand("spectrum", "write energy levels and squared norms");
    CLI::App* ver =
        app.add_subcommand("verify", "run the full invariant suite and write a JSON report");
    CLI::App* lim = app.add_subcommand(
        "limit", "measure the trig-to-radial rescaling gap across twist scales (uses --g, "
                 "--ell, and config keys h_values / x_radial; --model and --h are ignored)");
    for (CLI::App* s : {tab, spc, ver, lim}) add_common(s, o);
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    CLI::App* active = nullptr;
    for (CLI::App* s : {tab, spc, ver, lim})
        if (s->parsed()) active = s;

    try {
        apply_config(active, o);
        o.h_supplied = o.h_supplied || active->get_option("--h")->count() > 0;
        if (active == tab) return run_tabulate(o);
        if (active == spc) return run_spectrum(o);
        if (active == ver) return run_verify(o);
        return run_limit(o);
    } catch (const cldpt::ParameterError& e) {
        std::fprintf(stderr, "cldpt: %s\n", e.what());
        return 2;
    } catch (const cldpt::DomainError& e) {
        std::fprintf(stderr, "cldpt: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "cldpt: %s\n", e.what());
        return 1;
    }
}
