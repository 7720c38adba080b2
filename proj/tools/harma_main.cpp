// Command-line front end: coefficient tables, validation, simulation,
// spectra, autocovariances, singularity reports and periodograms as
// reproducible CSV/JSON artifacts.

#include "harma/covariance.hpp"
#include "harma/errors.hpp"
#include "harma/io.hpp"
#include "harma/model.hpp"
#include "harma/simulate.hpp"
#include "harma/spectral.hpp"
#include "harma/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitValidation = 3;
constexpr int kExitNumerical = 4;

struct RunConfig {
    std::string command;
    std::string family = "custom";
    std::string variant = "type1";
    int m = 2;
    double nu = 0.0;
    double u = 0.0;
    std::string phi;    // comma-separated
    std::string theta;  // comma-separated
    double sigma2 = 1.0;
    int n = 1000;
    std::uint64_t seed = 1;
    int trunc = -1;  // -1: default_truncation(family)
    int burn_in = -1;
    int lags = 50;
    int points = 1024;
    double tol = 1e-8;
    std::string out;  // empty: stdout
    std::string format = "csv";
    int replicates = 1;
};

// Config file values seed the defaults; explicit flags win.
void apply_config_file(RunConfig& cfg, const std::string& path) {
    const auto kv = harma::io::parse_flat_document_file(path);
    auto s = [&](const char* k, std::string& dst) {
        if (auto it = kv.find(k); it != kv.end()) dst = it->second;
    };
    auto d = [&](const char* k, double& dst) {
        if (auto it = kv.find(k); it != kv.end()) dst = harma::io::parse_double(it->second);
    };
    auto i = [&](const char* k, int& dst) {
        if (auto it = kv.find(k); it != kv.end())
            dst = static_cast<int>(harma::io::parse_double(it->second));
    };
    s("family", cfg.family);
    s("variant", cfg.variant);
    i("m", cfg.m);
    d("nu", cfg.nu);
    d("u", cfg.u);
    s("phi", cfg.phi);
    s("theta", cfg.theta);
    d("sigma2", cfg.sigma2);
    i("n", cfg.n);
    if (auto it = kv.find("seed"); it != kv.end()) cfg.seed = std::stoull(it->second);
    i("trunc", cfg.trunc);
    i("burn_in", cfg.burn_in);
    i("lags", cfg.lags);
    i("points", cfg.points);
    d("tol", cfg.tol);
    s("format", cfg.format);
    i("replicates", cfg.replicates);
}

harma::HarmaModel model_from_config(const RunConfig& cfg) {
    harma::HarmaModel model;
    if (cfg.family != "custom") {
        model.family = harma::specialization(cfg.family, cfg.nu, cfg.u);
    } else {
        model.family.variant = harma::io::variant_from_string(cfg.variant);
        model.family.m = cfg.m;
    }
    model.family.nu = cfg.nu;
    model.family.u = cfg.u;
    model.phi = harma::io::parse_double_list(cfg.phi);
    model.theta = harma::io::parse_double_list(cfg.theta);
    model.sigma2 = cfg.sigma2;
    return model;
}

harma::io::Provenance provenance(const RunConfig& cfg, const harma::HarmaModel& model) {
    harma::io::Provenance prov;
    prov.emplace_back("harma_version", harma::kVersion);
    prov.emplace_back("command", cfg.command);
    prov.emplace_back("family", cfg.family);
    prov.emplace_back("variant", harma::io::to_string(model.family.variant));
    prov.emplace_back("m", std::to_string(model.family.m));
    prov.emplace_back("nu", harma::io::format_double(model.family.nu));
    prov.emplace_back("u", harma::io::format_double(model.family.u));
    prov.emplace_back("phi", harma::io::join_double_list(model.phi));
    prov.emplace_back("theta", harma::io::join_double_list(model.theta));
    prov.emplace_back("sigma2", harma::io::format_double(model.sigma2));
    if (cfg.command == "simulate" || cfg.command == "periodogram") {
        prov.emplace_back("n", std::to_string(cfg.n));
        prov.emplace_back("seed", std::to_string(cfg.seed));
        prov.emplace_back("trunc", std::to_string(cfg.trunc));
        prov.emplace_back("burn_in", std::to_string(cfg.burn_in));
        if (cfg.command == "simulate")
            prov.emplace_back("replicates", std::to_string(cfg.replicates));
    }
    if (cfg.command == "coeffs") prov.emplace_back("trunc", std::to_string(cfg.trunc));
    if (cfg.command == "acvf") {
        prov.emplace_back("lags", std::to_string(cfg.lags));
        prov.emplace_back("trunc", std::to_string(cfg.trunc));
    }
    if (cfg.command == "spectrum") {
        prov.emplace_back("points", std::to_string(cfg.points));
        prov.emplace_back("tol", harma::io::format_double(cfg.tol));
    }
    if (cfg.command == "singularities")
        prov.emplace_back("tol", harma::io::format_double(cfg.tol));
    prov.emplace_back("format", cfg.format);
    prov.emplace_back("model_hash", harma::io::model_hash(model));
    return prov;
}

json provenance_json(const harma::io::Provenance& prov) {
    json j = json::object();
    for (const auto& [k, v] : prov) j[k] = v;
    return j;
}

json value_or_token(double x) {
    if (std::isinf(x)) return json(x > 0 ? "inf" : "-inf");
    if (std::isnan(x)) return json("nan");
    return json(x);
}

void emit(const RunConfig&, const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::invalid_argument("cannot open output file: " + path);
        out << text;
    }
}

std::string render(const RunConfig& cfg, const harma::io::Provenance& prov,
                   const std::function<void(std::ostream&)>& write_csv,
                   const std::function<json()>& make_json) {
    std::ostringstream buf;
    if (cfg.format == "csv") {
        write_csv(buf);
    } else if (cfg.format == "json") {
        json j;
        j["provenance"] = provenance_json(prov);
        j["data"] = make_json();
        buf << j.dump(2) << '\n';
    } else {
        throw std::invalid_argument("unknown format: " + cfg.format);
    }
    return buf.str();
}

int resolved_trunc(const RunConfig& cfg, const harma::HarmaModel& model) {
    return cfg.trunc >= 0 ? cfg.trunc : harma::default_truncation(model.family);
}

int resolved_burn_in(const RunConfig& cfg, const harma::HarmaModel& model, int N) {
    return cfg.burn_in >= 0 ? cfg.burn_in : harma::default_burn_in(model, N);
}

int run_simulate(RunConfig cfg, const harma::HarmaModel& model) {
    const int N = resolved_trunc(cfg, model);
    const int burn = resolved_burn_in(cfg, model, N);
    cfg.trunc = N;
    cfg.burn_in = burn;

    auto one = [&](std::uint64_t seed, const std::string& path) {
        RunConfig c = cfg;
        c.seed = seed;
        const harma::TimeSeries ts = harma::simulate(model, c.n, seed, N, burn);
        for (const auto& w : ts.warnings) std::cerr << "warning: " << w << '\n';
        harma::io::Provenance prov = provenance(c, model);
        prov.emplace_back("generator_id", ts.generator_id);
        const std::string text = render(
            c, prov, [&](std::ostream& os) { harma::io::write_timeseries_csv(os, prov, ts); },
            [&]() {
                json data;
                data["t_start"] = 1;
                json vals = json::array();
                for (double x : ts.values) vals.push_back(value_or_token(x));
                data["x"] = vals;
                return data;
            });
        emit(c, text, path);
    };

    if (cfg.replicates <= 1) {
        one(cfg.seed, cfg.out);
        return kExitOk;
    }

    if (cfg.out.empty())
        throw std::invalid_argument("--replicates requires --out (one file per replicate)");
    const std::filesystem::path base(cfg.out);
    const std::string stem = (base.parent_path() / base.stem()).string();
    const std::string ext = base.extension().string();

    std::vector<std::future<void>> jobs;
    std::vector<std::pair<std::uint64_t, std::string>> manifest_rows;
    for (int r = 0; r < cfg.replicates; ++r) {
        const std::uint64_t seed = cfg.seed + static_cast<std::uint64_t>(r);
        const std::string path = stem + "_rep" + std::to_string(r) + ext;
        manifest_rows.emplace_back(seed, path);
        jobs.push_back(std::async(std::launch::async, one, seed, path));
    }
    for (auto& j : jobs) j.get();

    std::ostringstream manifest;
    harma::io::Provenance prov = provenance(cfg, model);
    harma::io::write_provenance_csv(manifest, prov);
    manifest << "replicate,seed,path\n";
    for (int r = 0; r < cfg.replicates; ++r)
        manifest << r << ',' << manifest_rows[r].first << ',' << manifest_rows[r].second << '\n';
    std::ofstream mf(stem + "_manifest.csv", std::ios::binary);
    if (!mf) throw std::invalid_argument("cannot open manifest file");
    mf << manifest.str();
    return kExitOk;
}

int run_command(RunConfig& cfg) {
    const harma::HarmaModel model = model_from_config(cfg);

    if (cfg.command == "validate") {
        const harma::StationarityReport rep = harma::validate(model);
        const harma::io::Provenance prov = provenance(cfg, model);
        const std::string text = render(
            cfg, prov, [&](std::ostream& os) { harma::io::write_report_csv(os, prov, rep); },
            [&]() {
                json data;
                data["ar_root_moduli"] = rep.ar_root_moduli;
                data["ma_root_moduli"] = rep.ma_root_moduli;
                data["nu_ok"] = rep.nu_ok;
                data["u_ok"] = rep.u_ok;
                data["stationary"] = rep.stationary;
                data["invertible"] = rep.invertible;
                data["boundary_flags"] = rep.boundary_flags;
                return data;
            });
        emit(cfg, text, cfg.out);
        return kExitOk;
    }

    if (cfg.command == "coeffs") {
        cfg.trunc = resolved_trunc(cfg, model);
        const harma::CoeffSeries series = harma::coeff_recurrence(model.family, cfg.trunc);
        harma::io::Provenance prov = provenance(cfg, model);
        prov.emplace_back("method", harma::to_string(series.method));
        if (!series.note.empty()) prov.emplace_back("note", series.note);
        const std::string text = render(
            cfg, prov, [&](std::ostream& os) { harma::io::write_coeffs_csv(os, prov, series); },
            [&]() {
                json data;
                data["values"] = series.values;
                return data;
            });
        emit(cfg, text, cfg.out);
        return kExitOk;
    }

    if (cfg.command == "simulate") return run_simulate(cfg, model);

    if (cfg.command == "spectrum") {
        const harma::SpectrumGrid grid = harma::spectrum_grid(model, cfg.points, cfg.tol);
        const harma::io::Provenance prov = provenance(cfg, model);
        const std::string text = render(
            cfg, prov, [&](std::ostream& os) { harma::io::write_spectrum_csv(os, prov, grid); },
            [&]() {
                json data;
                data["omega"] = grid.omegas;
                json vals = json::array();
                for (double v : grid.values) vals.push_back(value_or_token(v));
                data["value"] = vals;
                json sing = json::array();
                for (const auto& s : grid.singular_omegas)
                    sing.push_back({{"omega", s.omega}, {"tag", harma::to_string(s.tag)}});
                data["singular_omegas"] = sing;
                return data;
            });
        emit(cfg, text, cfg.out);
        return kExitOk;
    }

    if (cfg.command == "acvf") {
        cfg.trunc = std::max(resolved_trunc(cfg, model), cfg.lags);
        const harma::AcvfTable table = harma::acvf_ma(model, cfg.lags, cfg.trunc);
        if (table.tail_warning)
            std::cerr << "warning: truncation tail estimate above 1e-6 * gamma(0); "
                         "increase --trunc or prefer the spectral route\n";
        const harma::io::Provenance prov = provenance(cfg, model);
        const std::string text = render(
            cfg, prov, [&](std::ostream& os) { harma::io::write_acvf_csv(os, prov, table); },
            [&]() {
                json data;
                data["values"] = table.values;
                data["error_estimates"] = table.error_estimates;
                data["method"] = harma::to_string(table.method);
                return data;
            });
        emit(cfg, text, cfg.out);
        return kExitOk;
    }

    if (cfg.command == "singularities") {
        const auto list = harma::singular_frequencies(model.family, cfg.tol);
        const harma::io::Provenance prov = provenance(cfg, model);
        const std::string text = render(
            cfg, prov,
            [&](std::ostream& os) { harma::io::write_singularities_csv(os, prov, list); },
            [&]() {
                json data = json::array();
                for (const auto& s : list)
                    data.push_back({{"omega", s.omega}, {"tag", harma::to_string(s.tag)}});
                return data;
            });
        emit(cfg, text, cfg.out);
        return kExitOk;
    }

    if (cfg.command == "periodogram") {
        const int N = resolved_trunc(cfg, model);
        const int burn = resolved_burn_in(cfg, model, N);
        cfg.trunc = N;
        cfg.burn_in = burn;
        const harma::TimeSeries ts = harma::simulate(model, cfg.n, cfg.seed, N, burn);
        const harma::SpectrumGrid grid = harma::periodogram(ts);
        const harma::io::Provenance prov = provenance(cfg, model);
        const std::string text = render(
            cfg, prov, [&](std::ostream& os) { harma::io::write_spectrum_csv(os, prov, grid); },
            [&]() {
                json data;
                data["omega"] = grid.omegas;
                data["value"] = grid.values;
                return data;
            });
        emit(cfg, text, cfg.out);
        return kExitOk;
    }

    throw std::invalid_argument("unknown command: " + cfg.command);
}

json error_record(const std::string& type, const std::string& message) {
    json j;
    j["error"] = {{"type", type}, {"message", message}};
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"HARMA processes: coefficients, validation, spectra, autocovariance, simulation"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;

    // model/parameter flags shared by all subcommands
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "flat key = value config file");
        sub->add_option("--variant", cfg.variant, "type1 | type2");
        sub->add_option("--family", cfg.family,
                        "gegenbauer | pincherle | horadam | horadam-pethe | custom");
        sub->add_option("--m", cfg.m, "trinomial order (custom family)");
        sub->add_option("--nu", cfg.nu, "fractional exponent");
        sub->add_option("--u", cfg.u, "polynomial argument");
        sub->add_option("--phi", cfg.phi, "AR coefficients, comma-separated");
        sub->add_option("--theta", cfg.theta, "MA coefficients, comma-separated");
        sub->add_option("--sigma2", cfg.sigma2, "innovation variance");
        sub->add_option("--n", cfg.n, "series length");
        sub->add_option("--seed", cfg.seed, "RNG seed");
        sub->add_option("--trunc", cfg.trunc, "filter truncation N");
        sub->add_option("--burn-in", cfg.burn_in, "burn-in length");
        sub->add_option("--lags", cfg.lags, "max lag H");
        sub->add_option("--points", cfg.points, "spectrum grid points");
        sub->add_option("--tol", cfg.tol, "verification / quadrature tolerance");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
        sub->add_option("--format", cfg.format, "csv | json");
        sub->add_option("--replicates", cfg.replicates, "simulate: fan out seeds");
    };

    for (const char* name : {"coeffs", "validate", "simulate", "spectrum", "acvf",
                             "singularities", "periodogram"})
        add_common(app.add_subcommand(name));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << error_record("config-parse", e.what()).dump() << '\n';
        return kExitConfig;
    }

    cfg.command = app.get_subcommands().front()->get_name();

    try {
        if (!config_path.empty()) {
            // config seeds the defaults; re-parse so explicit flags win
            RunConfig fresh;
            apply_config_file(fresh, config_path);
            fresh.command = cfg.command;
            cfg = fresh;
            CLI::App reparse{""};
            reparse.require_subcommand(1);
            for (const char* name : {"coeffs", "validate", "simulate", "spectrum", "acvf",
                                     "singularities", "periodogram"})
                add_common(reparse.add_subcommand(name));
            reparse.parse(argc, argv);
        }
        return run_command(cfg);
    } catch (const harma::ValidationError& e) {
        std::cerr << error_record("validation", e.what()).dump() << '\n';
        return kExitValidation;
    } catch (const harma::NumericalError& e) {
        std::cerr << error_record("numerical", e.what()).dump() << '\n';
        return kExitNumerical;
    } catch (const CLI::ParseError& e) {
        std::cerr << error_record("config-parse", e.what()).dump() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_record("config-parse", e.what()).dump() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << error_record("config-parse", e.what()).dump() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << error_record("numerical", e.what()).dump() << '\n';
        return kExitNumerical;
    }
}
