#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qwsink/errors.hpp"
#include "qwsink/io.hpp"
#include "qwsink/observables.hpp"
#include "qwsink/propagator.hpp"
#include "qwsink/verify.hpp"
#include "qwsink/wigner.hpp"

namespace {

using namespace qwsink;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const Table& table, const RunConfig& cfg, const std::string& path) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!path.empty()) {
        file.open(path);
        if (!file) throw std::invalid_argument("cannot open output file: " + path);
        os = &file;
    }
    if (cfg.format == "json")
        write_json(*os, table, cfg.to_json());
    else
        write_csv(*os, table);
}

void validate_common(const RunConfig& cfg) {
    if (cfg.s0 < 1) throw std::invalid_argument("s0 must be >= 1");
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::invalid_argument("format must be csv or json");
}

int run_survival(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.dt <= 0.0) throw std::invalid_argument("dt must be > 0");
    if (cfg.t_max < 0.0) throw std::invalid_argument("t-max must be >= 0");
    const WalkParams params(cfg.omega, cfg.kappa);
    Table table;
    table.columns = {"t", "S", "F"};
    const int n = static_cast<int>(std::round(cfg.t_max / cfg.dt));
    for (int j = 0; j <= n; ++j) {
        const TimePoint tp(j * cfg.dt, cfg.omega);
        table.rows.push_back({tp.t, survival(cfg.s0, tp, params, {}, cfg.sites),
                              first_passage_density(cfg.s0, tp, params)});
    }
    emit(table, cfg, cfg.output);
    return 0;
}

int run_pabs(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.eta_list.empty())
        throw std::invalid_argument("pabs needs --eta-list (or eta_list in the config)");
    Table table;
    table.columns = {"s0", "eta", "pabs", "pabs_dual"};
    for (double eta : cfg.eta_list) {
        if (eta < 0.0) throw std::invalid_argument("eta must be >= 0");
        const double p = absorption_probability(cfg.s0, eta);
        const double p_dual = eta == 0.0 ? 0.0 : absorption_probability(cfg.s0, 1.0 / eta);
        table.rows.push_back({static_cast<double>(cfg.s0), eta, p, p_dual});
    }
    emit(table, cfg, cfg.output);
    return 0;
}

std::string snapshot_path(const std::string& base, double t) {
    std::ostringstream val;
    val << t;
    const size_t dot = base.find_last_of('.');
    const size_t slash = base.find_last_of("/\\");
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    const std::string stem = has_ext ? base.substr(0, dot) : base;
    const std::string ext = has_ext ? base.substr(dot) : "";
    return stem + "_t" + val.str() + ext;
}

int run_wigner(const RunConfig& cfg) {
    validate_common(cfg);
    if (cfg.m_max < 2) throw std::invalid_argument("m-max must be >= 2");
    if (cfg.k_nodes <= 2 * cfg.m_max)
        throw std::invalid_argument("k-nodes must exceed 2*m-max");
    const WalkParams params(cfg.omega, cfg.kappa);
    std::vector<double> times = cfg.snapshots;
    if (times.empty()) times.push_back(cfg.t_max);

    for (double t : times) {
        if (t < 0.0) throw std::invalid_argument("snapshot times must be >= 0");
        const TimePoint tp(t, cfg.omega);
        const WignerField field = params.eta > 1.0
            ? wigner_strong_decomposition(cfg.s0, cfg.m_max, cfg.k_nodes, tp, params)
            : wigner_weak_decomposition(cfg.s0, cfg.m_max, cfg.k_nodes, tp, params);

        Table table;
        table.columns = {"m", "x_c", "k", "W_total"};
        for (const auto& [name, values] : field.channels) {
            std::string col = "W_" + name;
            for (char& c : col)
                if (c == '+') c = '_';
            table.columns.push_back(col);
        }
        const int K = field.k_nodes();
        for (int m = 2; m <= field.m_max; ++m) {
            for (int j = 0; j < K; ++j) {
                std::vector<double> row = {static_cast<double>(m), 0.5 * m,
                                           field.k_grid[static_cast<size_t>(j)],
                                           field.at(m, j)};
                for (const auto& [name, values] : field.channels)
                    row.push_back(values[static_cast<size_t>(m - 2) * K +
                                         static_cast<size_t>(j)]);
                table.rows.push_back(std::move(row));
            }
        }
        const std::string path = cfg.output.empty() ? std::string{}
                                                    : snapshot_path(cfg.output, t);
        emit(table, cfg, path);
    }
    return 0;
}

int run_verify(bool quick) {
    const auto results = run_acceptance(quick ? VerifyLevel::Quick : VerifyLevel::Full);
    const bool ok = report_acceptance(std::cout, results);
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    try {
        // The config file seeds the defaults, so it has to be read before the
        // flag values land; flags then override whatever it set.
        for (int i = 1; i < argc; ++i) {
            const std::string arg = argv[i];
            if (arg == "--config" && i + 1 < argc)
                cfg = RunConfig::from_json(slurp(argv[i + 1]));
            else if (arg.rfind("--config=", 0) == 0)
                cfg = RunConfig::from_json(slurp(arg.substr(9)));
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    CLI::App app{"Continuous-time quantum walk on a half line with an absorbing end site"};
    app.require_subcommand(1);
    std::string config_path;

    auto add_model = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config file applied before flags");
        sub->add_option("--omega", cfg.omega, "hopping rate Omega")->capture_default_str();
        sub->add_option("--kappa", cfg.kappa, "absorption rate kappa")->capture_default_str();
        sub->add_option("--s0", cfg.s0, "release site")->capture_default_str();
        sub->add_option("--format", cfg.format, "output format, csv or json")
            ->capture_default_str();
        sub->add_option("--output", cfg.output, "output file (default stdout)");
    };

    std::string eta_list_text, snapshots_text;

    CLI::App* sv = app.add_subcommand("survival", "survival probability and absorbed flux");
    add_model(sv);
    sv->add_option("--t-max", cfg.t_max, "final time")->capture_default_str();
    sv->add_option("--dt", cfg.dt, "time step")->capture_default_str();
    sv->add_option("--sites", cfg.sites, "site-sum cutoff override (0 = automatic)")
        ->capture_default_str();

    CLI::App* pa = app.add_subcommand("pabs", "total absorption probability per eta");
    add_model(pa);
    pa->add_option("--eta-list", eta_list_text, "comma-separated eta values");

    CLI::App* wg = app.add_subcommand("wigner", "phase-space distribution snapshots");
    add_model(wg);
    wg->add_option("--t-max", cfg.t_max, "snapshot time when --snapshots is absent")
        ->capture_default_str();
    wg->add_option("--m-max", cfg.m_max, "largest center index 2x_c")->capture_default_str();
    wg->add_option("--k-nodes", cfg.k_nodes, "k-grid size, must exceed 2*m-max")
        ->capture_default_str();
    wg->add_option("--snapshots", snapshots_text, "comma-separated snapshot times");

    bool quick = false;
    CLI::App* vf = app.add_subcommand("verify", "run the built-in verification suite");
    vf->add_flag("--quick", quick, "reduced grids, a few seconds total");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!eta_list_text.empty()) cfg.eta_list = parse_number_list(eta_list_text);
        if (!snapshots_text.empty()) cfg.snapshots = parse_number_list(snapshots_text);
        if (sv->parsed()) return run_survival(cfg);
        if (pa->parsed()) return run_pabs(cfg);
        if (wg->parsed()) return run_wigner(cfg);
        if (vf->parsed()) return run_verify(quick);
    } catch (const ConvergenceError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const TruncationError& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return 3;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
