// lrdcp: change-point testing for long-range dependent series.
//
// Subcommands: simulate, test, quantiles, power, are. Every emitted table
// embeds schema=1 plus the resolved configuration (seed included), so any
// row can be regenerated from its own metadata. Exit codes: 0 ok, 2 flag
// error, 3 input error, 4 missing prerequisite table entry, 5 internal
// numeric failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "lrdcp/montecarlo.hpp"
#include "lrdcp/series_io.hpp"

using namespace lrdcp;

namespace {

struct GlobalFlags {
    std::uint64_t seed = 0;
    int threads = 0;
    std::string format = "csv";
    std::string output = "-";
};

void add_global_flags(CLI::App* cmd, GlobalFlags& g) {
    cmd->add_option("--seed", g.seed, "base seed (64-bit)")->capture_default_str();
    cmd->add_option("--threads", g.threads, "worker threads, 0 = auto")
        ->capture_default_str();
    cmd->add_option("--format", g.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", g.output, "output path, '-' for stdout")
        ->capture_default_str();
}

// Writes through a stringstream so a failed run never leaves partial output.
void emit(const GlobalFlags& g, const std::string& text) {
    if (g.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw InputError("cannot open '" + g.output + "' for writing");
    out << text;
}

Method parse_method(const std::string& s) {
    if (s == "cusum") return Method::Cusum;
    if (s == "wilcoxon") return Method::Wilcoxon;
    throw CLI::ValidationError("--method", "unknown method '" + s + "'");
}

Sidedness parse_sidedness(const std::string& s) {
    return s == "one" ? Sidedness::OneSided : Sidedness::TwoSided;
}

const char* method_name(Method m) { return m == Method::Cusum ? "cusum" : "wilcoxon"; }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- simulate ----------------------------------------------------------

int cmd_simulate(int n, double hurst, const std::string& transform_name, double tau,
                 std::optional<double> shift, std::optional<double> shift_constant,
                 const GlobalFlags& g) {
    if (n < 2) throw CLI::ValidationError("n", "n must be >= 2");
    const LrdSpec spec(hurst);
    const Transform transform = transform_by_name(transform_name);
    ChangeSpec change;
    change.tau = tau;
    if (shift && shift_constant)
        throw CLI::ValidationError("--shift", "give either --shift or --shift-constant");
    change.shift = shift;
    change.shift_constant = shift_constant;
    if (!shift && !shift_constant) change.shift = 0.0;

    const double h = change.resolve_shift(n, spec);
    if (shift_constant)
        std::fprintf(stderr, "resolved shift: h = %.17g (c = %.17g, n = %d, D = %g)\n", h,
                     *shift_constant, n, spec.d());

    const NoisePath noise = generate_fgn(n, spec, g.seed);
    std::vector<double> x = apply_transform(noise, transform);
    x = inject_shift(std::move(x), tau, h);

    std::ostringstream out;
    write_series(out, x);
    emit(g, out.str());
    return 0;
}

// ---- test --------------------------------------------------------------

int cmd_test(const std::string& input, const std::string& method_name_str,
             const std::string& mode_str, double hurst, double alpha,
             std::optional<double> critical_value, const std::string& quantile_table,
             const std::string& transform_name, const std::string& sidedness_str,
             bool emit_path, const GlobalFlags& g) {
    const Method method = parse_method(method_name_str);
    const Sidedness sidedness = parse_sidedness(sidedness_str);
    const Mode mode = (mode_str == "iid") ? Mode::Iid : Mode::Lrd;

    const std::vector<double> series = read_series_file(input);
    if (series.size() < 2) throw InputError("input series must have length >= 2");
    const int n = static_cast<int>(series.size());

    double crit;
    if (critical_value) {
        crit = *critical_value;
    } else if (!quantile_table.empty()) {
        std::ifstream in(quantile_table);
        if (!in) throw InputError("cannot open quantile table '" + quantile_table + "'");
        const QuantileTable table = QuantileTable::load_csv(in);
        const QuantileEntry* e = table.lookup(
            QuantileKey{alpha, hurst, n, sidedness, method, transform_name});
        if (!e)
            throw MissingQuantile("no critical value for this (alpha, hurst, n, method, "
                                  "transform) in " + quantile_table);
        crit = e->critical_value;
    } else if (mode == Mode::Iid) {
        crit = brownian_bridge_sup_quantile(alpha, sidedness);
    } else {
        throw MissingQuantile("lrd mode needs --critical-value or --quantile-table");
    }

    // lrd mode uses the table scale (hermite factor inside the critical
    // value); iid mode uses the fixed closed-form scales.
    const Normalization norm = (mode == Mode::Lrd)
                                   ? Normalization::lrd(method, n, LrdSpec(hurst))
                                   : Normalization::iid(method, n);
    const TestReport report = test_statistic(series, method, mode, sidedness, norm, crit);

    std::ostringstream out;
    if (g.format == "json") {
        out << "{\n  \"schema\": 1,\n";
        out << "  \"config\": {\"method\": \"" << method_name(method) << "\", \"mode\": \""
            << (mode == Mode::Iid ? "iid" : "lrd") << "\", \"hurst\": " << format_double(hurst)
            << ", \"alpha\": " << format_double(alpha) << ", \"sidedness\": \""
            << sidedness_str << "\", \"input\": \"" << input << "\"},\n";
        out << "  \"statistic\": " << format_double(report.statistic) << ",\n";
        out << "  \"critical_value\": " << format_double(report.critical_value) << ",\n";
        out << "  \"argmax_k\": " << report.argmax_k << ",\n";
        out << "  \"n\": " << n << ",\n";
        out << "  \"reject\": " << (report.reject ? "true" : "false");
        if (emit_path) {
            out << ",\n  \"path\": [";
            for (std::size_t i = 0; i < report.raw_path.size(); ++i)
                out << (i ? "," : "") << format_double(report.raw_path[i]);
            out << "]";
        }
        out << "\n}\n";
    } else {
        out << "schema,method,mode,hurst,alpha,sidedness,n,statistic,critical_value,"
               "argmax_k,reject\n";
        out << "1," << method_name(method) << "," << (mode == Mode::Iid ? "iid" : "lrd")
            << "," << format_double(hurst) << "," << format_double(alpha) << ","
            << sidedness_str << "," << n << "," << format_double(report.statistic) << ","
            << format_double(report.critical_value) << "," << report.argmax_k << ","
            << (report.reject ? "true" : "false") << "\n";
        if (emit_path) {
            out << "k,path\n";
            for (std::size_t i = 0; i < report.raw_path.size(); ++i)
                out << (i + 1) << "," << format_double(report.raw_path[i]) << "\n";
        }
    }
    emit(g, out.str());
    return 0;
}

// ---- quantiles ---------------------------------------------------------

int cmd_quantiles(const std::string& kind, double hurst, std::vector<double> alphas,
                  std::vector<std::string> methods, const std::string& transform_name,
                  std::vector<int> sizes, int grid_n, int reps,
                  const std::string& sidedness_str, const GlobalFlags& g) {
    const Sidedness sidedness = parse_sidedness(sidedness_str);
    if (alphas.empty()) alphas = {0.05};
    if (methods.empty()) methods = {"cusum", "wilcoxon"};
    const Transform transform = transform_by_name(transform_name);

    QuantileTable table;
    if (kind == "asymptotic") {
        const HermiteSummary summary = compute_summary(transform);
        for (double alpha : alphas) {
            const double q =
                asymptotic_quantile(hurst, alpha, sidedness, grid_n, reps, g.seed, g.threads);
            for (const std::string& ms : methods) {
                const Method m = parse_method(ms);
                // critical value on the statistic scale extremum/(n d_n)
                const double scale = (m == Method::Cusum) ? std::fabs(summary.a1)
                                                          : std::fabs(summary.j1_integral);
                table.insert(QuantileKey{alpha, hurst, kAsymptotic, sidedness, m,
                                         transform_name},
                             QuantileEntry{scale * q, reps, grid_n, g.seed, "order-ceil"});
            }
        }
    } else {
        if (sizes.empty()) throw CLI::ValidationError("--n", "finite kind needs sample sizes");
        for (double alpha : alphas) {
            for (int n : sizes) {
                for (const std::string& ms : methods) {
                    const Method m = parse_method(ms);
                    const std::uint64_t seed =
                        derive_seed(g.seed, static_cast<std::uint64_t>(n));
                    const double q = finite_sample_quantile(n, transform, hurst, m, alpha,
                                                            reps, seed, g.threads, sidedness);
                    table.insert(QuantileKey{alpha, hurst, n, sidedness, m, transform_name},
                                 QuantileEntry{q, reps, 0, seed, "order-ceil"});
                }
            }
        }
    }
    std::ostringstream out;
    table.save_csv(out);
    emit(g, out.str());
    return 0;
}

// ---- power -------------------------------------------------------------

// Study files are line-oriented `key = value`; repeated keys form grids.
PowerStudyConfig parse_study_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open study file '" + path + "'");
    PowerStudyConfig config;
    config.methods.clear();
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            bool blank = true;
            for (char c : line) blank &= std::isspace(static_cast<unsigned char>(c)) != 0;
            if (blank) continue;
            throw InputError("study file line " + std::to_string(lineno) +
                             ": expected key = value");
        }
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "n") config.sizes.push_back(std::stoi(value));
            else if (key == "tau") config.taus.push_back(std::stod(value));
            else if (key == "shift") config.shifts.push_back(Shift{false, std::stod(value)});
            else if (key == "shift_constant")
                config.shifts.push_back(Shift{true, std::stod(value)});
            else if (key == "transform") config.transform = value;
            else if (key == "hurst") config.hurst = std::stod(value);
            else if (key == "reps") config.reps = std::stoi(value);
            else if (key == "alpha") config.alpha = std::stod(value);
            else if (key == "method") config.methods.push_back(parse_method(value));
            else if (key == "sidedness") config.sidedness = parse_sidedness(value);
            else
                throw InputError("study file line " + std::to_string(lineno) +
                                 ": unknown key '" + key + "'");
        } catch (const std::invalid_argument&) {
            throw InputError("study file line " + std::to_string(lineno) + ": bad value '" +
                             value + "'");
        }
    }
    if (config.methods.empty()) config.methods = {Method::Cusum, Method::Wilcoxon};
    return config;
}

int cmd_power(const std::string& study_path, const std::string& table_path,
              const GlobalFlags& g) {
    PowerStudyConfig config = parse_study_file(study_path);
    config.base_seed = g.seed;
    config.threads = g.threads;
    std::ifstream in(table_path);
    if (!in) throw InputError("cannot open quantile table '" + table_path + "'");
    const QuantileTable table = QuantileTable::load_csv(in);
    const auto cells = run_power_study(config, table);
    std::ostringstream out;
    if (g.format == "json")
        write_power_json(out, cells, config);
    else
        write_power_csv(out, cells, config);
    emit(g, out.str());
    return 0;
}

// ---- are ---------------------------------------------------------------

int cmd_are(const std::string& transform_name, std::optional<double> d, bool iid,
            const GlobalFlags& g) {
    std::ostringstream out;
    if (iid) {
        const AreResult r = are_iid();
        if (g.format == "json") {
            out << "{\"schema\": 1, \"regime\": \"iid\", \"are\": " << format_double(r.value)
                << ", \"b\": " << format_double(r.b) << "}\n";
        } else {
            out << "schema,regime,are,b\n1,iid," << format_double(r.value) << ","
                << format_double(r.b) << "\n";
        }
        emit(g, out.str());
        return 0;
    }
    if (!d) throw CLI::ValidationError("--d", "lrd regime needs --d (or use --iid)");
    const Transform transform = transform_by_name(transform_name);
    const HermiteSummary s = compute_summary(transform);
    const AreResult r = are_lrd(s, *d);
    if (g.format == "json") {
        out << "{\"schema\": 1, \"regime\": \"lrd\", \"transform\": \"" << transform_name
            << "\", \"d\": " << format_double(*d) << ", \"a1\": " << format_double(s.a1)
            << ", \"j1_integral\": " << format_double(s.j1_integral)
            << ", \"f_sq_integral\": " << format_double(s.f_sq_integral)
            << ", \"shift_ratio\": " << format_double(s.shift_ratio)
            << ", \"are\": " << format_double(r.value) << ", \"b\": " << format_double(r.b)
            << "}\n";
    } else {
        out << "schema,regime,transform,d,a1,j1_integral,f_sq_integral,shift_ratio,are,b\n";
        out << "1,lrd," << transform_name << "," << format_double(*d) << ","
            << format_double(s.a1) << "," << format_double(s.j1_integral) << ","
            << format_double(s.f_sq_integral) << "," << format_double(s.shift_ratio) << ","
            << format_double(r.value) << "," << format_double(r.b) << "\n";
    }
    emit(g, out.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"change-point tests for long-range dependent time series"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a series under the alternative");
    GlobalFlags sim_g;
    int sim_n = 0;
    double sim_hurst = 0.7, sim_tau = 1.0;
    std::string sim_transform = "gaussian";
    std::optional<double> sim_shift, sim_shift_constant;
    sim->add_option("n", sim_n, "sample size")->required();
    sim->add_option("--hurst", sim_hurst, "Hurst parameter in [0.5, 1)")
        ->check(CLI::Range(0.5, 1.0))
        ->capture_default_str();
    sim->add_option("--transform", sim_transform, "gaussian | pareto31")
        ->check(CLI::IsMember({"gaussian", "pareto31"}))
        ->capture_default_str();
    sim->add_option("--tau", sim_tau, "relative break position in [0,1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    sim->add_option("--shift", sim_shift, "absolute level shift h");
    sim->add_option("--shift-constant", sim_shift_constant, "c with h = c n^{-D/2}");
    add_global_flags(sim, sim_g);

    // test
    auto* tst = app.add_subcommand("test", "run a change-point test on a series file");
    GlobalFlags tst_g;
    std::string tst_input, tst_method = "cusum", tst_mode = "lrd", tst_table,
                tst_transform = "gaussian", tst_sidedness = "two";
    double tst_hurst = 0.7, tst_alpha = 0.05;
    std::optional<double> tst_crit;
    bool tst_emit_path = false;
    tst->add_option("--input", tst_input, "series file (one value per line or 1-column csv)")
        ->required();
    tst->add_option("--method", tst_method)->check(CLI::IsMember({"cusum", "wilcoxon"}));
    tst->add_option("--mode", tst_mode)->check(CLI::IsMember({"lrd", "iid"}));
    tst->add_option("--hurst", tst_hurst)->check(CLI::Range(0.5, 1.0))->capture_default_str();
    tst->add_option("--alpha", tst_alpha)->capture_default_str();
    tst->add_option("--critical-value", tst_crit, "explicit critical value");
    tst->add_option("--quantile-table", tst_table, "table produced by `quantiles`");
    tst->add_option("--transform", tst_transform, "table lookup key")->capture_default_str();
    tst->add_option("--sidedness", tst_sidedness)->check(CLI::IsMember({"one", "two"}));
    tst->add_flag("--emit-path", tst_emit_path, "include the unnormalized path");
    add_global_flags(tst, tst_g);

    // quantiles
    auto* qnt = app.add_subcommand("quantiles", "tabulate critical values");
    GlobalFlags qnt_g;
    std::string qnt_kind = "asymptotic", qnt_transform = "gaussian", qnt_sidedness = "two";
    double qnt_hurst = 0.7;
    std::vector<double> qnt_alphas;
    std::vector<std::string> qnt_methods;
    std::vector<int> qnt_sizes;
    int qnt_grid = 8192, qnt_reps = 10000;
    qnt->add_option("--kind", qnt_kind)->check(CLI::IsMember({"asymptotic", "finite"}));
    qnt->add_option("--hurst", qnt_hurst)->check(CLI::Range(0.5, 1.0))->capture_default_str();
    qnt->add_option("--alpha", qnt_alphas, "repeatable");
    qnt->add_option("--method", qnt_methods, "repeatable: cusum, wilcoxon");
    qnt->add_option("--transform", qnt_transform)->capture_default_str();
    qnt->add_option("--n", qnt_sizes, "sample sizes (finite kind), repeatable");
    qnt->add_option("--grid-n", qnt_grid, "bridge grid (asymptotic kind)")
        ->capture_default_str();
    qnt->add_option("--reps", qnt_reps)->capture_default_str();
    qnt->add_option("--sidedness", qnt_sidedness)->check(CLI::IsMember({"one", "two"}));
    add_global_flags(qnt, qnt_g);

    // power
    auto* pwr = app.add_subcommand("power", "run a power study from a study file");
    GlobalFlags pwr_g;
    std::string pwr_study, pwr_table;
    pwr->add_option("--study", pwr_study, "key = value study file")->required();
    pwr->add_option("--quantile-table", pwr_table, "critical values")->required();
    add_global_flags(pwr, pwr_g);

    // are
    auto* are = app.add_subcommand("are", "asymptotic relative efficiency");
    GlobalFlags are_g;
    std::string are_transform = "gaussian";
    std::optional<double> are_d;
    bool are_iid_flag = false;
    are->add_option("--transform", are_transform)
        ->check(CLI::IsMember({"gaussian", "pareto31"}));
    are->add_option("--d", are_d, "LRD parameter D in (0,1)");
    are->add_flag("--iid", are_iid_flag, "iid Gaussian regime");
    add_global_flags(are, are_g);

    try {
        app.parse(argc, argv);
        if (sim->parsed())
            return cmd_simulate(sim_n, sim_hurst, sim_transform, sim_tau, sim_shift,
                                sim_shift_constant, sim_g);
        if (tst->parsed())
            return cmd_test(tst_input, tst_method, tst_mode, tst_hurst, tst_alpha, tst_crit,
                            tst_table, tst_transform, tst_sidedness, tst_emit_path, tst_g);
        if (qnt->parsed())
            return cmd_quantiles(qnt_kind, qnt_hurst, qnt_alphas, qnt_methods, qnt_transform,
                                 qnt_sizes, qnt_grid, qnt_reps, qnt_sidedness, qnt_g);
        if (pwr->parsed()) return cmd_power(pwr_study, pwr_table, pwr_g);
        if (are->parsed()) return cmd_are(are_transform, are_d, are_iid_flag, are_g);
        return 2;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const MissingQuantile& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
}
