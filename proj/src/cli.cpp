#include "skac/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "skac/dynamics.hpp"
#include "skac/io.hpp"
#include "skac/matrices.hpp"
#include "skac/simulator.hpp"
#include "skac/spectral.hpp"
#include "skac/verify.hpp"

namespace skac {

namespace {

// Usage and config errors surface as exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    long n = 0;
    std::string alpha = "1";
    std::string beta = "1";
    std::string output;
    std::string format = "json";
    std::string precision = "exact";
};

ModelParams make_params(const CommonOptions& o) {
    return ModelParams(o.n, Rational::parse(o.alpha), Rational::parse(o.beta));
}

double parse_time(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "+inf") {
        return std::numeric_limits<double>::infinity();
    }
    size_t used = 0;
    double t = 0.0;
    try {
        t = std::stod(text, &used);
    } catch (const std::exception&) {
        throw UsageError("malformed time '" + text + "'");
    }
    if (used != text.size() || std::isnan(t) || t < 0) {
        throw UsageError("time must be a nonnegative number, got '" + text + "'");
    }
    return t;
}

std::vector<double> parse_times(const std::vector<std::string>& items) {
    std::vector<double> out;
    for (const auto& s : items) out.push_back(parse_time(s));
    return out;
}

std::filesystem::path resolve_output(const std::string& path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv("SKAC_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
            return std::filesystem::path(dir) / p;
        }
    }
    return p;
}

// Writes `text` to --output when given, otherwise to `out`.
void emit(const std::string& text, const std::string& output, std::ostream& out) {
    if (output.empty()) {
        out << text;
        return;
    }
    const auto path = resolve_output(output);
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw UsageError("cannot open output file " + path.string());
    }
    file << text;
}

std::vector<Rational> read_rational_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read initial vector file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    for (char& c : text) {
        if (c == ',' || c == ';') c = ' ';
    }
    std::istringstream tokens(text);
    std::vector<Rational> out;
    std::string tok;
    while (tokens >> tok) out.push_back(Rational::parse(tok));
    return out;
}

ProbabilityVector parse_exact_init(const std::string& spec, const ModelParams& params) {
    const long n = params.n();
    if (spec == "empty") return point_mass(n, 0);
    if (spec == "full") return point_mass(n, n);
    if (spec == "equilibrium") return equilibrium(n, params.eta());
    if (spec.rfind("k=", 0) == 0) {
        const Rational m = Rational::parse(spec.substr(2));
        if (!m.is_integer() || m.sign() < 0 || m > Rational(n)) {
            throw UsageError("--init k=<m> needs an integer 0 <= m <= n");
        }
        return point_mass(n, m.numerator().get_si());
    }
    std::string path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
    if (!std::filesystem::exists(path)) {
        throw UsageError("malformed --init '" + spec + "' (expected empty|full|equilibrium|k=<m>|file:<path>)");
    }
    auto values = read_rational_file(path);
    if (static_cast<long>(values.size()) != n + 1) {
        throw UsageError("initial vector file must hold n + 1 = " + std::to_string(n + 1) + " entries");
    }
    return ProbabilityVector::exact(std::move(values));
}

InitialCondition parse_sim_init(const std::string& spec, long n) {
    if (spec == "empty") return InitialCondition::fixed(0);
    if (spec == "full") return InitialCondition::fixed(n);
    if (spec == "equilibrium") return InitialCondition::equilibrium();
    if (spec.rfind("k=", 0) == 0) {
        const Rational m = Rational::parse(spec.substr(2));
        if (!m.is_integer() || m.sign() < 0 || m > Rational(n)) {
            throw UsageError("--init k=<m> needs an integer 0 <= m <= n");
        }
        return InitialCondition::fixed(m.numerator().get_si());
    }
    if (spec.rfind("bernoulli:", 0) == 0) {
        const double q = Rational::parse(spec.substr(10)).to_double();
        if (!(q >= 0.0 && q <= 1.0)) {
            throw UsageError("--init bernoulli:<q> needs 0 <= q <= 1");
        }
        return InitialCondition::bernoulli(q);
    }
    throw UsageError("malformed --init '" + spec + "' (expected empty|full|equilibrium|k=<m>|bernoulli:<q>)");
}

void add_model_flags(CLI::App* cmd, CommonOptions& o) {
    cmd->add_option("--n", o.n, "number of cells (>= 1)");
    cmd->add_option("--alpha", o.alpha, "fill rate, as num/den or exact decimal")->capture_default_str();
    cmd->add_option("--beta", o.beta, "empty rate, as num/den or exact decimal")->capture_default_str();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int cmd_matrix(const CommonOptions& o, const std::string& kind, const std::string& p, const std::string& scale,
               std::ostream& out) {
    if (o.n < 1) throw UsageError("--n must be >= 1");
    TridiagonalMatrix m = [&] {
        if (kind == "generator") return build_generator(make_params(o));
        if (kind == "sylvester-kac") return build_sylvester_kac(o.n, Rational::parse(scale));
        if (kind == "krawtchouk") return build_krawtchouk(Rational::parse(p), o.n);
        throw UsageError("unknown matrix kind '" + kind + "'");
    }();
    emit(dump(to_json(m)), o.output, out);
    return kExitOk;
}

int cmd_eigen(const CommonOptions& o, const std::string& source, std::ostream& out) {
    const auto params = make_params(o);
    SpectralDecomposition d = source == "oracle" ? decompose_generator_oracle(params) : decompose_generator(params);
    const bool exact = o.precision == "exact";
    if (o.format == "json") {
        emit(dump(exact ? to_json(d) : to_json_float(d)), o.output, out);
        return kExitOk;
    }
    std::ostringstream csv;
    csv << "k,eigenvalue";
    for (long l = 0; l <= params.n(); ++l) csv << ",u" << l;
    csv << "\n";
    auto cell = [exact](const Rational& x) { return exact ? x.to_string() : format_double(x.to_double()); };
    for (long k = 0; k <= params.n(); ++k) {
        csv << k << "," << cell(d.eigenvalues[static_cast<size_t>(k)]);
        for (long l = 0; l <= params.n(); ++l) csv << "," << cell(d.component(k, l));
        csv << "\n";
    }
    emit(csv.str(), o.output, out);
    return kExitOk;
}

int cmd_verify(const std::string& suite, long max_n, const std::string& output, std::ostream& out) {
    VerificationReport report;
    try {
        report = run_suite(suite, max_n);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    emit(dump(report.to_json()), output, out);
    return report.passed() ? kExitOk : kExitVerificationFailed;
}

int cmd_evolve(const CommonOptions& o, const std::string& init, const std::vector<std::string>& times,
               const std::string& oracle, double step, int digits, std::ostream& out) {
    const auto params = make_params(o);
    const auto q0 = parse_exact_init(init, params);
    if (times.empty()) throw UsageError("--t is required");
    if (!oracle.empty() && oracle != "rk4") throw UsageError("unknown oracle '" + oracle + "'");
    if (!(step > 0)) throw UsageError("--step must be > 0");
    if (digits < 1 || digits > 60) throw UsageError("--digits must be in 1..60");

    const bool exact = o.precision == "exact";
    const SpectralSolution solution(params, q0);
    std::vector<TimeSeriesRow> rows;
    for (double t : parse_times(times)) {
        TimeSeriesRow row{t, ProbabilityVector::approximate({0.0}), std::nullopt};
        if (exact && t == 0.0) {
            row.q = ProbabilityVector::exact(solution.at_zero());
        } else if (exact && std::isinf(t)) {
            row.q = ProbabilityVector::exact(solution.limit());
        } else {
            row.q = solution.evaluate(t);
        }
        if (!oracle.empty() && std::isfinite(t)) {
            const auto ref = rk4_oracle(params, q0, t, step);
            std::vector<double> delta;
            for (long k = 0; k <= params.n(); ++k) delta.push_back(row.q[k] - ref[k]);
            row.delta = std::move(delta);
        }
        rows.push_back(std::move(row));
    }
    std::ostringstream csv;
    write_time_series_csv(csv, params, rows, digits);
    emit(csv.str(), o.output, out);
    return kExitOk;
}

struct SimulateOptions {
    std::string config_path;
    long trials = 10000;
    std::uint64_t seed = 0;
    std::vector<std::string> times;
    std::string mode = "count";
    std::string init = "empty";
    unsigned workers = 1;
};

std::string json_scalar_string(const json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_integer()) return std::to_string(j.get<long long>());
    if (j.is_number()) {
        throw UsageError("config: give non-integer rates as strings (\"7/3\", \"0.25\") to keep them exact");
    }
    throw UsageError("config: expected a number or string");
}

int cmd_simulate(CommonOptions o, SimulateOptions s, const CLI::App& sub, std::ostream& out) {
    if (!s.config_path.empty()) {
        std::ifstream in(s.config_path);
        if (!in) throw UsageError("cannot read config " + s.config_path);
        json cfg;
        try {
            cfg = json::parse(in);
        } catch (const json::exception& e) {
            throw UsageError(std::string("config: ") + e.what());
        }
        auto given = [&sub](const char* flag) { return sub.count(flag) > 0; };
        try {
            if (cfg.contains("n") && !given("--n")) o.n = cfg["n"].get<long>();
            if (cfg.contains("alpha") && !given("--alpha")) o.alpha = json_scalar_string(cfg["alpha"]);
            if (cfg.contains("beta") && !given("--beta")) o.beta = json_scalar_string(cfg["beta"]);
            if (cfg.contains("trials") && !given("--trials")) s.trials = cfg["trials"].get<long>();
            if (cfg.contains("seed") && !given("--seed")) s.seed = cfg["seed"].get<std::uint64_t>();
            if (cfg.contains("t") && !given("--t")) {
                s.times.clear();
                for (const auto& t : cfg["t"]) {
                    s.times.push_back(t.is_string() ? t.get<std::string>() : format_double(t.get<double>()));
                }
            }
            if (cfg.contains("mode") && !given("--mode")) s.mode = cfg["mode"].get<std::string>();
            if (cfg.contains("init") && !given("--init")) s.init = cfg["init"].get<std::string>();
            if (cfg.contains("workers") && !given("--workers")) s.workers = cfg["workers"].get<unsigned>();
            if (cfg.contains("format") && !given("--format")) o.format = cfg["format"].get<std::string>();
        } catch (const json::exception& e) {
            throw UsageError(std::string("config: ") + e.what());
        }
        if (!cfg.contains("seed") && !given("--seed")) throw UsageError("a seed is required (--seed or config \"seed\")");
    } else if (sub.count("--seed") == 0) {
        throw UsageError("--seed is required");
    }
    if (s.times.empty()) throw UsageError("--t is required");
    if (s.mode != "count" && s.mode != "per-cell") throw UsageError("--mode must be count or per-cell");
    if (o.format != "json" && o.format != "csv") throw UsageError("--format must be json or csv");

    SimConfig config{make_params(o), s.trials, s.seed, parse_times(s.times),
                     s.mode == "count" ? StateMode::Count : StateMode::PerCell, s.workers};
    for (double t : config.t_grid) {
        if (std::isinf(t)) throw UsageError("simulation times must be finite");
    }
    config.validate();
    const auto init = parse_sim_init(s.init, config.params.n());
    const auto dist = estimate_Qk(config, init);
    if (o.format == "csv") {
        std::ostringstream csv;
        write_empirical_csv(csv, dist);
        emit(csv.str(), o.output, out);
    } else {
        emit(dump(empirical_summary_json(config, dist)), o.output, out);
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"skac: exact spectra, dynamics and Monte Carlo for the deposition/evaporation generator"};
    app.require_subcommand(1);

    CommonOptions common;
    // matrix
    auto* matrix = app.add_subcommand("matrix", "print a tridiagonal matrix as JSON");
    std::string kind = "generator";
    std::string p = "1/2";
    std::string scale = "1";
    add_model_flags(matrix, common);
    matrix->add_option("--kind", kind, "generator | sylvester-kac | krawtchouk")->capture_default_str();
    matrix->add_option("--p", p, "Krawtchouk parameter, 0 < p < 1")->capture_default_str();
    matrix->add_option("--scale", scale, "Sylvester-Kac scale factor")->capture_default_str();
    matrix->add_option("--output", common.output, "output file");

    // eigen
    auto* eigen = app.add_subcommand("eigen", "closed-form eigenpairs of the generator");
    std::string source = "closed-form";
    add_model_flags(eigen, common);
    eigen->add_option("--format", common.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    eigen->add_option("--precision", common.precision, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    eigen->add_option("--source", source, "closed-form | oracle")->check(CLI::IsMember({"closed-form", "oracle"}));
    eigen->add_option("--output", common.output, "output file");

    // verify
    auto* verify = app.add_subcommand("verify", "run exact verification suites");
    std::string suite = "all";
    long max_n = 25;
    verify->add_option("--suite", suite, "suite name or all")->capture_default_str();
    verify->add_option("--max-n", max_n, "largest n swept")->capture_default_str();
    verify->add_option("--output", common.output, "output file");

    // evolve
    auto* evolve = app.add_subcommand("evolve", "Q(t) by spectral expansion");
    std::string init = "empty";
    std::vector<std::string> times;
    std::string oracle;
    double step = 1e-4;
    int digits = 17;
    add_model_flags(evolve, common);
    evolve->add_option("--init", init, "empty | full | equilibrium | k=<m> | file:<path>")->capture_default_str();
    evolve->add_option("--t", times, "grid times (comma separated or repeated; 'inf' allowed)")->delimiter(',');
    evolve->add_option("--oracle", oracle, "rk4 to append spectral-minus-oracle columns");
    evolve->add_option("--step", step, "RK4 step")->capture_default_str();
    evolve->add_option("--digits", digits, "significant digits in the CSV")->capture_default_str();
    evolve->add_option("--precision", common.precision, "exact | float")->check(CLI::IsMember({"exact", "float"}));
    evolve->add_option("--output", common.output, "output file");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of Q_k(t) and coverage");
    SimulateOptions sim;
    add_model_flags(simulate, common);
    simulate->add_option("--config", sim.config_path, "JSON config; flags override its keys");
    simulate->add_option("--trials", sim.trials, "number of independent trials")->capture_default_str();
    simulate->add_option("--seed", sim.seed, "64-bit seed (required)");
    simulate->add_option("--t", sim.times, "grid times (comma separated or repeated)")->delimiter(',');
    simulate->add_option("--mode", sim.mode, "count | per-cell")->capture_default_str();
    simulate->add_option("--init", sim.init, "empty | full | equilibrium | k=<m> | bernoulli:<q>")
        ->capture_default_str();
    simulate->add_option("--workers", sim.workers, "worker threads")->capture_default_str();
    simulate->add_option("--format", common.format, "json | csv");
    simulate->add_option("--output", common.output, "output file");

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (matrix->parsed()) return cmd_matrix(common, kind, p, scale, out);
        if (eigen->parsed()) return cmd_eigen(common, source, out);
        if (verify->parsed()) return cmd_verify(suite, max_n, common.output, out);
        if (evolve->parsed()) return cmd_evolve(common, init, times, oracle, step, digits, out);
        if (simulate->parsed()) return cmd_simulate(common, sim, *simulate, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace skac
