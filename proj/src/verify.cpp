#include "skac/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "skac/dynamics.hpp"
#include "skac/io.hpp"
#include "skac/matrices.hpp"
#include "skac/spectral.hpp"

namespace skac {

namespace {

const std::vector<Rational>& krawtchouk_ps() {
    static const std::vector<Rational> ps{Rational(1, 3), Rational(1, 2), Rational(3, 4)};
    return ps;
}

std::string label(long n, const Rational& a, const Rational& b) {
    return "n=" + std::to_string(n) + " alpha=" + a.to_string() + " beta=" + b.to_string();
}

bool all_zero(const std::vector<Rational>& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

// Records the first failure only.
void fail(CheckResult& r, const std::string& why) {
    if (r.passed) {
        r.passed = false;
        r.detail = why;
    }
}

}  // namespace

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return !c.mandatory || c.passed; });
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& c : checks) {
        nlohmann::json j{{"name", c.name}, {"mandatory", c.mandatory}, {"passed", c.passed}, {"cases", c.cases}};
        if (!c.detail.empty()) j["detail"] = c.detail;
        if (!c.info.is_null()) j["info"] = c.info;
        list.push_back(std::move(j));
    }
    return {{"passed", passed()}, {"checks", list}};
}

std::vector<std::pair<Rational, Rational>> default_rate_pairs() {
    return {{1, 1}, {1, 2}, {3, 5}, {7, 2}, {1, 0}};
}

CheckResult check_generator_eigenvalues(long max_n) {
    CheckResult r{"generator-eigenvalues"};
    for (const auto& [a, b] : default_rate_pairs()) {
        for (long n = 1; n <= max_n; ++n) {
            const ModelParams params(n, a, b);
            const auto p = charpoly_tridiagonal(build_generator(params));
            if (p.degree() != n + 1 || !p.is_monic()) {
                fail(r, label(n, a, b) + ": characteristic polynomial is not monic of degree n+1");
            }
            for (const auto& lambda : eigenvalues_generator(params)) {
                ++r.cases;
                if (!p(lambda).is_zero()) {
                    fail(r, label(n, a, b) + ": charpoly(" + lambda.to_string() + ") != 0");
                }
            }
        }
    }
    return r;
}

CheckResult check_generator_eigenvectors(long max_n) {
    CheckResult r{"generator-eigenvectors"};
    for (const auto& [a, b] : default_rate_pairs()) {
        for (long n = 1; n <= max_n; ++n) {
            const ModelParams params(n, a, b);
            const auto m = build_generator(params);
            const auto d = decompose_generator(params);
            const auto oracle = decompose_generator_oracle(params);
            for (long k = 0; k <= n; ++k) {
                ++r.cases;
                const auto& u = d.vectors[static_cast<size_t>(k)];
                if (all_zero(u)) {
                    fail(r, label(n, a, b) + " k=" + std::to_string(k) + ": zero eigenvector");
                }
                if (!all_zero(eigen_residual(m, d.eigenvalues[static_cast<size_t>(k)], u))) {
                    fail(r, label(n, a, b) + " k=" + std::to_string(k) + ": nonzero residual M u - lambda u");
                }
                if (u != oracle.vectors[static_cast<size_t>(k)]) {
                    fail(r, label(n, a, b) + " k=" + std::to_string(k) + ": differs from null-vector oracle");
                }
            }
        }
    }
    return r;
}

CheckResult check_row_equations(long max_n) {
    CheckResult r{"row-equations"};
    for (const auto& [a, b] : default_rate_pairs()) {
        for (long n = 1; n <= max_n; ++n) {
            const ModelParams params(n, a, b);
            const auto d = decompose_generator(params);
            for (long k = 0; k <= n; ++k) {
                for (long l = 0; l <= n; ++l) {
                    ++r.cases;
                    if (!row_equation_residual(params, k, l, d.vectors[static_cast<size_t>(k)]).is_zero()) {
                        fail(r, label(n, a, b) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
                                    ": row equation residual != 0");
                    }
                }
            }
        }
    }
    return r;
}

CheckResult check_mode_sums(long max_n) {
    CheckResult r{"mode-sums"};
    for (const auto& [a, b] : default_rate_pairs()) {
        for (long n = 1; n <= max_n; ++n) {
            const ModelParams params(n, a, b);
            const auto d = decompose_generator(params);
            const Rational expected0 = pow(Rational(1) + params.eta(), n);
            for (long k = 0; k <= n; ++k) {
                ++r.cases;
                Rational s;
                for (const auto& x : d.vectors[static_cast<size_t>(k)]) s += x;
                if (k == 0 ? s != expected0 : !s.is_zero()) {
                    fail(r, label(n, a, b) + " k=" + std::to_string(k) + ": mode sum is " + s.to_string());
                }
            }
            // c_0 for the empty, full and equilibrium initial states
            for (const auto& q0 : {point_mass(n, 0), point_mass(n, n), equilibrium(n, params.eta())}) {
                ++r.cases;
                const auto c = expansion_coefficients(d, q0);
                if (c.c.front() != Rational(1) / expected0) {
                    fail(r, label(n, a, b) + ": c_0 = " + c.c.front().to_string());
                }
            }
        }
    }
    return r;
}

CheckResult check_equilibrium(long max_n) {
    CheckResult r{"equilibrium"};
    for (const auto& [a, b] : default_rate_pairs()) {
        for (long n = 1; n <= max_n; ++n) {
            ++r.cases;
            const ModelParams params(n, a, b);
            const auto q = equilibrium(n, params.eta());
            if (!all_zero(matvec(build_generator(params), q.exact_entries()))) {
                fail(r, label(n, a, b) + ": M Q' != 0");
            }
            const Rational p = params.fill_probability();
            for (long k = 0; k <= n; ++k) {
                const Rational binomial = Rational(binom(n, k)) * pow(p, k) * pow(Rational(1) - p, n - k);
                if (q.exact_entries()[static_cast<size_t>(k)] != binomial) {
                    fail(r, label(n, a, b) + ": Q'_" + std::to_string(k) + " is not binomial");
                }
            }
            if (average_coverage(params) != Rational(n) * a / (a + b)) {
                fail(r, label(n, a, b) + ": mean coverage != n alpha / (alpha + beta)");
            }
        }
    }
    return r;
}

CheckResult check_sylvester_kac(long max_n) {
    CheckResult r{"sylvester-kac"};
    for (const Rational& c : {Rational(1), Rational(2), Rational(3, 2)}) {
        for (long n = 1; n <= max_n; ++n) {
            ++r.cases;
            const auto spectrum = sylvester_kac_spectrum(n, c);
            const auto p = charpoly_tridiagonal(build_sylvester_kac(n, c));
            if (p != UniPolynomial::from_roots(spectrum)) {
                fail(r, "n=" + std::to_string(n) + " scale=" + c.to_string() + ": charpoly != prod (x - c(2k-n))");
            }
        }
    }
    return r;
}

CheckResult check_mazza(long max_n) {
    CheckResult r{"mazza"};
    for (const Rational& c : {Rational(1), Rational(3, 2)}) {
        for (long n = 2; n <= max_n; ++n) {
            ++r.cases;
            if (!mazza_factorization_check(n, c)) {
                fail(r, "n=" + std::to_string(n) + " c=" + c.to_string() + ": factorization fails");
            }
        }
    }
    return r;
}

CheckResult check_krawtchouk_charpoly(long max_n) {
    CheckResult r{"krawtchouk-charpoly"};
    for (const auto& p : krawtchouk_ps()) {
        for (long n = 1; n <= max_n; ++n) {
            ++r.cases;
            const auto spectrum = krawtchouk_eigenvalues(n);
            const auto product = UniPolynomial::from_roots(spectrum);  // prod (x + k)
            const Rational sign = (n + 1) % 2 == 0 ? Rational(1) : Rational(-1);
            if (krawtchouk_det_k_minus_x(p, n) != product * sign) {
                fail(r, "n=" + std::to_string(n) + " p=" + p.to_string() + ": det(K - xI) != (-1)^(n+1) prod (x+k)");
            }
            if (charpoly_tridiagonal(build_krawtchouk(p, n)) != product) {
                fail(r, "n=" + std::to_string(n) + " p=" + p.to_string() + ": monic charpoly != prod (x+k)");
            }
        }
    }
    return r;
}

CheckResult check_transposition(long max_n) {
    CheckResult r{"transposition"};
    for (const auto& p : krawtchouk_ps()) {
        for (long n = 1; n <= max_n; ++n) {
            ++r.cases;
            const auto k_mat = build_krawtchouk(p, n);
            if (k_mat != transpose(build_generator(ModelParams(n, p, Rational(1) - p)))) {
                fail(r, "n=" + std::to_string(n) + " p=" + p.to_string() + ": K != M(n, p, 1-p)^T");
            }
            const auto kt = transpose(k_mat);
            for (long k = 0; k <= n; ++k) {
                ++r.cases;
                const auto u = krawtchouk_left_eigenvector(p, n, k);
                if (!all_zero(eigen_residual(kt, Rational(-k), u))) {
                    fail(r, "n=" + std::to_string(n) + " p=" + p.to_string() + " k=" + std::to_string(k) +
                                ": K^T u != -k u");
                }
            }
        }
    }
    return r;
}

CheckResult classify_krawtchouk_formula_vectors(long max_n) {
    CheckResult r{"krawtchouk-formula-vectors"};
    r.mandatory = false;
    r.info = nlohmann::json::array();
    long confirmed = 0;
    for (const auto& p : krawtchouk_ps()) {
        for (long n = 1; n <= std::min(max_n, 5L); ++n) {
            const auto k_mat = build_krawtchouk(p, n);
            const auto spectrum = krawtchouk_eigenvalues(n);
            for (long k = 0; k <= n; ++k) {
                ++r.cases;
                const auto v = krawtchouk_eigenvector_formula(p, n, k);
                const auto report = classify_eigvec_claim(k_mat, v, spectrum);
                const auto* claimed = report.find(Rational(-k));
                const bool holds = claimed != nullptr && claimed->right;
                if (holds) ++confirmed;
                auto opt = [](const std::optional<Rational>& x) -> nlohmann::json {
                    return x ? nlohmann::json(x->to_fraction_string()) : nlohmann::json(nullptr);
                };
                r.info.push_back({{"p", p.to_fraction_string()},
                                  {"n", n},
                                  {"k", k},
                                  {"vector", skac::to_json(v)},
                                  {"claimed_eigenvalue", Rational(-k).to_fraction_string()},
                                  {"claim_holds", holds},
                                  {"right_eigenvalue", opt(report.right_eigenvalue())},
                                  {"left_eigenvalue", opt(report.left_eigenvalue())},
                                  {"classification", skac::to_json(report)}});
            }
        }
    }
    r.passed = confirmed == r.cases;
    r.detail = std::to_string(confirmed) + " of " + std::to_string(r.cases) +
               " formula vectors are right eigenvectors of K(p,n) for their stated eigenvalue -k";
    return r;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{
        "generator-eigenvalues", "generator-eigenvectors", "row-equations", "mode-sums",
        "equilibrium",          "sylvester-kac",         "mazza",         "krawtchouk-charpoly",
        "transposition",        "krawtchouk-formula-vectors"};
    return names;
}

VerificationReport run_suite(const std::string& name, long max_n) {
    if (max_n < 1) {
        throw std::invalid_argument("run_suite: max-n must be >= 1");
    }
    static const std::map<std::string, std::function<CheckResult(long)>> table{
        {"generator-eigenvalues", check_generator_eigenvalues},
        {"generator-eigenvectors", check_generator_eigenvectors},
        {"row-equations", check_row_equations},
        {"mode-sums", check_mode_sums},
        {"equilibrium", check_equilibrium},
        {"sylvester-kac", check_sylvester_kac},
        {"mazza", check_mazza},
        {"krawtchouk-charpoly", check_krawtchouk_charpoly},
        {"transposition", check_transposition},
        {"krawtchouk-formula-vectors", classify_krawtchouk_formula_vectors},
    };
    VerificationReport report;
    if (name == "all") {
        for (const auto& s : suite_names()) report.checks.push_back(table.at(s)(max_n));
        return report;
    }
    auto it = table.find(name);
    if (it == table.end()) {
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    report.checks.push_back(it->second(max_n));
    return report;
}

}  // namespace skac
