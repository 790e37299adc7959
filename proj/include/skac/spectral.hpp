#pragma once

// Closed-form eigenpairs of the generator, Sylvester-Kac and Krawtchouk
// matrices, together with exact checks that re-derive each claim by an
// independent route (row identities, characteristic polynomials, null
// vectors of M - lambda I).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "skac/matrices.hpp"
#include "skac/polynomial.hpp"
#include "skac/rational.hpp"

namespace skac {

enum class SpectralSource { ClosedForm, Oracle };

std::string to_string(SpectralSource source);

/// Eigenpairs of M(n, alpha, beta). vectors[k] is the eigenvector u_k for
/// eigenvalues[k], stored unnormalized.
struct SpectralDecomposition {
    ModelParams params;
    std::vector<Rational> eigenvalues;
    std::vector<std::vector<Rational>> vectors;
    SpectralSource source = SpectralSource::ClosedForm;

    long size() const { return static_cast<long>(eigenvalues.size()); }
    /// Entry l of eigenvector k (U[l][k] in matrix terms).
    const Rational& component(long k, long l) const {
        return vectors[static_cast<size_t>(k)][static_cast<size_t>(l)];
    }
};

/// lambda_k = -k (alpha + beta), k = 0..n.
std::vector<Rational> eigenvalues_generator(const ModelParams& params);

/// u_{k,l} = sum_{j=l-k}^{n-k} (-1)^{k+l+j} eta^{n-k-j} C(k, l-j) C(n-k, j),
/// with vanishing out-of-range binomials and 0^0 = 1 when beta = 0.
/// The representative has u_{k,n} = 1. Throws std::out_of_range unless 0 <= k <= n.
std::vector<Rational> eigenvector_generator(const ModelParams& params, long k);

SpectralDecomposition decompose_generator(const ModelParams& params);

/// Same eigenvalues, eigenvectors recovered as null vectors of M - lambda I
/// by back-substitution from the last row with v_n = 1. Independent of the
/// closed-form sum.
SpectralDecomposition decompose_generator_oracle(const ModelParams& params);

/// Null vector of the tridiagonal T - lambda I normalized to v_last = 1,
/// obtained by running the rows bottom-up. Requires a nonzero subdiagonal;
/// returns nullopt when the remaining top-row equation is violated, i.e.
/// lambda is not an eigenvalue.
std::optional<std::vector<Rational>> null_vector_bottom_up(const TridiagonalMatrix& t, const Rational& lambda);

/// T v - lambda v
std::vector<Rational> eigen_residual(const TridiagonalMatrix& t, const Rational& lambda, std::span<const Rational> v);

/// Row-l eigenvalue equation of M divided by alpha, evaluated on u_k:
///   l = 0:        (-n + k + k eta) u_{k,0} + eta u_{k,1}
///   0 < l < n:    (n-l+1) u_{k,l-1} + (k+l-n+(k-l) eta) u_{k,l} + (l+1) eta u_{k,l+1}
///   l = n:        u_{k,n-1} + (k + (k-n) eta) u_{k,n}
/// The closed form is correct iff every value is exactly zero.
Rational verify_row_equation(const ModelParams& params, long k, long l);

/// Same, with u_k supplied (for sweeps that reuse the vector).
Rational row_equation_residual(const ModelParams& params, long k, long l, std::span<const Rational> u);

/// scale (2k - n), k = 0..n
std::vector<Rational> sylvester_kac_spectrum(long n, const Rational& scale = Rational(1));

/// Both sides of the corrected Mazza identity for the progression a_k = k c:
/// lhs = det(lambda I + A_{n+1}), rhs = (lambda^2 - a_n^2) det(lambda I + A_{n-1}).
struct MazzaSides {
    UniPolynomial lhs;
    UniPolynomial rhs;
};

/// det(lambda I + A) as a polynomial in lambda, via (-1)^m charpoly(A)(-lambda).
UniPolynomial det_lambda_plus(const TridiagonalMatrix& a);

MazzaSides mazza_sides(long n, const Rational& c);

/// Throws std::invalid_argument when n < 2.
bool mazza_factorization_check(long n, const Rational& c);

/// 0, -1, ..., -n
std::vector<Rational> krawtchouk_eigenvalues(long n);

/// det(K(p,n) - x I) computed from the monic recurrence with the
/// (-1)^{n+1} order sign applied.
UniPolynomial krawtchouk_det_k_minus_x(const Rational& p, long n);

/// The eigenvector formula for K(p,n) evaluated exactly as stated:
///   u_{k,l} = sum_{j=0}^{min(l,k)} (-1)^{l-j} C(l,j) C(n-j,k-j) p^{-j}.
/// No eigen-property is implied; see classify_eigvec_claim.
std::vector<Rational> krawtchouk_eigenvector_formula(const Rational& p, long n, long k);

/// Right eigenvector of K(p,n)^T (left eigenvector of K) for eigenvalue -k,
/// taken from the generator M(n, p, 1-p) = K(p,n)^T.
std::vector<Rational> krawtchouk_left_eigenvector(const Rational& p, long n, long k);

struct EigvecClassification {
    Rational eigenvalue;
    bool right = false;  // T v = lambda v
    bool left = false;   // v^T T = lambda v^T
    Rational right_residual_l1;
    Rational left_residual_l1;
};

struct EigvecReport {
    std::vector<EigvecClassification> entries;

    bool is_right_eigenvector() const;
    bool is_left_eigenvector() const;
    std::optional<Rational> right_eigenvalue() const;
    std::optional<Rational> left_eigenvalue() const;
    const EigvecClassification* find(const Rational& lambda) const;
};

/// Tests v against every eigenvalue in `spectrum`, both as right and left
/// eigenvector, with exact l1 residuals. Throws on a zero vector or length
/// mismatch.
EigvecReport classify_eigvec_claim(const TridiagonalMatrix& t, std::span<const Rational> v,
                                   std::span<const Rational> spectrum);

}  // namespace skac
