#pragma once

// Tridiagonal matrices with exact entries and constructors for the three
// families used throughout skac:
//   * the deposition/evaporation generator M(n, alpha, beta), dQ/dt = M Q
//   * the Sylvester-Kac (Clement) matrix, optionally scaled
//   * the Krawtchouk matrix K(p, n)
//
// Band storage is row-indexed: sub[i] sits at (i+1, i) and super[i] at
// (i, i+1), for i = 0 .. order-2.

#include <span>
#include <vector>

#include "skac/polynomial.hpp"
#include "skac/rational.hpp"

namespace skac {

/// Lattice size and rates of the two-state cell model.
/// n >= 1 cells, fill rate alpha > 0, empty rate beta >= 0.
class ModelParams {
public:
    ModelParams(long n, Rational alpha, Rational beta);

    long n() const { return n_; }
    const Rational& alpha() const { return alpha_; }
    const Rational& beta() const { return beta_; }

    /// beta / alpha
    Rational eta() const { return beta_ / alpha_; }
    /// alpha / (alpha + beta), the equilibrium fill probability of one cell.
    Rational fill_probability() const { return alpha_ / (alpha_ + beta_); }
    /// alpha + beta, the gap between consecutive generator eigenvalues.
    Rational total_rate() const { return alpha_ + beta_; }

    friend bool operator==(const ModelParams&, const ModelParams&) = default;

private:
    long n_;
    Rational alpha_;
    Rational beta_;
};

class TridiagonalMatrix {
public:
    /// Throws std::invalid_argument unless diag is nonempty and both bands
    /// have diag.size() - 1 entries.
    TridiagonalMatrix(std::vector<Rational> diag, std::vector<Rational> sub, std::vector<Rational> super);

    long order() const { return static_cast<long>(diag_.size()); }
    const std::vector<Rational>& diag() const { return diag_; }
    const std::vector<Rational>& sub() const { return sub_; }
    const std::vector<Rational>& super() const { return super_; }

    /// Entry (row, col); zero outside the three bands.
    Rational at(long row, long col) const;

    Rational trace() const;

    friend bool operator==(const TridiagonalMatrix&, const TridiagonalMatrix&) = default;

private:
    std::vector<Rational> diag_;
    std::vector<Rational> sub_;
    std::vector<Rational> super_;
};

/// Generator of the occupancy-count chain: order n+1,
/// diag_i = -((n-i) alpha + i beta), (i+1, i) = (n-i) alpha, (i-1, i) = i beta.
TridiagonalMatrix build_generator(const ModelParams& params);

/// Zero diagonal, super = scale*(1..n), sub = scale*(n..1).
TridiagonalMatrix build_sylvester_kac(long n, const Rational& scale = Rational(1));

/// Krawtchouk matrix K(p, n), 0 < p < 1:
/// diag_l = -pn - l(1-2p), (l+1, l) = (l+1)(1-p), (l, l+1) = p(n-l).
TridiagonalMatrix build_krawtchouk(const Rational& p, long n);

/// Exact banded product T v. Throws on length mismatch.
std::vector<Rational> matvec(const TridiagonalMatrix& t, std::span<const Rational> v);

/// v^T T, i.e. T^T v.
std::vector<Rational> vecmat(std::span<const Rational> v, const TridiagonalMatrix& t);

TridiagonalMatrix transpose(const TridiagonalMatrix& t);

/// c * T entrywise.
TridiagonalMatrix scaled(const TridiagonalMatrix& t, const Rational& c);

/// Monic det(xI - T) from the three-term recurrence
///   p_i(x) = (x - d_i) p_{i-1}(x) - sub_{i-1} super_{i-1} p_{i-2}(x).
UniPolynomial charpoly_tridiagonal(const TridiagonalMatrix& t);

/// Column sums; identically zero for a rate generator.
std::vector<Rational> column_sums(const TridiagonalMatrix& t);

}  // namespace skac
