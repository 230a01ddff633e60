#pragma once

#include <cstdint>
#include <vector>

#include "skque/dd.hpp"
#include "skque/jacobi.hpp"
#include "skque/lvalues.hpp"
#include "skque/quadforms.hpp"
#include "skque/util.hpp"

namespace skque {

/// c(N) = b(N) N^{3/4 - k/2}, the analytically normalized half-integral
/// coefficient. N must be a positive index of the table.
double normalizedCoeff(const KohnenTable& b, std::int64_t N);

/// R(D; L) = sum_{j | L} sqrt(j) c(|D| (L/j)^2) for D < 0, D = 0,1 mod 4,
/// L >= 1. Depends on a matrix T only through (disc/content^2, content).
double rDL(const KohnenTable& b, std::int64_t D, std::int64_t L);

/// R(T) for a positive definite even-discriminant form.
double rOfForm(const KohnenTable& b, const BinForm& T);

/// Unit weight by field discriminant: 6, 4, 2 for D = -3, -4, else.
inline int unitWeight(std::int64_t D) { return D == -3 ? 6 : D == -4 ? 4 : 2; }

struct Calibration {
    double kappa = 0.0;   // mean of the per-discriminant ratios
    double relDev = 0.0;  // max |ratio / kappa - 1|
    std::size_t count = 0;
};

/// kappa(d) = b(|d|)^2 |d|^{3/2-k} L(1, sym^2 f) / L(1/2, f x chi_d) over the
/// fundamental d < 0 in dSet; constant in d when b and f correspond under
/// Shimura. Throws when the spread exceeds 10x budget.
Calibration calibrate(const KohnenTable& b, const LambdaTable& lambda, double symSquare,
                      const std::vector<std::int64_t>& dSet, const FactorSieve& sieve,
                      double budget = 1e-5);

/// Same ratios in double-double arithmetic (sym^2 factor still binary64;
/// it is common to every d and cancels from the spread).
Calibration calibrateDD(const KohnenTable& b, const LambdaTableDD& lambda, double symSquare,
                        const std::vector<std::int64_t>& dSet, const FactorSieve& sieve,
                        double budget = 1e-7);

/// Coefficient tables and invariants of one lift: the weight-k Kohnen table,
/// its Shimura correspondent of weight w = 2k-2, and the Waldspurger
/// proportionality constant fixing the mass normalization.
struct SKLift {
    unsigned long k = 0;
    unsigned long w = 0;
    KohnenTable b;
    std::vector<Int> an;    // eigenform coefficients a_f(n), n < an.size()
    std::vector<Int> aps;   // a_f(p) by prime index
    LambdaTable lambda;     // lambda_f(n) out to the calibration range
    double symSquare = 0.0; // L(1, sym^2 f)
    double l32 = 0.0;       // L(3/2, f)
    double kappaStar = 0.0;
    double kappaRelDev = 0.0;
    std::size_t kappaCount = 0;

    bool calibrated() const { return kappaStar > 0.0; }
};

/// Builds b out to index coeffMax and calibrates kappa* on all fundamental
/// |d| <= dmaxCalib. k in {10, 12, 14}. The sieve must cover the twisted
/// L-value range dmaxCalib (w + 45) / (2 pi).
SKLift makeLift(unsigned long k, std::int64_t coeffMax, std::int64_t dmaxCalib,
                const FactorSieve& sieve);

/// |R(D; L)|^2 / (kappa* L(3/2, f)). For fundamental D and L = 1 this equals
/// L(1/2, f x chi_D) / (L(1, sym^2 f) L(3/2, f)).
double normalizedMass(const SKLift& lift, std::int64_t D, std::int64_t L);

/// Mass of a class, read off its (disc/content^2, content).
double massOfForm(const SKLift& lift, const BinForm& T);

/// c_k = Gamma(k) Gamma(k - 1/2) / (3 2^{2k+1} pi^{2k+1/2}).
double ckConstant(unsigned long k);

/// 15 / (2 pi^3): the mass-normalized residue at s = 3/2 of the Dirichlet
/// series over classes, independent of k.
double residueTarget();

/// Negative fundamental discriminants with |d| <= X, |d| ascending.
std::vector<std::int64_t> fundamentalDiscriminants(std::int64_t X, const FactorSieve& sieve);

struct ContentSum {
    double lhs = 0.0;        // sum of masses over classes of disc h^2 d
    double rhsFactor = 0.0;  // h^{1+eps'} sqrt|d| L(1,chi_d) L(1/2,f x chi_d) / L(1,sym^2 f)
    double ratio = 0.0;
};

/// Measures the constant in the content-sum bound: total mass of the classes
/// of discriminant h^2 d against the h^{1+eps'} envelope, d fundamental.
ContentSum contentSumBound(const SKLift& lift, std::int64_t d, std::int64_t h,
                           double epsPrime, const FactorSieve& sieve);

}  // namespace skque
