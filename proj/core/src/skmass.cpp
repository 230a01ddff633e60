#include "skque/skmass.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "skque/characters.hpp"
#include "skque/qseries.hpp"

namespace skque {

namespace {

constexpr double kPi = std::numbers::pi;

bool isDiscriminant(std::int64_t D) {
    if (D >= 0) return false;
    std::int64_t m = ((D % 4) + 4) % 4;
    return m == 0 || m == 1;
}

DD ddOfInt(const Int& z) {
    double hi = z.get_d();
    Int rem = z - Int(hi);
    return DD(hi) + DD(rem.get_d());
}

}  // namespace

double normalizedCoeff(const KohnenTable& b, std::int64_t N) {
    if (N <= 0) throw std::invalid_argument("normalizedCoeff: N must be positive");
    double expo = 0.75 - 0.5 * static_cast<double>(b.k);
    return b.at(N).get_d() * std::pow(static_cast<double>(N), expo);
}

double rDL(const KohnenTable& b, std::int64_t D, std::int64_t L) {
    if (!isDiscriminant(D)) throw std::invalid_argument("rDL: D must be negative, 0/1 mod 4");
    if (L <= 0) throw std::invalid_argument("rDL: L must be positive");
    double acc = 0.0;
    for (std::int64_t j = 1; j <= L; ++j) {
        if (L % j != 0) continue;
        std::int64_t q = L / j;
        acc += std::sqrt(static_cast<double>(j)) * normalizedCoeff(b, -D * q * q);
    }
    return acc;
}

double rOfForm(const KohnenTable& b, const BinForm& T) {
    if (!T.isPositiveDefinite()) throw std::invalid_argument("rOfForm: T not positive definite");
    std::int64_t L = T.content();
    return rDL(b, T.disc() / (L * L), L);
}

namespace {

template <typename Ratio, typename Table, typename Central>
Calibration calibrateImpl(const KohnenTable& b, const Table& lambda, double symSquare,
                          const std::vector<std::int64_t>& dSet, const FactorSieve& sieve,
                          double budget, Central central) {
    if (dSet.empty()) throw std::invalid_argument("calibrate: empty discriminant set");
    std::vector<double> ratios;
    ratios.reserve(dSet.size());
    for (std::int64_t d : dSet) {
        if (d >= 0 || !isFundamental(d, sieve))
            throw std::invalid_argument("calibrate: d = " + std::to_string(d) +
                                        " not a negative fundamental discriminant");
        ratios.push_back(Ratio::eval(b, lambda, symSquare, d, sieve, central));
    }
    double mean = 0.0;
    for (double r : ratios) mean += r;
    mean /= static_cast<double>(ratios.size());
    double dev = 0.0;
    for (double r : ratios) dev = std::max(dev, std::abs(r / mean - 1.0));
    if (dev > 10.0 * budget)
        throw std::runtime_error("calibrate: ratio spread " + std::to_string(dev) +
                                 " exceeds budget; table and eigenform do not correspond");
    return {mean, dev, ratios.size()};
}

struct RatioDouble {
    template <typename Central>
    static double eval(const KohnenTable& b, const LambdaTable& lambda, double symSquare,
                       std::int64_t d, const FactorSieve& sieve, Central central) {
        double bd = b.at(-d).get_d();
        double scale = std::pow(static_cast<double>(-d), 1.5 - static_cast<double>(b.k));
        return bd * bd * scale * symSquare / central(d, lambda, sieve);
    }
};

struct RatioDD {
    template <typename Central>
    static double eval(const KohnenTable& b, const LambdaTableDD& lambda, double symSquare,
                       std::int64_t d, const FactorSieve& sieve, Central central) {
        DD bd = ddOfInt(b.at(-d));
        DD scale = ddPowInt(ddSqrt(DD(static_cast<double>(-d))), 3 - 2 * static_cast<long>(b.k));
        DD r = bd * bd * scale * DD(symSquare) / central(d, lambda, sieve);
        return r.value();
    }
};

}  // namespace

Calibration calibrate(const KohnenTable& b, const LambdaTable& lambda, double symSquare,
                      const std::vector<std::int64_t>& dSet, const FactorSieve& sieve,
                      double budget) {
    return calibrateImpl<RatioDouble>(
        b, lambda, symSquare, dSet, sieve, budget,
        [](std::int64_t d, const LambdaTable& lam, const FactorSieve& sv) {
            return centralTwisted(d, 1.0, lam, sv);
        });
}

Calibration calibrateDD(const KohnenTable& b, const LambdaTableDD& lambda, double symSquare,
                        const std::vector<std::int64_t>& dSet, const FactorSieve& sieve,
                        double budget) {
    return calibrateImpl<RatioDD>(
        b, lambda, symSquare, dSet, sieve, budget,
        [](std::int64_t d, const LambdaTableDD& lam, const FactorSieve& sv) {
            return centralTwistedDD(d, 1.0, lam, sv);
        });
}

SKLift makeLift(unsigned long k, std::int64_t coeffMax, std::int64_t dmaxCalib,
                const FactorSieve& sieve) {
    if (k != 10 && k != 12 && k != 14) throw std::invalid_argument("makeLift: k not in {10,12,14}");
    if (coeffMax < dmaxCalib) throw std::invalid_argument("makeLift: coeffMax < dmaxCalib");
    SKLift lift;
    lift.k = k;
    lift.w = 2 * k - 2;
    lift.b = jacobiCuspForm(k, coeffMax, sieve);

    auto nmax = static_cast<std::size_t>(
        static_cast<double>(dmaxCalib) * static_cast<double>(lift.w + 45) / (2.0 * kPi) + 16.0);
    std::size_t terms = std::max<std::size_t>(nmax + 1, 3002);
    if (sieve.limit() < static_cast<std::int64_t>(terms) - 1)
        throw std::invalid_argument("makeLift: sieve limit below the L-value range");

    Eigenform f = eigenform(lift.w, terms);
    lift.an = f.a;
    for (std::int64_t p : sieve.primesUpTo(static_cast<std::int64_t>(terms) - 1))
        lift.aps.push_back(f.a[static_cast<std::size_t>(p)]);
    lift.lambda = lambdaTable(lift.w, nmax, lift.aps, sieve);
    lift.symSquare = symSquareAtOne(lift.w, lift.aps, sieve);
    lift.l32 = lfAt(lift.w, 1.5, lift.an);

    Calibration cal =
        calibrate(lift.b, lift.lambda, lift.symSquare, fundamentalDiscriminants(dmaxCalib, sieve), sieve);
    lift.kappaStar = cal.kappa;
    lift.kappaRelDev = cal.relDev;
    lift.kappaCount = cal.count;
    return lift;
}

double normalizedMass(const SKLift& lift, std::int64_t D, std::int64_t L) {
    if (!lift.calibrated()) throw std::logic_error("normalizedMass: lift not calibrated");
    double r = rDL(lift.b, D, L);
    return r * r / (lift.kappaStar * lift.l32);
}

double massOfForm(const SKLift& lift, const BinForm& T) {
    std::int64_t L = T.content();
    return normalizedMass(lift, T.disc() / (L * L), L);
}

double ckConstant(unsigned long k) {
    double kk = static_cast<double>(k);
    double lg = std::lgamma(kk) + std::lgamma(kk - 0.5) - std::log(3.0) -
                (2.0 * kk + 1.0) * std::log(2.0) - (2.0 * kk + 0.5) * std::log(kPi);
    return std::exp(lg);
}

double residueTarget() { return 15.0 / (2.0 * kPi * kPi * kPi); }

std::vector<std::int64_t> fundamentalDiscriminants(std::int64_t X, const FactorSieve& sieve) {
    if (sieve.limit() < X)
        throw std::invalid_argument("fundamentalDiscriminants: sieve too small");
    std::vector<std::int64_t> out;
    for (std::int64_t n = 3; n <= X; ++n)
        if (isFundamental(-n, sieve)) out.push_back(-n);
    return out;
}

ContentSum contentSumBound(const SKLift& lift, std::int64_t d, std::int64_t h,
                           double epsPrime, const FactorSieve& sieve) {
    if (d >= 0 || !isFundamental(d, sieve))
        throw std::invalid_argument("contentSumBound: d must be negative fundamental");
    if (h <= 0) throw std::invalid_argument("contentSumBound: h must be positive");
    ContentSum cs;
    for (const BinForm& T : enumerateClasses(h * h * d)) cs.lhs += massOfForm(lift, T);
    double lhalf = centralTwisted(d, 1.0, lift.lambda, sieve);
    cs.rhsFactor = std::pow(static_cast<double>(h), 1.0 + epsPrime) *
                   std::sqrt(static_cast<double>(-d)) * dirichletL1(d, sieve) * lhalf /
                   lift.symSquare;
    cs.ratio = cs.lhs / cs.rhsFactor;
    return cs;
}

}  // namespace skque
