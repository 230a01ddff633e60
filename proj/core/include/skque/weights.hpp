#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

#include "skque/rational.hpp"

namespace skque {

/// Smooth test window on the positive reals.
///   bump:     exp(1 - 1/(1 - x^2)) with x = (t - center)/scale, zero for |x| >= 1
///   gaussian: exp(-(t - center)^2 / (2 scale^2))
struct TestWindow {
    enum class Kind { bump, gaussian };
    Kind kind = Kind::bump;
    double center = 0.75;
    double scale = 0.25;

    double operator()(double t) const;
    /// Edges of the (effective) support; gaussian windows are truncated at
    /// 12 sigma where they are below 1e-31 of peak.
    double lower() const;
    double upper() const;
};

/// Bump supported on [1/2, 1].
TestWindow standardBump();

/// kappa~(s) = int_0^inf kappa(t) t^{-s-1} dt, the sign-flipped Mellin
/// transform. Requires the support to stay away from 0.
std::complex<double> mellin(const TestWindow& kappa, std::complex<double> s);

/// (1/2 pi i) int_(sigma) kappa~(s) y^s ds, the inversion; equals kappa(y).
double mellinInverse(const TestWindow& kappa, double sigma, double y);

/// Y = [[y1, y3], [y3, y2]].
struct PosDefMatrix {
    double y1 = 1.0;
    double y2 = 1.0;
    double y3 = 0.0;

    double det() const { return y1 * y2 - y3 * y3; }
    bool valid() const { return y1 > 0.0 && det() > 0.0; }
};

/// int_{Y>0} (det Y)^{k-3+s/2} e^{-4 pi Tr(TY)} dY
///   = sqrt(pi) (det T)^{3/2-k-s/2} (4 pi)^{3-2k-s} Gamma(k+s/2-3/2) Gamma(k+s/2-2),
/// valid for Re(k + s/2) > 2.
std::complex<double> siegelGamma(const PosDefMatrix& T, std::complex<double> s,
                                 unsigned long k);

/// The same integral by tensorized Gauss-Legendre quadrature; the oracle for
/// the closed form (real s only).
double siegelGammaQuadrature(const PosDefMatrix& T, double s, unsigned long k);

/// Value represented as mantissa * exp(logScale); the weight functions
/// underflow binary64 well before k = 400.
struct Scaled {
    double mantissa = 0.0;
    double logScale = 0.0;

    double value() const { return mantissa * std::exp(logScale); }
};

/// Ratio a/b computed at a common scale.
double scaledRatio(const Scaled& a, const Scaled& b);

/// Which argument phi_3 receives in the closed-form main term. The source
/// derivation produces -v2/(2 v1); the displayed formula has -v1/(2 v2).
/// The quadrature adjudicates between them.
enum class Phi3Arg { derivation, display };

struct OffDiagWeight {
    Scaled quadrature;
    Scaled mainTerm;
    double relDev = 0.0;  // |quadrature/mainTerm - 1| at common scale
};

/// Off-diagonal archimedean weight for the shifted pair (T, T+L), entering
/// through v1 = 2m + l1, v2 = 2r + l2, v3 = 2n + l3. quadrature integrates
///   e^{-2 pi (v1 (t1 + u^2 t2) + v2 t2 u + v3 t2)} phi1(t1) phi2(t2) phi3(u)
///   t1^{k-3} t2^{k-2} dt1 dt2 du;
/// mainTerm is Gamma(k-2) Gamma(k-3/2) / (sqrt2 (2 pi)^{2k-7/2}
/// (v1 v3 - v2^2/4)^{k-3/2}) * phi1((k-2)/(2 pi v1)) * phi3(arg) *
/// phi2((k-3/2)/(2 pi (v3 - v2^2/(4 v1)))).
OffDiagWeight offDiagWeight(unsigned long k, double v1, double v2, double v3,
                            const TestWindow& phi1, const TestWindow& phi2,
                            const TestWindow& phi3,
                            Phi3Arg variant = Phi3Arg::derivation);

/// |disc T|^{k-3/2} G(T;1,kappa) divided by (4^{-k+3/2} pi^{-2k+7/2}/2)
/// Gamma(k-2) Gamma(k-3/2): the dimensionless weight attached to a class in
/// the spectral mass sum. Contour integral at Re(s) = 4, truncated where the
/// integrand falls below 1e-16 of its peak:
///   (1/2 pi i) int kappa~(s) (4 pi^2 |disc|)^{-s/2}
///                Gamma(k+s/2-2) Gamma(k+s/2-3/2) ds / (Gamma(k-2) Gamma(k-3/2)).
double discWeight(unsigned long k, double absDisc, const TestWindow& kappa);

/// G(T;1,kappa) itself, from discWeight and the log-domain prefactor.
Scaled gT1kappa(const PosDefMatrix& T, unsigned long k, const TestWindow& kappa);

/// G(T;1,kappa) = 1/2 int_{Y>0} kappa(sqrt(det Y)) (det Y)^{k-3}
/// e^{-4 pi Tr(TY)} dY by direct quadrature; cross-check for the contour route.
Scaled gT1kappaQuadrature(const PosDefMatrix& T, unsigned long k, const TestWindow& kappa);

/// det A det B <= det((A+B)/2)^2 for symmetric positive definite 2x2
/// matrices [[x1, x3], [x3, x2]], exact rational arithmetic.
bool matrixAmGmHolds(const Rat& a1, const Rat& a2, const Rat& a3, const Rat& b1,
                     const Rat& b2, const Rat& b3);

}  // namespace skque
