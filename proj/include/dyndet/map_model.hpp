#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace dyndet {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Polynomial in the map parameter tau, coefficients in ascending powers.
class TauPolynomial {
public:
  TauPolynomial() = default;
  explicit TauPolynomial(std::vector<double> coefficients);

  static TauPolynomial constant(double c) { return TauPolynomial({c}); }
  /// c0 + c1 * tau
  static TauPolynomial linear(double c0, double c1) { return TauPolynomial({c0, c1}); }

  double value(double tau) const;
  double derivative(double tau) const;

  /// q(s) = p(tau0 + s), computed by repeated synthetic division.
  TauPolynomial shifted(double tau0) const;

  /// Upper bound on max |p| over [lo, hi] from the coefficient norm of the
  /// Taylor expansion about the interval centre.
  double max_abs_bound(double lo, double hi) const;

  std::span<const double> coefficients() const { return coefficients_; }

private:
  std::vector<double> coefficients_;
};

/// One term a*sin(2 pi k x) + b*cos(2 pi k x).
struct Harmonic {
  int k = 1;
  double sin_coeff = 0.0;
  double cos_coeff = 0.0;
};

template <typename Real>
struct Jet {
  Real value{};
  Real d1{};
  Real d2{};
};

/// Real trigonometric polynomial c0 + sum_k [a_k sin(2 pi k x) + b_k cos(2 pi k x)]
/// with exact first and second derivatives.
class TrigSeries {
public:
  TrigSeries() = default;
  TrigSeries(double constant, std::vector<Harmonic> harmonics);

  double constant() const { return constant_; }
  std::span<const Harmonic> harmonics() const { return harmonics_; }

  template <typename Real>
  Jet<Real> jet(Real x) const {
    constexpr Real two_pi = 2 * std::numbers::pi_v<Real>;
    Jet<Real> out{static_cast<Real>(constant_), 0, 0};
    for (const auto& h : harmonics_) {
      const Real w = two_pi * static_cast<Real>(h.k);
      const Real s = std::sin(w * x);
      const Real c = std::cos(w * x);
      const Real a = static_cast<Real>(h.sin_coeff);
      const Real b = static_cast<Real>(h.cos_coeff);
      out.value += a * s + b * c;
      out.d1 += w * (a * c - b * s);
      out.d2 -= w * w * (a * s + b * c);
    }
    return out;
  }

  double operator()(double x) const { return jet(x).value; }
  double derivative(double x) const { return jet(x).d1; }

private:
  double constant_ = 0.0;
  std::vector<Harmonic> harmonics_;
};

/// Observables are trigonometric polynomials on the circle [0,1).
using Observable = TrigSeries;

/// The circle map T(x) = L(x) mod 1 at one fixed parameter value, with lift
/// L(x) = degree * x + periodic(x).
class CircleMap {
public:
  CircleMap(int degree, TrigSeries periodic);

  int degree() const { return degree_; }
  const TrigSeries& periodic_part() const { return periodic_; }

  template <typename Real>
  Real lift(Real x) const {
    return static_cast<Real>(degree_) * x + periodic_.jet(x).value;
  }

  /// (L, L', L'') at x.
  template <typename Real>
  Jet<Real> jet(Real x) const {
    Jet<Real> p = periodic_.jet(x);
    p.value += static_cast<Real>(degree_) * x;
    p.d1 += static_cast<Real>(degree_);
    return p;
  }

  double operator()(double x) const;

private:
  int degree_;
  TrigSeries periodic_;
};

struct TauDomain {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double tau) const { return tau >= lo && tau <= hi; }
};

struct HarmonicFamily {
  int k = 1;
  TauPolynomial sin_coeff;
  TauPolynomial cos_coeff;
};

/// tau-parameterised family of lifts
///   L_tau(x) = d x + C(tau) + sum_k [A_k(tau) sin(2 pi k x) + B_k(tau) cos(2 pi k x)]
/// with polynomial coefficient dependence, so tau-derivatives are exact.
class TrigMapFamily {
public:
  TrigMapFamily(int degree, TauPolynomial constant, std::vector<HarmonicFamily> harmonics,
                TauDomain tau_domain);

  /// Pure degree-d map x -> d x mod 1, constant in tau.
  static TrigMapFamily multiply(int degree, TauDomain tau_domain = {-1.0, 1.0});

  int degree() const { return degree_; }
  const TauPolynomial& constant() const { return constant_; }
  std::span<const HarmonicFamily> harmonics() const { return harmonics_; }
  const TauDomain& tau_domain() const { return tau_domain_; }

  /// Freezes the coefficients at tau. Throws DomainError outside tau_domain.
  CircleMap at(double tau) const;

  /// X = d/dtau L_tau as a trigonometric polynomial in x (no domain check).
  TrigSeries tau_derivative(double tau = 0.0) const;

  /// Same family re-parameterised so that the new origin is old tau0.
  TrigMapFamily rebased(double tau0) const;

private:
  int degree_;
  TauPolynomial constant_;
  std::vector<HarmonicFamily> harmonics_;
  TauDomain tau_domain_;
};

/// Weight phi = observable_scale * g + log_derivative_scale * log T'.
/// The SRB weight of parameter u is -u g - log T'.
struct Weight {
  double observable_scale = 0.0;
  double log_derivative_scale = -1.0;

  static Weight srb(double u) { return {-u, -1.0}; }
  static Weight zero() { return {0.0, 0.0}; }
  bool is_srb() const { return log_derivative_scale == -1.0; }
};

/// Reduces x into [0,1); integers map to 0.
double reduce_mod1(double x);

/// Distance on the circle R/Z.
double circle_distance(double a, double b);

double eval_lift(const TrigMapFamily& family, double tau, double x);
Jet<double> eval_jet(const TrigMapFamily& family, double tau, double x);

struct TauJet {
  double X = 0.0;  // d/dtau L_tau(x) at tau = 0
  double X1 = 0.0; // its x-derivative
};
TauJet eval_tau_jet(const TrigMapFamily& family, double x);

/// Certified lower bound on inf_{tau, x} L_tau'(x):
///   d - sum_k 2 pi k (max|A_k| + max|B_k|)  over tau_domain.
/// Throws ExpansionError when the bound does not exceed 1.
double expansion_bound(const TrigMapFamily& family);

} // namespace dyndet
