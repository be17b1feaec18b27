#include "dyndet/map_model.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "dyndet/errors.hpp"

namespace dyndet {

TauPolynomial::TauPolynomial(std::vector<double> coefficients)
    : coefficients_(std::move(coefficients)) {
  while (coefficients_.size() > 1 && coefficients_.back() == 0.0)
    coefficients_.pop_back();
}

double TauPolynomial::value(double tau) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it)
    acc = acc * tau + *it;
  return acc;
}

double TauPolynomial::derivative(double tau) const {
  double acc = 0.0;
  for (std::size_t j = coefficients_.size(); j-- > 1;)
    acc = acc * tau + static_cast<double>(j) * coefficients_[j];
  return acc;
}

TauPolynomial TauPolynomial::shifted(double tau0) const {
  std::vector<double> c = coefficients_;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k)
    for (std::size_t j = n - 1; j-- > k;)
      c[j] += tau0 * c[j + 1];
  return TauPolynomial(std::move(c));
}

double TauPolynomial::max_abs_bound(double lo, double hi) const {
  const double centre = 0.5 * (lo + hi);
  const double radius = 0.5 * (hi - lo);
  const TauPolynomial q = shifted(centre);
  double bound = 0.0;
  double power = 1.0;
  for (double c : q.coefficients()) {
    bound += std::fabs(c) * power;
    power *= radius;
  }
  // Covers rounding in the shift and the sum.
  return bound * (1.0 + 1e-12);
}

TrigSeries::TrigSeries(double constant, std::vector<Harmonic> harmonics)
    : constant_(constant), harmonics_(std::move(harmonics)) {
  for (const auto& h : harmonics_)
    if (h.k < 1)
      throw InputError("harmonic index must be >= 1, got " + std::to_string(h.k));
}

CircleMap::CircleMap(int degree, TrigSeries periodic)
    : degree_(degree), periodic_(std::move(periodic)) {
  if (degree_ < 2)
    throw InputError("map degree must be >= 2, got " + std::to_string(degree_));
}

double CircleMap::operator()(double x) const { return reduce_mod1(lift(x)); }

TrigMapFamily::TrigMapFamily(int degree, TauPolynomial constant,
                             std::vector<HarmonicFamily> harmonics, TauDomain tau_domain)
    : degree_(degree), constant_(std::move(constant)), harmonics_(std::move(harmonics)),
      tau_domain_(tau_domain) {
  if (degree_ < 2)
    throw InputError("map degree must be >= 2, got " + std::to_string(degree_));
  if (!(tau_domain_.lo <= tau_domain_.hi))
    throw InputError("tau_domain must satisfy lo <= hi");
  for (const auto& h : harmonics_)
    if (h.k < 1)
      throw InputError("harmonic index must be >= 1, got " + std::to_string(h.k));
}

TrigMapFamily TrigMapFamily::multiply(int degree, TauDomain tau_domain) {
  return TrigMapFamily(degree, TauPolynomial::constant(0.0), {}, tau_domain);
}

CircleMap TrigMapFamily::at(double tau) const {
  if (!tau_domain_.contains(tau))
    throw DomainError("tau = " + std::to_string(tau) + " outside tau_domain [" +
                      std::to_string(tau_domain_.lo) + ", " + std::to_string(tau_domain_.hi) +
                      "]");
  std::vector<Harmonic> hs;
  hs.reserve(harmonics_.size());
  for (const auto& h : harmonics_)
    hs.push_back({h.k, h.sin_coeff.value(tau), h.cos_coeff.value(tau)});
  return CircleMap(degree_, TrigSeries(constant_.value(tau), std::move(hs)));
}

TrigSeries TrigMapFamily::tau_derivative(double tau) const {
  std::vector<Harmonic> hs;
  hs.reserve(harmonics_.size());
  for (const auto& h : harmonics_)
    hs.push_back({h.k, h.sin_coeff.derivative(tau), h.cos_coeff.derivative(tau)});
  return TrigSeries(constant_.derivative(tau), std::move(hs));
}

TrigMapFamily TrigMapFamily::rebased(double tau0) const {
  if (!tau_domain_.contains(tau0))
    throw DomainError("rebase point " + std::to_string(tau0) + " outside tau_domain");
  std::vector<HarmonicFamily> hs;
  hs.reserve(harmonics_.size());
  for (const auto& h : harmonics_)
    hs.push_back({h.k, h.sin_coeff.shifted(tau0), h.cos_coeff.shifted(tau0)});
  return TrigMapFamily(degree_, constant_.shifted(tau0), std::move(hs),
                       {tau_domain_.lo - tau0, tau_domain_.hi - tau0});
}

double reduce_mod1(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0)
    r = 0.0;
  return r;
}

double circle_distance(double a, double b) {
  const double d = reduce_mod1(a - b);
  return std::min(d, 1.0 - d);
}

double eval_lift(const TrigMapFamily& family, double tau, double x) {
  return family.at(tau).lift(x);
}

Jet<double> eval_jet(const TrigMapFamily& family, double tau, double x) {
  return family.at(tau).jet(x);
}

TauJet eval_tau_jet(const TrigMapFamily& family, double x) {
  const Jet<double> j = family.tau_derivative(0.0).jet(x);
  return {j.value, j.d1};
}

double expansion_bound(const TrigMapFamily& family) {
  const auto& dom = family.tau_domain();
  double deficit = 0.0;
  for (const auto& h : family.harmonics()) {
    const double w = kTwoPi * h.k;
    deficit += w * (h.sin_coeff.max_abs_bound(dom.lo, dom.hi) +
                    h.cos_coeff.max_abs_bound(dom.lo, dom.hi));
  }
  const double bound = static_cast<double>(family.degree()) - deficit;
  if (!(bound > 1.0))
    throw ExpansionError("not uniformly expanding: certified bound d - sum 2 pi k (|A_k|+|B_k|) = " +
                         std::to_string(bound) + " <= 1");
  return bound;
}

} // namespace dyndet
