#include "nearshift/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace nearshift {

namespace {

constexpr double kZeroMatch = 1e-13;

// Unimodular constant carried by a normalized factor.
Complex factor_constant(Complex a, bool normalized) {
  return normalized ? std::abs(a) / a : Complex{1.0};
}

// Taylor coefficients of (a - z)/(1 - conj(a) z).
TruncatedSeries automorphism_taylor(Complex a, int degree) {
  CVector c(degree + 1);
  c[0] = a;
  const Complex ac = std::conj(a);
  Complex p = 1.0;
  const double scale = -(1.0 - std::norm(a));
  for (int k = 1; k <= degree; ++k, p *= ac) c[k] = scale * p;
  return TruncatedSeries(std::move(c));
}

// sqrt(1-|w|^2)/(1 - conj(w) z).
TruncatedSeries normalized_kernel(Complex w, int degree) {
  CVector c(degree + 1);
  const Complex wc = std::conj(w);
  Complex p = std::sqrt(1.0 - std::norm(w));
  for (int k = 0; k <= degree; ++k, p *= wc) c[k] = p;
  return TruncatedSeries(std::move(c));
}

}  // namespace

FiniteBlaschke::FiniteBlaschke(int origin_multiplicity, std::vector<Complex> zeros,
                               bool normalized, Complex phase)
    : origin_multiplicity_(origin_multiplicity),
      zeros_(std::move(zeros)),
      normalized_(normalized),
      phase_(phase) {
  if (origin_multiplicity_ < 0) throw InvalidInput("origin multiplicity must be nonnegative");
  for (const Complex& a : zeros_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw InvalidInput("Blaschke zero is not finite");
    }
    const double r = std::abs(a);
    if (!(r > 0.0) || !(r < 1.0)) {
      throw InvalidInput("listed Blaschke zeros must satisfy 0 < |a| < 1");
    }
  }
  if (degree() < 1) throw InvalidInput("Blaschke product must have degree at least 1");
  if (std::abs(std::abs(phase_) - 1.0) > 1e-12) throw InvalidInput("phase must be unimodular");
}

FiniteBlaschke FiniteBlaschke::monomial(int m) { return FiniteBlaschke(m, {}, true); }

FiniteBlaschke FiniteBlaschke::automorphism(Complex a) { return FiniteBlaschke(0, {a}, false); }

std::vector<Complex> FiniteBlaschke::ordered_zeros() const {
  std::vector<Complex> out(origin_multiplicity_, Complex{});
  out.insert(out.end(), zeros_.begin(), zeros_.end());
  return out;
}

double FiniteBlaschke::max_zero_modulus() const {
  double r = 0.0;
  for (const Complex& a : zeros_) r = std::max(r, std::abs(a));
  return r;
}

Complex FiniteBlaschke::reduced_value_at_origin() const {
  Complex v = phase_;
  for (const Complex& a : zeros_) v *= factor_constant(a, normalized_) * a;
  return v;
}

FiniteBlaschke FiniteBlaschke::operator*(const FiniteBlaschke& other) const {
  std::vector<Complex> zeros = zeros_;
  zeros.insert(zeros.end(), other.zeros_.begin(), other.zeros_.end());
  if (normalized_ == other.normalized_) {
    return FiniteBlaschke(origin_multiplicity_ + other.origin_multiplicity_, std::move(zeros),
                          normalized_, phase_ * other.phase_);
  }
  // Mixed conventions: keep the value by folding the normalized side's
  // constants into the phase of an unnormalized product.
  Complex phase = phase_ * other.phase_;
  const FiniteBlaschke& norm_side = normalized_ ? *this : other;
  for (const Complex& a : norm_side.zeros_) phase *= factor_constant(a, true);
  return FiniteBlaschke(origin_multiplicity_ + other.origin_multiplicity_, std::move(zeros), false,
                        phase);
}

FiniteBlaschke FiniteBlaschke::power(int k) const {
  if (k < 1) throw InvalidInput("Blaschke power must be positive");
  FiniteBlaschke out = *this;
  for (int i = 1; i < k; ++i) out = out * *this;
  return out;
}

std::optional<FiniteBlaschke> FiniteBlaschke::divide(const FiniteBlaschke& factor) const {
  if (factor.origin_multiplicity_ > origin_multiplicity_) return std::nullopt;
  std::vector<Complex> remaining = zeros_;
  for (const Complex& a : factor.zeros_) {
    auto it = std::find_if(remaining.begin(), remaining.end(),
                           [&](Complex b) { return std::abs(a - b) <= kZeroMatch; });
    if (it == remaining.end()) return std::nullopt;
    remaining.erase(it);
  }
  const int m0 = origin_multiplicity_ - factor.origin_multiplicity_;
  if (m0 + static_cast<int>(remaining.size()) < 1) return std::nullopt;
  // The quotient is only determined up to a unimodular constant; pick the one
  // that keeps this == factor * quotient.
  FiniteBlaschke q(m0, std::move(remaining), normalized_);
  const Complex c = reduced_value_at_origin() /
                    (factor.reduced_value_at_origin() * q.reduced_value_at_origin());
  return FiniteBlaschke(q.origin_multiplicity_, q.zeros_, normalized_, c / std::abs(c));
}

Complex blaschke_eval(const FiniteBlaschke& B, Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput("evaluation point is not finite");
  }
  Complex v = B.phase() * std::pow(z, B.origin_multiplicity());
  for (const Complex& a : B.zeros()) {
    const Complex den = 1.0 - std::conj(a) * z;
    if (std::abs(den) < 1e-300) throw InvalidInput("evaluation at a pole of the Blaschke product");
    v *= factor_constant(a, B.normalized()) * (a - z) / den;
  }
  return v;
}

TruncatedSeries blaschke_taylor(const FiniteBlaschke& B, int degree) {
  TruncatedSeries acc = TruncatedSeries::monomial(B.origin_multiplicity(), degree, B.phase());
  for (const Complex& a : B.zeros()) {
    acc = series_mul(acc, automorphism_taylor(a, degree), degree);
    acc *= factor_constant(a, B.normalized());
  }
  return acc;
}

ModelSpaceBasis model_space_basis(const FiniteBlaschke& B, int degree) {
  if (degree < B.degree() - 1) {
    throw InvalidInput("working degree too small for the model space basis");
  }
  ModelSpaceBasis out{B, {}};
  TruncatedSeries partial = TruncatedSeries::constant(1.0, degree);
  for (const Complex& w : B.ordered_zeros()) {
    out.basis.push_back(series_mul(partial, normalized_kernel(w, degree), degree));
    const TruncatedSeries factor =
        (w == Complex{}) ? TruncatedSeries::monomial(1, degree) : automorphism_taylor(w, degree);
    partial = series_mul(partial, factor, degree);
  }
  return out;
}

CMatrix model_space_matrix(const FiniteBlaschke& B, int degree) {
  const auto mb = model_space_basis(B, degree);
  CMatrix out(degree + 1, B.degree());
  for (int j = 0; j < B.degree(); ++j) out.col(j) = mb.basis[j].coeffs();
  return out;
}

double sup_on_circle(const FiniteBlaschke& B, double s, int grid) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidInput("radius must lie in (0, 1)");
  if (grid < 8) throw InvalidInput("grid too coarse");
  const double two_pi = 2.0 * std::numbers::pi;
  auto modulus = [&](double theta) { return std::abs(blaschke_eval(B, std::polar(s, theta))); };

  int best = 0;
  double best_val = -1.0;
  for (int j = 0; j < grid; ++j) {
    const double v = modulus(two_pi * j / grid);
    if (v > best_val) {
      best_val = v;
      best = j;
    }
  }
  // Golden-section refinement on the bracketing grid cells.
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = two_pi * (best - 1) / grid;
  double hi = two_pi * (best + 1) / grid;
  double x1 = hi - invphi * (hi - lo);
  double x2 = lo + invphi * (hi - lo);
  double f1 = modulus(x1);
  double f2 = modulus(x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + invphi * (hi - lo);
      f2 = modulus(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - invphi * (hi - lo);
      f1 = modulus(x1);
    }
  }
  return std::max({best_val, f1, f2});
}

TruncatedSeries blaschke_taylor_scaled(const FiniteBlaschke& B, double s, int degree) {
  return dilate(blaschke_taylor(B, degree), 1.0 / s);
}

ScaledFactorization scaled_factorization(const FiniteBlaschke& B, double s, int degree) {
  if (!(s > 0.0 && s < 1.0)) throw InvalidInput("radius must lie in (0, 1)");
  if (degree < 0) throw InvalidInput("degree must be nonnegative");
  if (B.max_zero_modulus() >= s) {
    throw PreconditionError("every zero of B must lie inside the disc of radius s");
  }
  const int m0 = B.origin_multiplicity();
  std::vector<Complex> scaled;
  for (const Complex& a : B.zeros()) scaled.push_back(s * a);
  FiniteBlaschke b(m0, std::move(scaled), B.normalized(), B.phase());

  // Factor by factor B(z/s)/b(z) = s^{-m0} prod (1/s)(1 - s conj(a) z)/(1 - conj(a) z/s).
  // Dividing the full expansions instead divides by series with zeros s a_n
  // inside the disc, which amplifies rounding like |s a_n|^{-k}.
  const TruncatedSeries big = blaschke_taylor_scaled(B, s, degree);
  const TruncatedSeries small = blaschke_taylor(b, degree);
  TruncatedSeries F = TruncatedSeries::constant(std::pow(s, -m0), degree);
  for (const Complex& a : B.zeros()) {
    const TruncatedSeries num{1.0 / s, -std::conj(a)};
    const TruncatedSeries den{1.0, -std::conj(a) / s};
    F = series_mul(F, series_div(num, den, degree), degree);
  }

  const TruncatedSeries target = big.truncated(degree);
  const TruncatedSeries prod = series_mul(small, F, degree);
  double residual = 0.0;
  for (int k = 0; k <= degree; ++k) residual = std::max(residual, std::abs(prod[k] - target[k]));

  double min_mod = std::numeric_limits<double>::infinity();
  const int radii = 16;
  const int angles = 256;
  for (int i = 0; i <= radii; ++i) {
    const double r = static_cast<double>(i) / radii;
    for (int j = 0; j < angles; ++j) {
      const Complex z = std::polar(r, 2.0 * std::numbers::pi * j / angles);
      min_mod = std::min(min_mod, std::abs(series_eval(F, z)));
      if (i == 0) break;
    }
  }
  return {std::move(b), std::move(F), s, residual, min_mod};
}

}  // namespace nearshift
