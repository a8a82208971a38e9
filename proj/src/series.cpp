#include "nearshift/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nearshift {

namespace {

void require_finite(const CVector& c) {
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    if (!std::isfinite(c[k].real()) || !std::isfinite(c[k].imag())) {
      throw InvalidInput("series coefficient " + std::to_string(k) + " is not finite");
    }
  }
}

void require_degree(int degree) {
  if (degree < 0) throw InvalidInput("series degree must be nonnegative");
}

}  // namespace

TruncatedSeries::TruncatedSeries(int degree) {
  require_degree(degree);
  coeffs_ = CVector::Zero(degree + 1);
}

TruncatedSeries::TruncatedSeries(CVector coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() == 0) throw InvalidInput("series needs at least one coefficient");
  require_finite(coeffs_);
}

TruncatedSeries::TruncatedSeries(std::initializer_list<Complex> coeffs)
    : TruncatedSeries(CVector(Eigen::Map<const CVector>(coeffs.begin(),
                                                        static_cast<Eigen::Index>(coeffs.size())))) {}

TruncatedSeries TruncatedSeries::monomial(int power, int degree, Complex value) {
  require_degree(power);
  TruncatedSeries s(degree);
  if (power <= degree) s.coeffs_[power] = value;
  return s;
}

TruncatedSeries TruncatedSeries::constant(Complex value, int degree) {
  return monomial(0, degree, value);
}

TruncatedSeries TruncatedSeries::truncated(int degree) const {
  require_degree(degree);
  CVector c = CVector::Zero(degree + 1);
  const int n = std::min(degree, this->degree()) + 1;
  c.head(n) = coeffs_.head(n);
  TruncatedSeries out;
  out.coeffs_ = std::move(c);
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  if (other.degree() > degree()) *this = truncated(other.degree());
  coeffs_.head(other.coeffs_.size()) += other.coeffs_;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  if (other.degree() > degree()) *this = truncated(other.degree());
  coeffs_.head(other.coeffs_.size()) -= other.coeffs_;
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(Complex c) {
  coeffs_ *= c;
  return *this;
}

bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int d = std::max(a.degree(), b.degree());
  for (int k = 0; k <= d; ++k) {
    if (a[k] != b[k]) return false;
  }
  return true;
}

bool approx_equal(const TruncatedSeries& a, const TruncatedSeries& b, double tol) {
  const int d = std::max(a.degree(), b.degree());
  for (int k = 0; k <= d; ++k) {
    if (std::abs(a[k] - b[k]) > tol) return false;
  }
  return true;
}

VectorSeries::VectorSeries(std::vector<TruncatedSeries> components)
    : components_(std::move(components)) {
  if (components_.empty()) throw InvalidInput("vector series needs at least one component");
  for (const auto& c : components_) {
    if (c.degree() != components_.front().degree()) {
      throw InvalidInput("vector series components must share one degree");
    }
  }
}

VectorSeries::VectorSeries(int components, int degree) {
  if (components < 1) throw InvalidInput("vector series needs at least one component");
  components_.assign(components, TruncatedSeries(degree));
}

VectorSeries VectorSeries::truncated(int degree) const {
  std::vector<TruncatedSeries> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back(c.truncated(degree));
  return VectorSeries(std::move(out));
}

CVector VectorSeries::flatten() const {
  const int n = degree() + 1;
  CVector flat(n * size());
  for (int i = 0; i < size(); ++i) flat.segment(i * n, n) = components_[i].coeffs();
  return flat;
}

VectorSeries VectorSeries::unflatten(const CVector& flat, int components) {
  if (components < 1 || flat.size() % components != 0) {
    throw InvalidInput("flattened vector length is not a multiple of the component count");
  }
  const Eigen::Index n = flat.size() / components;
  std::vector<TruncatedSeries> parts;
  for (int i = 0; i < components; ++i) parts.emplace_back(CVector(flat.segment(i * n, n)));
  return VectorSeries(std::move(parts));
}

Complex series_eval(const TruncatedSeries& f, Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput("evaluation point is not finite");
  }
  Complex acc{};
  for (int k = f.degree(); k >= 0; --k) acc = acc * z + f[k];
  return acc;
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g, int out_degree) {
  require_degree(out_degree);
  CVector c = CVector::Zero(out_degree + 1);
  const int df = std::min(f.degree(), out_degree);
  for (int i = 0; i <= df; ++i) {
    const Complex fi = f.coeffs()[i];
    if (fi == Complex{}) continue;
    const int dg = std::min(g.degree(), out_degree - i);
    c.segment(i, dg + 1) += fi * g.coeffs().head(dg + 1);
  }
  return TruncatedSeries(std::move(c));
}

TruncatedSeries series_div(const TruncatedSeries& f, const TruncatedSeries& g, int out_degree) {
  require_degree(out_degree);
  const Complex g0 = g[0];
  if (std::abs(g0) == 0.0) throw NumericError("power-series division by a series vanishing at 0");
  CVector q = CVector::Zero(out_degree + 1);
  for (int n = 0; n <= out_degree; ++n) {
    Complex acc = f[n];
    const int top = std::min(n, g.degree());
    for (int j = 1; j <= top; ++j) acc -= g.coeffs()[j] * q[n - j];
    q[n] = acc / g0;
  }
  return TruncatedSeries(std::move(q));
}

double norm_alpha(const TruncatedSeries& f, double alpha) {
  double acc = 0.0;
  for (int k = 0; k <= f.degree(); ++k) {
    acc += std::norm(f.coeffs()[k]) * std::pow(k + 1.0, alpha);
  }
  return std::sqrt(acc);
}

double norm_h2(const TruncatedSeries& f) { return f.coeffs().norm(); }

double norm_h2(const VectorSeries& f) {
  double acc = 0.0;
  for (const auto& c : f.components()) acc += c.coeffs().squaredNorm();
  return std::sqrt(acc);
}

TruncatedSeries dilate(const TruncatedSeries& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw InvalidInput("dilation factor must be positive");
  CVector c = f.coeffs();
  double p = 1.0;
  for (Eigen::Index k = 0; k < c.size(); ++k, p *= s) c[k] *= p;
  return TruncatedSeries(std::move(c));
}

VectorSeries dilate(const VectorSeries& f, double s) {
  std::vector<TruncatedSeries> out;
  for (const auto& c : f.components()) out.push_back(dilate(c, s));
  return VectorSeries(std::move(out));
}

Complex inner_weighted(const TruncatedSeries& f, const TruncatedSeries& g,
                       std::span<const double> weights) {
  const int d = std::max(f.degree(), g.degree());
  if (static_cast<int>(weights.size()) < d + 1) throw InvalidInput("weight list too short");
  Complex acc{};
  for (int k = 0; k <= d; ++k) {
    if (!(weights[k] > 0.0)) throw InvalidInput("weights must be positive");
    acc += weights[k] * f[k] * std::conj(g[k]);
  }
  return acc;
}

std::vector<double> alpha_weights(int degree, double alpha) {
  require_degree(degree);
  std::vector<double> w(degree + 1);
  for (int k = 0; k <= degree; ++k) w[k] = std::pow(k + 1.0, alpha);
  return w;
}

TruncatedSeries backward_shift(const TruncatedSeries& f) {
  CVector c = CVector::Zero(f.degree() + 1);
  if (f.degree() > 0) c.head(f.degree()) = f.coeffs().tail(f.degree());
  return TruncatedSeries(std::move(c));
}

}  // namespace nearshift
