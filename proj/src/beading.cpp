#include "beadpath/beading.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace beadpath {

bool Beading::has_center() const {
  return n % 2 == 1 && !locations.empty() && locations.back() == r;
}

double Beading::total() const {
  double s = 0;
  for (double w : widths) s += 2 * w;
  if (has_center()) s -= widths.back();
  return s;
}

Beading make_beading(int n, double r, std::vector<double> half_widths) {
  Beading b;
  b.n = n;
  b.r = r;
  b.widths = std::move(half_widths);
  double acc = 0;
  for (std::size_t i = 0; i < b.widths.size(); ++i) {
    bool center = n % 2 == 1 && i + 1 == b.widths.size();
    b.locations.push_back(center ? r : acc + 0.5 * b.widths[i]);
    acc += b.widths[i];
  }
  return b;
}

namespace {

int half_count(int n) { return (n + 1) / 2; }

Beading equal_widths(int n, double r, double w) {
  return make_beading(n, r, std::vector<double>(half_count(n), w));
}

}  // namespace

double BeadingScheme::bisect_q_inverse(int n) const {
  if (q(0) > n) return 0;
  double hi = std::max(w_star_, 1e-3);
  int guard = 0;
  while (q(hi) <= n) {
    hi *= 2;
    if (++guard > 60) return std::numeric_limits<double>::infinity();
  }
  double lo = 0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    double mid = 0.5 * (lo + hi);
    if (q(mid) > n) hi = mid;
    else lo = mid;
  }
  return hi;
}

double BeadingScheme::q_inverse(int n) const { return bisect_q_inverse(n); }

double BeadingScheme::transition_length(int) const { return w_star_; }

double BeadingScheme::transition_anchor_pos(int n) const {
  double t = transition_length(n);
  double t0 = t * (q_inverse(n) / w_star_ - n);
  return std::clamp(t0, 0.0, t);
}

int UniformScheme::q(double d) const {
  if (d <= 0) return 0;
  return 2 * int(std::floor(d / (2 * w_star_) + 0.5));
}

Beading UniformScheme::B(int n, double r) const { return equal_widths(n, r, w_star_); }

int OuterScheme::q(double d) const {
  if (d <= 0) return 0;
  return d < w_star_ ? 1 : 2;
}

Beading OuterScheme::B(int n, double r) const {
  if (n == 1) return make_beading(1, r, {2 * r});
  return equal_widths(n, r, w_star_);
}

ConstantScheme::ConstantScheme(double w_star, int c) : BeadingScheme(w_star), c_(c) {
  if (c < 1) throw std::invalid_argument("constant scheme needs C >= 1");
}

int ConstantScheme::q(double d) const { return d <= 0 ? 0 : c_; }

Beading ConstantScheme::B(int n, double r) const {
  if (n <= 0) return make_beading(0, r, {});
  return equal_widths(n, r, 2 * r / n);
}

double ConstantScheme::q_inverse(int n) const {
  return n < c_ ? 0.0 : std::numeric_limits<double>::infinity();
}

int EvenlyScheme::q(double d) const {
  if (d <= 0) return 0;
  return int(std::floor(d / w_star_ + 0.5));
}

Beading EvenlyScheme::B(int n, double r) const {
  if (n <= 0) return make_beading(0, r, {});
  return equal_widths(n, r, 2 * r / n);
}

double EvenlyScheme::q_inverse(int n) const { return (n + 0.5) * w_star_; }

int CenteredScheme::q(double d) const {
  if (d <= 0) return 0;
  int qm = 2 * int(std::floor(d / (2 * w_star_) + 0.5));
  double disc = qm * w_star_ - d;
  if (disc > w_star_ - d_min()) return qm - 1;
  if (disc < w_star_ - d_max()) return qm + 1;
  return qm;
}

Beading CenteredScheme::B(int n, double r) const {
  if (n <= 0) return make_beading(0, r, {});
  std::vector<double> w(half_count(n), w_star_);
  if (n % 2 == 1) w.back() = 2 * r - (n - 1) * w_star_;
  return make_beading(n, r, w);
}

InwardScheme::InwardScheme(double w_star, double spread) : BeadingScheme(w_star), spread_(spread) {
  if (!(spread > 0)) throw std::invalid_argument("inward scheme needs N > 0");
}

int InwardScheme::q(double d) const {
  if (d <= 0) return 0;
  return int(std::floor(d / w_star_ + 0.5));
}

Beading InwardScheme::B(int n, double r) const {
  if (n <= 0) return make_beading(0, r, {});
  const double e = 2 * r - n * w_star_;
  std::vector<double> omega(n);
  double sum = 0;
  for (int i = 0; i < n; ++i) {
    double x = (i - 0.5 * (n - 1)) / spread_;
    omega[i] = std::max(0.0, 1.0 - x * x);
    sum += omega[i];
  }
  std::vector<double> w(half_count(n));
  for (int i = 0; i < half_count(n); ++i) {
    w[i] = sum > 0 ? w_star_ + e * omega[i] / sum : 2 * r / n;
  }
  return make_beading(n, r, w);
}

double InwardScheme::q_inverse(int n) const { return (n + 0.5) * w_star_; }

WideningScheme::WideningScheme(SchemePtr inner, double w_min, double r_min)
    : BeadingScheme(inner->w_star()), inner_(std::move(inner)), w_min_(w_min), r_min_(r_min) {
  if (!(r_min > 0) || 2 * r_min > w_min + 1e-12) throw std::invalid_argument("widening needs 0 < 2 r_min <= w_min");
}

int WideningScheme::q(double d) const {
  if (d < 2 * r_min_) return 0;
  if (d < w_star_) return 1;
  return inner_->q(d);
}

Beading WideningScheme::B(int n, double r) const {
  if (n == 1 && 2 * r < w_star_) return make_beading(1, r, {std::max(w_min_, 2 * r)});
  return inner_->B(n, r);
}

std::vector<double> WideningScheme::rib_radii() const {
  std::vector<double> out = inner_->rib_radii();
  out.push_back(r_min_);
  out.push_back(0.5 * w_star_);
  return out;
}

ShellScheme::ShellScheme(SchemePtr inner, int m) : BeadingScheme(inner->w_star()), inner_(std::move(inner)), m_(m) {
  if (m < 1) throw std::invalid_argument("shell needs M >= 1");
}

int ShellScheme::q(double d) const { return std::min(m_, inner_->q(d)); }

Beading ShellScheme::B(int n, double r) const {
  if (n == m_ && 2 * r > inner_->q_inverse(m_)) {
    Beading b = inner_->B(m_, 0.5 * m_ * w_star_);
    b.r = r;
    return b;
  }
  return inner_->B(n, r);
}

double ShellScheme::q_inverse(int n) const {
  if (n >= m_) return std::numeric_limits<double>::infinity();
  return inner_->q_inverse(n);
}

std::vector<double> ShellScheme::rib_radii() const {
  std::vector<double> out = inner_->rib_radii();
  const double qm = inner_->q_inverse(m_);
  for (double v : {m_ * w_star_, qm, qm + 0.5 * w_star_}) {
    out.push_back(v);
    out.push_back(0.5 * v);
  }
  return out;
}

SchemePtr make_scheme(const SchemeConfig& cfg) {
  if (!(cfg.w_star > 0)) throw std::invalid_argument("w_star must be positive");
  SchemePtr base;
  if (cfg.name == "uniform") base = std::make_shared<UniformScheme>(cfg.w_star);
  else if (cfg.name == "outer") base = std::make_shared<OuterScheme>(cfg.w_star);
  else if (cfg.name == "constant") base = std::make_shared<ConstantScheme>(cfg.w_star, cfg.c);
  else if (cfg.name == "evenly") base = std::make_shared<EvenlyScheme>(cfg.w_star);
  else if (cfg.name == "centered") base = std::make_shared<CenteredScheme>(cfg.w_star);
  else if (cfg.name == "inward") base = std::make_shared<InwardScheme>(cfg.w_star, double(cfg.n));
  else throw std::invalid_argument("unknown scheme: " + cfg.name);
  if (cfg.widening) base = std::make_shared<WideningScheme>(base, cfg.w_min, cfg.r_min);
  if (cfg.shell > 0) base = std::make_shared<ShellScheme>(base, cfg.shell);
  return base;
}

Beading interpolate_beadings(const Beading& b1, const Beading& b2, double f) {
  if (std::abs(b1.r - b2.r) > 1e-9) throw InvalidInterpolation("beadings have different radii");
  if (b2.n != b1.n + 1) throw InvalidInterpolation("beadings must have consecutive counts");
  if (f <= 0) return b1;
  if (f >= 1) return b2;
  Beading out;
  out.n = b2.n;
  out.r = b1.r;
  const std::size_t common = std::min(b1.widths.size(), b2.widths.size());
  for (std::size_t i = 0; i < common; ++i) {
    out.widths.push_back(b1.widths[i] + (b2.widths[i] - b1.widths[i]) * f);
    out.locations.push_back(b1.locations[i] + (b2.locations[i] - b1.locations[i]) * f);
  }
  if (b2.widths.size() > common) {
    out.widths.push_back(b2.widths.back() * f);
    out.locations.push_back(b2.locations.back());
  }
  return out;
}

Beading blend_beadings(const Beading& top, const Beading& bottom, double ratio_top) {
  if (ratio_top >= 1) return top;
  if (ratio_top <= 0) return bottom;
  const Beading& wide = top.widths.size() >= bottom.widths.size() ? top : bottom;
  Beading out = wide;
  out.r = bottom.r + (top.r - bottom.r) * ratio_top;
  out.n = top.n;
  const std::size_t common = std::min(top.widths.size(), bottom.widths.size());
  for (std::size_t i = 0; i < common; ++i) {
    out.widths[i] = bottom.widths[i] + (top.widths[i] - bottom.widths[i]) * ratio_top;
    out.locations[i] = bottom.locations[i] + (top.locations[i] - bottom.locations[i]) * ratio_top;
  }
  return out;
}

}  // namespace beadpath
