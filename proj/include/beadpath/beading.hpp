#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace beadpath {

struct InvalidInterpolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Outline-side half of a symmetric bead layout: ceil(n/2) widths and
// locations, counted from the outline inward. All lengths in mm.
struct Beading {
  int n = 0;
  double r = 0;
  std::vector<double> widths;
  std::vector<double> locations;

  // Odd count whose innermost bead sits exactly on the center.
  bool has_center() const;
  // Sum of all n bead widths.
  double total() const;
};

// Builds a beading from the outline-side widths. Locations are packed from
// the outline; for odd n the last bead is put at r.
Beading make_beading(int n, double r, std::vector<double> half_widths);

enum class CenteringPolicy { Normal, Disabled, AllButOutline };

class BeadingScheme {
 public:
  explicit BeadingScheme(double w_star) : w_star_(w_star) {}
  virtual ~BeadingScheme() = default;

  virtual std::string name() const = 0;
  // Bead count for a feature diameter d.
  virtual int q(double d) const = 0;
  virtual Beading B(int n, double r) const = 0;
  // Diameter at which q steps from <= n to > n.
  virtual double q_inverse(int n) const;
  virtual double transition_length(int n) const;
  // Distance from the lower ramp end to the anchor, clamped to [0, t(n)].
  virtual double transition_anchor_pos(int n) const;
  virtual CenteringPolicy centering() const { return CenteringPolicy::Normal; }
  virtual double retreat_ratio() const { return 0.75; }
  // Radii at which B is not linear in r; the graph gets extra nodes there.
  virtual std::vector<double> rib_radii() const { return {}; }

  double w_star() const { return w_star_; }
  Beading beading_for(double r) const { return B(q(2 * r), r); }

 protected:
  double bisect_q_inverse(int n) const;
  double w_star_;
};

using SchemePtr = std::shared_ptr<const BeadingScheme>;

class UniformScheme : public BeadingScheme {
 public:
  using BeadingScheme::BeadingScheme;
  std::string name() const override { return "uniform"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  CenteringPolicy centering() const override { return CenteringPolicy::Disabled; }
};

class OuterScheme : public BeadingScheme {
 public:
  using BeadingScheme::BeadingScheme;
  std::string name() const override { return "outer"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double transition_length(int) const override { return 0; }
  double retreat_ratio() const override { return 0; }
};

class ConstantScheme : public BeadingScheme {
 public:
  ConstantScheme(double w_star, int c);
  std::string name() const override { return "constant"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double q_inverse(int n) const override;
  CenteringPolicy centering() const override { return CenteringPolicy::AllButOutline; }
  int count() const { return c_; }

 private:
  int c_;
};

class EvenlyScheme : public BeadingScheme {
 public:
  using BeadingScheme::BeadingScheme;
  std::string name() const override { return "evenly"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double q_inverse(int n) const override;
};

class CenteredScheme : public BeadingScheme {
 public:
  using BeadingScheme::BeadingScheme;
  std::string name() const override { return "centered"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double transition_length(int) const override { return 0.5 * w_star_; }
  double d_min() const { return 0.8 * w_star_; }
  double d_max() const { return 1.25 * w_star_; }
};

class InwardScheme : public BeadingScheme {
 public:
  InwardScheme(double w_star, double spread);
  std::string name() const override { return "inward"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double q_inverse(int n) const override;

 private:
  double spread_;
};

class WideningScheme : public BeadingScheme {
 public:
  WideningScheme(SchemePtr inner, double w_min, double r_min);
  std::string name() const override { return "widening(" + inner_->name() + ")"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double transition_length(int n) const override { return inner_->transition_length(n); }
  CenteringPolicy centering() const override { return inner_->centering(); }
  double retreat_ratio() const override { return inner_->retreat_ratio(); }
  std::vector<double> rib_radii() const override;

 private:
  SchemePtr inner_;
  double w_min_;
  double r_min_;
};

class ShellScheme : public BeadingScheme {
 public:
  ShellScheme(SchemePtr inner, int m);
  std::string name() const override { return "shell(" + inner_->name() + ")"; }
  int q(double d) const override;
  Beading B(int n, double r) const override;
  double q_inverse(int n) const override;
  double transition_length(int n) const override { return inner_->transition_length(n); }
  CenteringPolicy centering() const override { return inner_->centering(); }
  double retreat_ratio() const override { return inner_->retreat_ratio(); }
  std::vector<double> rib_radii() const override;

 private:
  SchemePtr inner_;
  int m_;
};

struct SchemeConfig {
  std::string name = "inward";
  double w_star = 0.4;
  int n = 2;  // inward spread N
  int c = 4;  // constant count C
  int shell = 0;  // M, 0 disables
  bool widening = false;
  double w_min = 0.3;
  double r_min = 0.15;
};

// Throws std::invalid_argument for unknown names or bad parameters.
SchemePtr make_scheme(const SchemeConfig& cfg);

// Interpolates between beadings for n and n+1 at the same radius; f in [0,1].
Beading interpolate_beadings(const Beading& b1, const Beading& b2, double f);
// Per-index blend of arbitrary beadings; indices present in only one are
// taken from it. Used for conflicts between propagated beadings.
Beading blend_beadings(const Beading& top, const Beading& bottom, double ratio_top);

}  // namespace beadpath
