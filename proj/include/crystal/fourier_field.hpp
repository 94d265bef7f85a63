#ifndef CRYSTAL_FOURIER_FIELD_HPP
#define CRYSTAL_FOURIER_FIELD_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <vector>

namespace crystal {

/// Truncated Fourier series on the unit torus in lattice coordinates y:
/// f(y) = sum_k a_k cos(2 pi k.y) + b_k sin(2 pi k.y), with analytic first
/// and second derivatives.  Used for drift fields H0, initial profiles
/// rho_0 and test functions J.
class FourierField {
 public:
  struct Mode {
    Eigen::VectorXi k;
    double a = 0;
    double b = 0;
  };

  FourierField() = default;
  explicit FourierField(int d) : d_(d) {}

  FourierField& add_mode(const Eigen::VectorXi& k, double a, double b) {
    modes_.push_back({k, a, b});
    d_ = k.size();
    return *this;
  }
  FourierField& add_constant(double c) {
    Eigen::VectorXi k = Eigen::VectorXi::Zero(d_);
    modes_.push_back({k, c, 0.0});
    return *this;
  }

  int dimension() const { return d_; }
  const std::vector<Mode>& modes() const { return modes_; }
  bool empty() const { return modes_.empty(); }

  double operator()(const Eigen::VectorXd& y) const {
    constexpr double tau = 2 * std::numbers::pi;
    double v = 0;
    for (const Mode& m : modes_) {
      double phase = tau * m.k.cast<double>().dot(y);
      v += m.a * std::cos(phase) + m.b * std::sin(phase);
    }
    return v;
  }

  Eigen::VectorXd gradient(const Eigen::VectorXd& y) const {
    constexpr double tau = 2 * std::numbers::pi;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(d_);
    for (const Mode& m : modes_) {
      double phase = tau * m.k.cast<double>().dot(y);
      double dcoef = -m.a * std::sin(phase) + m.b * std::cos(phase);
      g += tau * dcoef * m.k.cast<double>();
    }
    return g;
  }

  Eigen::MatrixXd hessian(const Eigen::VectorXd& y) const {
    constexpr double tau = 2 * std::numbers::pi;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(d_, d_);
    for (const Mode& m : modes_) {
      double phase = tau * m.k.cast<double>().dot(y);
      double ddcoef = -m.a * std::cos(phase) - m.b * std::sin(phase);
      Eigen::VectorXd kd = m.k.cast<double>();
      h += tau * tau * ddcoef * (kd * kd.transpose());
    }
    return h;
  }

  double clipped01(const Eigen::VectorXd& y) const {
    return std::clamp((*this)(y), 0.0, 1.0);
  }

  /// Coordinatewise bound sup_y |df/dy_i|.
  Eigen::VectorXd gradient_bound() const {
    constexpr double tau = 2 * std::numbers::pi;
    Eigen::VectorXd b = Eigen::VectorXd::Zero(d_);
    for (const Mode& m : modes_)
      b += tau * (std::abs(m.a) + std::abs(m.b)) *
           m.k.cast<double>().cwiseAbs();
    return b;
  }

  /// Mean over the torus (the k = 0 cosine coefficient).
  double mean() const {
    double c = 0;
    for (const Mode& m : modes_)
      if (m.k.isZero()) c += m.a;
    return c;
  }

 private:
  int d_ = 0;
  std::vector<Mode> modes_;
};

/// Space-time drift H(t, y) = (c0 + c1 t) * H0(y) in lattice coordinates.
struct DriftSpec {
  FourierField H0;
  double c0 = 1.0;
  double c1 = 0.0;

  double envelope(double t) const { return c0 + c1 * t; }
  double envelope_max(double T) const {
    return std::max(std::abs(c0), std::abs(c0 + c1 * T));
  }
  double operator()(double t, const Eigen::VectorXd& y) const {
    return envelope(t) * H0(y);
  }
  Eigen::VectorXd gradient(double t, const Eigen::VectorXd& y) const {
    return envelope(t) * H0.gradient(y);
  }
  bool is_constant() const {
    if (H0.empty()) return true;
    for (const auto& m : H0.modes())
      if (!m.k.isZero()) return false;
    return true;
  }
};

}  // namespace crystal

#endif
