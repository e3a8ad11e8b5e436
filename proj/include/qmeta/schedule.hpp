#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace qmeta {

/// Piecewise-linear annealing control s(t) with interpolation weights
/// A(s), B(s) for H(s) = A(s) H0 + B(s) Hf.  Defaults: A = 1-s, B = s.
class Schedule {
  public:
    Schedule(double total_time, std::vector<std::pair<double, double>> knots);

    double T() const { return T_; }
    double s(double t) const;
    double A(double t) const { return a_(s(t)); }
    double B(double t) const { return b_(s(t)); }

    void set_interpolation(std::function<double(double)> a,
                           std::function<double(double)> b);

    const std::vector<std::pair<double, double>>& knots() const {
        return knots_;
    }

    /// s: 0 -> 1 linearly.
    static Schedule forward_linear(double T);

    /// Hold near s = s_hold for hold_frac of T, then ramp to 1.
    static Schedule forward_hold(double T, double s_hold = 0.02,
                                 double rise_frac = 0.01,
                                 double hold_frac = 0.8);

    /// Start at s = 1, dip to s_dip, hold, return to 1.
    static Schedule reverse_hold(double T, double s_dip = 0.98,
                                 double edge_frac = 0.05);

  private:
    double T_;
    std::vector<std::pair<double, double>> knots_;  // (t, s), time-sorted
    std::function<double(double)> a_;
    std::function<double(double)> b_;
};

}  // namespace qmeta
