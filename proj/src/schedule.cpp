#include "qmeta/schedule.hpp"

#include "qmeta/errors.hpp"

namespace qmeta {

Schedule::Schedule(double total_time,
                   std::vector<std::pair<double, double>> knots)
    : T_(total_time), knots_(std::move(knots)) {
    if (!(T_ > 0.0)) throw DomainError("Schedule: total time must be > 0");
    if (knots_.size() < 2) throw DomainError("Schedule: need at least 2 knots");
    for (size_t i = 0; i < knots_.size(); ++i) {
        if (i > 0 && !(knots_[i].first > knots_[i - 1].first))
            throw DomainError("Schedule: knots must be strictly time-sorted");
        if (knots_[i].second < 0.0 || knots_[i].second > 1.0)
            throw DomainError("Schedule: s must lie in [0,1]");
    }
    if (knots_.front().first != 0.0 || knots_.back().first != T_)
        throw DomainError("Schedule: knots must span [0, T]");
    a_ = [](double s) { return 1.0 - s; };
    b_ = [](double s) { return s; };
}

double Schedule::s(double t) const {
    if (t <= knots_.front().first) return knots_.front().second;
    if (t >= knots_.back().first) return knots_.back().second;
    for (size_t i = 1; i < knots_.size(); ++i) {
        if (t <= knots_[i].first) {
            const auto& [t0, s0] = knots_[i - 1];
            const auto& [t1, s1] = knots_[i];
            return s0 + (s1 - s0) * (t - t0) / (t1 - t0);
        }
    }
    return knots_.back().second;
}

void Schedule::set_interpolation(std::function<double(double)> a,
                                 std::function<double(double)> b) {
    a_ = std::move(a);
    b_ = std::move(b);
}

Schedule Schedule::forward_linear(double T) {
    return Schedule(T, {{0.0, 0.0}, {T, 1.0}});
}

Schedule Schedule::forward_hold(double T, double s_hold, double rise_frac,
                                double hold_frac) {
    return Schedule(T, {{0.0, 0.0},
                        {rise_frac * T, s_hold},
                        {hold_frac * T, s_hold},
                        {T, 1.0}});
}

Schedule Schedule::reverse_hold(double T, double s_dip, double edge_frac) {
    return Schedule(T, {{0.0, 1.0},
                        {edge_frac * T, s_dip},
                        {(1.0 - edge_frac) * T, s_dip},
                        {T, 1.0}});
}

}  // namespace qmeta
