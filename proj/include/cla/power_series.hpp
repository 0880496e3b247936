#pragma once

#include "cla/polynomial.hpp"

namespace cla {

// Order-truncated power series: a polynomial carrying every term of total
// degree <= truncation_order.  Arithmetic re-truncates to the minimum of the
// operand orders.
class PowerSeries {
public:
    PowerSeries() : order_(0) {}
    PowerSeries(Poly base, int truncation_order)
        : base_(base.truncate_above(truncation_order)), order_(truncation_order) {
        if (truncation_order < 0)
            throw internal_error("negative truncation order");
    }

    const Poly& base() const { return base_; }
    int truncation_order() const { return order_; }

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order_, b.order_);
        return PowerSeries(a.base_ + b.base_, n);
    }
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order_, b.order_);
        return PowerSeries(a.base_ - b.base_, n);
    }
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
        int n = std::min(a.order_, b.order_);
        return PowerSeries(a.base_.truncate_above(n) * b.base_.truncate_above(n), n);
    }
    friend PowerSeries operator*(const Rat& s, const PowerSeries& a) {
        return PowerSeries(a.base_ * s, a.order_);
    }

    PowerSeries derivative(std::size_t var) const {
        return PowerSeries(base_.derivative(var), order_ > 0 ? order_ - 1 : 0);
    }

    bool operator==(const PowerSeries& o) const {
        return order_ == o.order_ && base_ == o.base_;
    }

    std::string to_string() const { return base_.to_string(); }

private:
    Poly base_;
    int order_;
};

} // namespace cla
