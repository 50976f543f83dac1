#include "fdlab/domain.hpp"

#include <algorithm>
#include <cmath>

namespace fdlab {

double dist(const Point& a, const Point& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double norm(const Point& a) {
    double s = 0.0;
    for (double v : a) s += v * v;
    return std::sqrt(s);
}

DomainSpec DomainSpec::unit_ball(int n, double radius) {
    DomainSpec d;
    d.kind = DomainKind::UnitBall;
    d.n = n;
    d.radius = radius;
    d.validate();
    return d;
}

DomainSpec DomainSpec::box(const std::vector<double>& lengths) {
    DomainSpec d;
    d.kind = DomainKind::Box;
    d.n = static_cast<int>(lengths.size());
    d.lengths = lengths;
    d.validate();
    return d;
}

void DomainSpec::validate() const {
    if (n < 3)
        fail(ErrorCode::ConfigInvalid, "dimension must be >= 3, got " +
                                           std::to_string(n));
    if (kind == DomainKind::UnitBall) {
        if (!(radius > 0.0))
            fail(ErrorCode::ConfigInvalid, "ball radius must be positive");
    } else {
        if (static_cast<int>(lengths.size()) != n)
            fail(ErrorCode::ConfigInvalid,
                 "box needs exactly n side lengths");
        for (double L : lengths)
            if (!(L > 0.0))
                fail(ErrorCode::ConfigInvalid, "box lengths must be positive");
    }
}

bool DomainSpec::contains(const Point& x) const {
    if (static_cast<int>(x.size()) != n) return false;
    if (kind == DomainKind::UnitBall) return norm(x) < radius;
    for (int i = 0; i < n; ++i)
        if (!(x[i] > 0.0 && x[i] < lengths[i])) return false;
    return true;
}

double DomainSpec::boundary_distance(const Point& x) const {
    if (kind == DomainKind::UnitBall) return radius - norm(x);
    double d = lengths[0];
    for (int i = 0; i < n; ++i)
        d = std::min(d, std::min(x[i], lengths[i] - x[i]));
    return d;
}

}  // namespace fdlab
