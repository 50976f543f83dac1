#ifndef FDLAB_DOMAIN_HPP
#define FDLAB_DOMAIN_HPP

#include <string>
#include <vector>

#include "fdlab/errors.hpp"

namespace fdlab {

using Point = std::vector<double>;

enum class DomainKind { UnitBall, Box };

// Geometry descriptor. The ball is centered at the origin with the given
// radius; the box is (0,L_1) x ... x (0,L_n).
struct DomainSpec {
    DomainKind kind = DomainKind::UnitBall;
    double radius = 1.0;
    std::vector<double> lengths;
    int n = 3;

    static DomainSpec unit_ball(int n, double radius = 1.0);
    static DomainSpec box(const std::vector<double>& lengths);

    void validate() const;
    bool contains(const Point& x) const;          // strictly interior
    double boundary_distance(const Point& x) const;
};

double dist(const Point& a, const Point& b);
double norm(const Point& a);

}  // namespace fdlab

#endif
