#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "fdlab/bubble.hpp"
#include "fdlab/sphere.hpp"

using namespace fdlab;

TEST_CASE("stereographic projection") {
    // origin -> south pole
    SpherePoint south = stereographic({0.0, 0.0, 0.0});
    CHECK(south.coords[0] == 0.0);
    CHECK(south.coords[3] == doctest::Approx(-1.0));

    // |y| = 1 -> equator
    SpherePoint eq = stereographic({1.0, 0.0, 0.0});
    CHECK(std::abs(eq.coords[3]) <= 1e-15);
    CHECK(eq.coords[0] == doctest::Approx(1.0));

    // round trips on random points, both directions
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int k = 0; k < 30; ++k) {
        Point y{u(rng), u(rng), u(rng)};
        SpherePoint p = stereographic(y);
        double norm2 = 0.0;
        for (double c : p.coords) norm2 += c * c;
        CHECK(std::abs(norm2 - 1.0) <= 1e-14);
        Point back = inverse_stereographic(p);
        for (int i = 0; i < 3; ++i)
            CHECK(std::abs(back[i] - y[i]) <= 1e-14 * (1.0 + std::abs(y[i])));
    }

    SpherePoint north{{0.0, 0.0, 0.0, 1.0}};
    CHECK_THROWS_AS(inverse_stereographic(north), Error);
}

TEST_CASE("conformal lifting") {
    const int n = 3;
    // the bubble lifts to a constant: U(y) / factor = alpha 2^{-(n-2)/2}
    FlatFunction U = [&](const Point& y) { return bubble_U(y, n); };
    SphereFunction Ut = lift(U, n);
    const double expect = alpha_n(n) * std::pow(2.0, -0.5 * (n - 2));
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 10; ++k) {
        Point y{u(rng), u(rng), u(rng)};
        CHECK(Ut(stereographic(y)) == doctest::Approx(expect).epsilon(1e-13));
    }

    // unlift(lift(phi)) = phi
    FlatFunction bump = [](const Point& y) {
        double r2 = 0.0;
        for (double v : y) r2 += v * v;
        return std::exp(-r2) + 0.3 * y[0];
    };
    FlatFunction round = unlift(lift(bump, n), n);
    for (int k = 0; k < 10; ++k) {
        Point y{u(rng), u(rng), u(rng)};
        CHECK(round(y) == doctest::Approx(bump(y)).epsilon(1e-14));
    }

    // lifted kernel elements are proportional to coordinate functions
    for (int i = 1; i <= n + 1; ++i) {
        FlatFunction zi = [&](const Point& y) { return kernel_Z(i, y, n); };
        SphereFunction zt = lift(zi, n);
        double ratio0 = 0.0;
        for (int k = 0; k < 12; ++k) {
            Point y{u(rng), u(rng), u(rng)};
            SpherePoint p = stereographic(y);
            double coord = p.coords[i - 1];
            if (std::abs(coord) < 0.2) continue;
            double ratio = zt(p) / coord;
            if (ratio0 == 0.0) ratio0 = ratio;
            CHECK(ratio == doctest::Approx(ratio0).epsilon(1e-12));
        }
    }
}

TEST_CASE("conformal Laplacian identity") {
    const int n = 3;
    std::vector<Point> samples = {{0.3, -0.2, 0.5},
                                  {1.1, 0.4, -0.3},
                                  {-0.6, 0.8, 0.2},
                                  {0.05, 0.0, -0.9}};

    // flat side of U is -U^p: identity mismatch is pure FD error
    FlatFunction U = [&](const Point& y) { return bubble_U(y, n); };
    CHECK(conformal_laplacian_check(U, samples, n, 5e-3, 5e-3) <= 1e-6);

    // kernel element: both sides equal -p U^{p-1} Z
    FlatFunction z4 = [&](const Point& y) { return kernel_Z(4, y, n); };
    CHECK(conformal_laplacian_check(z4, samples, n, 5e-3, 5e-3) <= 1e-6);

    // smooth bump converges at the FD order under step refinement
    FlatFunction bump = [](const Point& y) {
        double r2 = 0.0;
        for (size_t i = 0; i < y.size(); ++i)
            r2 += (y[i] - 0.1 * (double(i) + 0.5)) * (y[i] - 0.1 * i);
        return std::exp(-0.8 * r2);
    };
    double m1 = conformal_laplacian_check(bump, samples, n, 0.1, 0.1);
    double m2 = conformal_laplacian_check(bump, samples, n, 0.05, 0.05);
    double order = std::log2(m1 / m2);
    CHECK(order >= 3.5);
    CHECK(order <= 4.5);
}

TEST_CASE("lifted kernel eigenvalue") {
    std::vector<Point> samples = {{0.3, -0.2, 0.5},
                                  {1.1, 0.4, -0.3},
                                  {-0.6, 0.8, 0.2}};
    for (int n : {3, 4}) {
        std::vector<Point> pts;
        for (const auto& s : samples) {
            Point p(n, 0.1);
            for (int i = 0; i < 3; ++i) p[i] = s[i];
            pts.push_back(p);
        }
        for (int i = 1; i <= n + 1; ++i)
            CHECK(lifted_kernel_eigen_defect(i, pts, n, 5e-3) <= 1e-6);
    }
}
