#pragma once

#include <cmath>
#include <complex>

#include "foliation.hpp"

namespace teich {

// Marked flat torus: the modulus tau of the lattice Z + tau Z, Im(tau) > 0.
struct TorusPoint {
    std::complex<double> tau;

    explicit TorusPoint(std::complex<double> t) : tau(t) {
        if (!(tau.imag() > 0.0)) throw InputError("torus point: Im(tau) must be positive");
    }
};

// Quadratic differential on a torus: a transverse pair of line foliations.
struct TorusQD {
    TorusPoint base;
    TorusLine vertical;
    TorusLine horizontal;
    Scalar area;

    TorusQD(TorusPoint b, TorusLine v, TorusLine h)
        : base(b), vertical(std::move(v)), horizontal(std::move(h)), area(0) {
        Scalar det = vertical.dx * horizontal.dy - vertical.dy * horizontal.dx;
        if (det == Scalar(0))
            throw InputError("torus qd: vertical and horizontal directions are parallel");
        area = vertical.weight * horizontal.weight * det.abs();
    }

    bool unit_area(double tol = 1e-12) const {
        return std::abs(area.value() - 1.0) <= tol;
    }
};

// Closed-form extremal length of the line foliation with direction (p,q) and
// weight w at modulus tau: w^2 |p + q tau|^2 / Im(tau).
inline double torus_ext_length(const TorusPoint& x, const TorusLine& F) {
    const std::complex<double> z(F.dx.value() + F.dy.value() * x.tau.real(),
                                 F.dy.value() * x.tau.imag());
    const double w = F.weight.value();
    return w * w * std::norm(z) / x.tau.imag();
}

inline double torus_ext_length(const TorusPoint& x, const MeasuredFoliation& F) {
    return torus_ext_length(x, F.torus_line_rep());
}

// Teichmueller ray: multiply the transverse measure of V(q) by e^t and that
// of H(q) by e^{-t}; returns the modulus of the deformed lattice.
inline TorusPoint torus_ray(const TorusQD& q, double t) {
    if (!q.unit_area())
        throw InputError("torus ray: quadratic differential must have unit area");
    // Stretching the measure across vertical leaves by e^t expands the
    // horizontal direction by e^t and contracts the vertical one by e^{-t}.
    const std::complex<double> tau = q.base.tau;
    const std::complex<double> wv(q.vertical.dx.value() + q.vertical.dy.value() * tau.real(),
                                  q.vertical.dy.value() * tau.imag());
    const std::complex<double> wh(q.horizontal.dx.value() + q.horizontal.dy.value() * tau.real(),
                                  q.horizontal.dy.value() * tau.imag());
    // Solve z = a*wh + b*wv over the reals for the lattice generators 1, tau.
    const double det = wh.real() * wv.imag() - wh.imag() * wv.real();
    auto deform = [&](std::complex<double> z) {
        const double a = (z.real() * wv.imag() - z.imag() * wv.real()) / det;
        const double b = (wh.real() * z.imag() - wh.imag() * z.real()) / det;
        return std::exp(t) * a * wh + std::exp(-t) * b * wv;
    };
    const std::complex<double> g1 = deform(1.0);
    const std::complex<double> g2 = deform(tau);
    std::complex<double> taut = g2 / g1;
    if (taut.imag() < 0) taut = -taut;
    return TorusPoint(taut);
}

// Teichmueller distance: (1/2) log sup_F Ext_y(F)/Ext_x(F), which on the
// torus is half the hyperbolic distance of the upper half-plane.
inline double torus_distance(const TorusPoint& x, const TorusPoint& y) {
    const double d2 = std::norm(x.tau - y.tau);
    const double c = 1.0 + d2 / (2.0 * x.tau.imag() * y.tau.imag());
    return 0.5 * std::acosh(std::max(c, 1.0));
}

// Hubbard-Masur map on the torus: the unique H with (F, H) the foliation pair
// of a quadratic differential at x; i(F, H) = Ext_x(F) and H is the
// flat-metric orthogonal of F at x.
inline TorusLine torus_hm_oracle(const TorusPoint& x, const TorusLine& F) {
    const double a = x.tau.real(), b = x.tau.imag();
    const double p = F.dx.value(), q = F.dy.value();
    // i*(p + q*tau) expressed in the real basis {1, tau}.
    const double dy = (p + q * a) / b;
    const double dx = -q * b - a * dy;
    // Weight fixed by i(F, H) = Ext_x(F).
    const double cross = std::abs(p * dy - q * dx);
    if (cross == 0.0) throw InputError("hm oracle: degenerate direction");
    const double w = torus_ext_length(x, F) / (F.weight.value() * cross);
    auto line = MeasuredFoliation::torus_line(Scalar(dx), Scalar(dy), Scalar(w));
    return line.torus_line_rep();
}

} // namespace teich
