#include "predpower/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

namespace predpower::quadrature {
namespace {

// Kronrod abscissae on [0,1]; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
    bool finite;

    bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double kronrod = kKronrodWeights[7] * fc;
    double gauss = kGaussWeights[3] * fc;
    bool finite = std::isfinite(fc);

    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double pair = f(center - dx) + f(center + dx);
        finite = finite && std::isfinite(pair);
        kronrod += kKronrodWeights[i] * pair;
        if (i % 2 == 1) {
            gauss += kGaussWeights[i / 2] * pair;
        }
    }

    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss), finite};
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const Options& options) {
    if (a == b) {
        return {0.0, 0.0, 0, true};
    }

    // Max-heap on the error estimate.
    std::vector<Segment> heap{evaluate(f, a, b)};

    auto summed = [&heap](Result& r) {
        r.value = 0.0;
        r.abs_error = 0.0;
        bool finite = true;
        for (const Segment& s : heap) {
            r.value += s.value;
            r.abs_error += s.error;
            finite = finite && s.finite;
        }
        return finite;
    };

    Result result;
    result.intervals = 1;
    bool finite = summed(result);

    while (finite && result.abs_error > options.abs_tolerance &&
           result.intervals < options.max_intervals) {
        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            std::push_heap(heap.begin(), heap.end());
            break;
        }
        heap.back() = evaluate(f, worst.a, mid);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(evaluate(f, mid, worst.b));
        std::push_heap(heap.begin(), heap.end());
        ++result.intervals;
        finite = summed(result);
    }

    result.converged = finite && std::isfinite(result.value) &&
                       result.abs_error <= options.abs_tolerance;
    return result;
}

}  // namespace predpower::quadrature
