#pragma once

#include <span>
#include <vector>

namespace svfb {

// Piecewise cubic Hermite interpolant on strictly increasing knots.
class CubicHermite {
public:
    CubicHermite(std::vector<double> x, std::vector<double> y, std::vector<double> dy);
    double operator()(double x) const;
    std::size_t cell(double x) const;
    const std::vector<double>& knots() const { return x_; }

private:
    std::vector<double> x_, y_, d_;
};

// Fritsch-Carlson monotone slopes (PCHIP); the interpolant never overshoots
// the data and stays monotone on monotone data.
std::vector<double> pchip_slopes(std::span<const double> x, std::span<const double> y);

inline CubicHermite make_pchip(std::vector<double> x, std::vector<double> y) {
    auto d = pchip_slopes(x, y);
    return CubicHermite(std::move(x), std::move(y), std::move(d));
}

}  // namespace svfb
