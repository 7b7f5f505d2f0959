#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "svfb/grid.hpp"
#include "svfb/initial_data.hpp"

namespace svfb {

struct FamilyMember {
    std::string id;
    std::function<double(double)> F, Fx;  // analytic value and first derivative
};

struct BumpParams {
    double center = 0.5, radius = 0.25;
};

// Test-function family; members are evaluated on any grid.
struct TestFamily {
    enum class Kind { polynomial, trig, bump, random_smooth, custom };
    Kind kind = Kind::polynomial;
    int max_degree = 6;                  // polynomial: x^k, k = 0..max_degree
    int max_freq = 6;                    // trig: cos(j pi x), sin(j pi x), j <= max_freq
    std::vector<BumpParams> bumps;       // bump: smooth compact bumps
    std::uint64_t seed = 42;             // random_smooth
    int count = 8;
    std::vector<FamilyMember> custom;    // custom: caller-provided members

    std::vector<FamilyMember> members() const;
};

TestFamily polynomial_family(int max_degree);
TestFamily trig_family(int max_freq);
TestFamily bump_family(std::vector<BumpParams> params);
TestFamily random_smooth_family(std::uint64_t seed, int count);
// Union of the four default families.
std::vector<TestFamily> default_families();

// Weight base for the weighted inequalities: d(x) or phi0 = C^alpha x(1-x).
struct BenchWeight {
    WeightBase base = WeightBase::distance;
    double alpha = 1.0;
};

struct RatioReport {
    std::string case_id;
    std::string params;
    double max_ratio = 0.0;      // at the requested grid
    std::string argmax;
    double ratio_at_n = 0.0;
    double ratio_at_2n = 0.0;    // grid with 2n - 1 nodes (same nodes plus midpoints)
    bool stable = false;         // relative change < 10 %
    std::size_t evaluated = 0;
    std::vector<std::string> notes;  // skipped members
};

enum class HardyVariant { l2, l1, sup };

// Gagliardo-Nirenberg type: |d^{k/2}F|_2 / (|d^{(k+1)/2}F|_2 + |d^{(k+1)/2}F|_2^{1/2}|d^{(k+1)/2}F_x|_2^{1/2}).
RatioReport gn_check(double k, const std::vector<TestFamily>& families, const Grid& grid,
                     const BenchWeight& weight = {});

// l2: |d^{k/2}F|_2 / |d^{k/2+1}(F+F_x)|_2, k > -1.
// l1: |d^k F|_1 / |d^{k+3/2-eps}(F+F_x)|_2, k + 1 > eps > 0.
// sup: |d^k F|_inf / |d^{k+1/2}(F+F_x)|_2, k > 0.
RatioReport hardy_check(HardyVariant variant, double k, double eps,
                        const std::vector<TestFamily>& families, const Grid& grid,
                        const BenchWeight& weight = {});

// Weighted embedding: |phi0^s F_x|_2 / (|phi0^s F_x + kappa phi0^{s-1}phi0' F|_2 + |phi0''|_inf |phi0^s F|_2),
// gated by 1/2 < s <= (kappa+1)/2 and s <= r <= (kappa+1)/2. Refinement
// rebuilds data at 2n-1 from data.spec (or subsamples when the spec is absent).
RatioReport embedding_check(double s, double kappa, double r, const std::vector<TestFamily>& families,
                            const InitialData& data);

// Sobolev: |F|_inf / (|F|_1 + |F_x|_1).
RatioReport sobolev_check(const std::vector<TestFamily>& families, const Grid& grid);

// Full inequality suite on the default families with both weights.
std::vector<RatioReport> run_inequality_suite(std::size_t n, double alpha = 1.0);

}  // namespace svfb
