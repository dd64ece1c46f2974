#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pssmp/path_engine.hpp"

namespace pssmp {

struct TestResult {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    long n = 0;
    bool passed = false;  // equivalent to statistic <= threshold
    std::string details;
};

// Reports are bit-reproducible from (params, seed, scheme); no wall-clock
// content is serialized.
struct ValidationReport {
    StableParams params;
    std::uint64_t seed = 0;
    SimScheme scheme;
    McConfig mc;
    std::vector<TestResult> tests;

    bool all_passed() const;
    std::string to_json() const;
};

// regularized incomplete beta I_x(a,b)
double beta_cdf(double a, double b, double x);

// Gamma(shape, rate) distribution function
double gamma_cdf(double shape, double rate, double x);

// sup distance between the empirical CDF of the samples and cdf (both
// one-sided gaps at every sample point)
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

double ks_two_sample(std::vector<double> a, std::vector<double> b);

// sup-norm errors of inverse(forward(xi)) over simulated xi paths
struct RoundTripStats {
    double max_sup = 0.0;
    double median_sup = 0.0;
};
RoundTripStats lamperti_roundtrip_stats(const StableParams& p, double dt, int n_paths,
                                        std::uint64_t seed, const QuadratureSpec& q);

// the statistical battery B1..B8
ValidationReport run_suite(const StableParams& p, const McConfig& mc, const QuadratureSpec& q);

}  // namespace pssmp
