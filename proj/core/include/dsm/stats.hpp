#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace dsm {

// Running mean and standard error of iid samples.
struct MeanAccumulator {
    std::uint64_t n = 0;
    double sum = 0;
    double sumsq = 0;

    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    void merge(const MeanAccumulator& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        double m = mean();
        double v = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return v > 0 ? v : 0.0;
    }
    double std_error() const {
        return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
    }
};

// Sup-distance between a weighted empirical distribution and an analytic CDF.
// Observations enter through the probability integral transform: the caller
// adds u = F(x) with its weight, and the comparison reduces to weighted
// empirical-vs-uniform on [0,1]. Weights are binned, so the reported distance
// carries a discretization error of at most 1/bins, far below the thresholds
// used anywhere in this library.
class CdfDistance {
public:
    explicit CdfDistance(int bins = 1 << 14) : w_(bins, 0.0) {}

    void add(double u, double weight) {
        if (u < 0) u = 0;
        if (u > 1) u = 1;
        int b = static_cast<int>(u * w_.size());
        if (b >= static_cast<int>(w_.size())) b = static_cast<int>(w_.size()) - 1;
        w_[b] += weight;
        total_ += weight;
    }

    void merge(const CdfDistance& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] += o.w_[i];
        total_ += o.total_;
    }

    double distance() const {
        if (total_ <= 0) return 1.0;
        double cum = 0, worst = 0;
        const double nb = static_cast<double>(w_.size());
        for (size_t i = 0; i < w_.size(); ++i) {
            double lo = static_cast<double>(i) / nb;
            worst = std::max(worst, std::abs(cum / total_ - lo));
            cum += w_[i];
            double hi = static_cast<double>(i + 1) / nb;
            worst = std::max(worst, std::abs(cum / total_ - hi));
        }
        return worst;
    }

private:
    std::vector<double> w_;
    double total_ = 0;
};

// Two-sample Kolmogorov-Smirnov distance (unweighted); sorts copies.
double ks_two_sample(std::vector<double> x, std::vector<double> y);

// Outcome of a Monte Carlo verification or estimation run.
struct MCReport {
    std::uint64_t n_samples = 0;
    std::uint64_t n_skipped_ties = 0;
    double estimate = 0;
    double std_error = 0;
    std::optional<double> ks_distance;
    bool pass = false;
    double tolerance_used = 0;
    // Side values for paired comparisons (inequality and equality checks).
    double lhs = std::numeric_limits<double>::quiet_NaN();
    double rhs = std::numeric_limits<double>::quiet_NaN();

    // A run drowning in tie skips says nothing about the generic case.
    bool valid() const {
        return n_samples == 0 ||
               static_cast<double>(n_skipped_ties) <
                   0.01 * static_cast<double>(n_samples);
    }
};

// Binned density over [0, 1): values are density heights per bin, so the
// mass in bin i is values[i] / bins. total_mass records what the table is
// supposed to integrate to.
struct DensityTable {
    std::vector<double> values;
    double total_mass = 1.0;

    int bins() const { return static_cast<int>(values.size()); }
    double integral() const {
        double s = 0;
        for (double v : values) s += v;
        return values.empty() ? 0.0 : s / static_cast<double>(values.size());
    }
};

}  // namespace dsm
