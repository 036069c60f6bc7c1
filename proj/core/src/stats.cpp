#include "dsm/stats.hpp"

#include <algorithm>

namespace dsm {

double ks_two_sample(std::vector<double> x, std::vector<double> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    size_t i = 0, j = 0;
    double worst = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i] <= y[j])
            ++i;
        else
            ++j;
        worst = std::max(worst, std::abs(static_cast<double>(i) / nx -
                                         static_cast<double>(j) / ny));
    }
    return worst;
}

}  // namespace dsm
