#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace mwin {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double v)
    {
        const double t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v)) {
            comp_ += (sum_ - t) + v;
        } else {
            comp_ += (v - t) + sum_;
        }
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Compensated sum of the terms, largest magnitude first. Reorders `terms`.
inline double sum_descending(std::vector<double>& terms)
{
    std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::fabs(a) > std::fabs(b); });
    CompensatedSum s;
    for (double t : terms) s.add(t);
    return s.value();
}

}  // namespace mwin
