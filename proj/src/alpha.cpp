#include "menugap/alpha.hpp"

#include <cfloat>
#include <cmath>
#include <stdexcept>

namespace menugap {

Interval alpha_enclosure(double tolerance) {
    if (!(tolerance > 0)) throw std::invalid_argument("alpha_enclosure: tolerance must be positive");

    const long max_terms = 1L << 26;
    double sum = 0.0, comp = 0.0;  // Kahan
    long l = 1;
    Interval out{};
    while (true) {
        ++l;
        double term = 1.0 / (static_cast<double>(l) * std::log(static_cast<double>(l)) * std::log(static_cast<double>(l)));
        double y = term - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;

        // Rounding margin: |error| <= 4 eps per accumulated term is generous
        // for Kahan summation at these magnitudes.
        double margin = 4.0 * DBL_EPSILON * static_cast<double>(l) * (1.0 + sum);
        double lo = sum - margin + 1.0 / std::log(static_cast<double>(l + 1));
        double hi = sum + margin + 1.0 / std::log(static_cast<double>(l));
        out = Interval{lo, hi};
        if (out.width() <= tolerance || l >= max_terms) break;
    }
    return out;
}

}  // namespace menugap
