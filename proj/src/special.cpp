#include "pdmqi/special.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "pdmqi/error.hpp"

namespace pdmqi::special {

long nonpositive_integer_index(double x) noexcept
{
    const double r = std::round(x);
    if (r > 0.0 || std::fabs(x - r) > kIntegerTolerance) {
        return -1;
    }
    return static_cast<long>(-r);
}

double hyp2f1_terminating(const HypergeometricArgs& args)
{
    double a = args.a_param;
    double b = args.b_param;
    const double c = args.c_param;

    const long na = nonpositive_integer_index(a);
    const long nb = nonpositive_integer_index(b);
    if (na < 0 && nb < 0) {
        std::ostringstream msg;
        msg << "2F1(" << a << ", " << b << "; " << c
            << "; z) does not terminate: no upper parameter is a non-positive integer";
        throw Error(ErrorKind::NonTerminating, msg.str());
    }

    // Snap near-integers so the vanishing Pochhammer factor is exactly zero.
    long terms = -1;
    if (na >= 0) {
        a = -static_cast<double>(na);
        terms = na;
    }
    if (nb >= 0) {
        b = -static_cast<double>(nb);
        terms = (terms < 0) ? nb : std::min(terms, nb);
    }

    const long nc = nonpositive_integer_index(c);
    if (nc >= 0 && nc < terms) {
        std::ostringstream msg;
        msg << "2F1 lower parameter c=" << c << " hits a pole at k=" << nc + 1
            << " before the series terminates at k=" << terms;
        throw Error(ErrorKind::PoleInC, msg.str());
    }

    double term = 1.0;
    double sum = 1.0;
    for (long k = 0; k < terms; ++k) {
        const double kk = static_cast<double>(k);
        term *= (a + kk) * (b + kk) / ((c + kk) * (kk + 1.0)) * args.z;
        sum += term;
    }
    return sum;
}

} // namespace pdmqi::special
