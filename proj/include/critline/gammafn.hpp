#ifndef CRITLINE_GAMMAFN_HPP
#define CRITLINE_GAMMAFN_HPP

#include <complex>

namespace critline {

// log Gamma(z) by the Stirling series after shifting z right until
// |z + m| >= 15 (Gamma(z) = Gamma(z+m) / prod_{k<m} (z+k)).  The result is a
// branch of log Gamma; exponentials of log-ratio sums are exact, which is
// all the callers here need.  Throws std::invalid_argument within 1e-8 of a
// pole.
std::complex<double> log_gamma(std::complex<double> z);

} // namespace critline

#endif
