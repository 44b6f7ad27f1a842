#ifndef MOMENTBOUNDS_FORMAT_HPP
#define MOMENTBOUNDS_FORMAT_HPP

#include <string>

namespace momentbounds {

// Renders a finite double with 17 significant digits (round-trip exact).
// Infinities come out as "+inf"/"-inf", NaN as "nan".
std::string format_double(double x);

// Same, but wraps non-finite values in quotes so the result stays valid JSON.
std::string json_number(double x);

} // namespace momentbounds

#endif
