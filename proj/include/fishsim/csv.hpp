#ifndef FISHSIM_CSV_HPP
#define FISHSIM_CSV_HPP

#include <string>

namespace fishsim {

/** Locale-independent decimal formatting for every CSV and report we emit:
 * 17 significant digits via std::to_chars (general form, "." decimal point),
 * which round-trips any double exactly and is byte-deterministic. */
std::string format_double(double v);

/// Same formatter, shortest round-trip form; used for the config echo.
std::string format_double_shortest(double v);

} // namespace fishsim

#endif
