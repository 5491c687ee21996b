#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ctj {

// Every quantity the toolkit reasons about (costs, LP values, duals, flows)
// is an exact rational in lowest terms with positive denominator. Floating
// point shows up only when rendering reports for humans.
using Rat = mpq_class;

// Parses "p" or "p/q" (q > 0 after normalization). Throws std::invalid_argument.
Rat rat_parse(std::string_view text);

// Lowest-terms rendering: "p" for integers, "p/q" otherwise.
std::string rat_str(const Rat& q);

double rat_double(const Rat& q);

inline Rat rat(long num, long den = 1) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace ctj
