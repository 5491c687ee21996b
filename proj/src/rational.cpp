#include "ctj/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace ctj {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat rat_parse(std::string_view text) {
    std::string_view num = text, den = "1";
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        num = text.substr(0, slash);
        den = text.substr(slash + 1);
    }
    std::string_view num_digits = num;
    if (!num_digits.empty() && (num_digits[0] == '-' || num_digits[0] == '+'))
        num_digits.remove_prefix(1);
    if (!all_digits(num_digits) || !all_digits(den))
        throw std::invalid_argument("bad rational '" + std::string(text) + "'");
    mpz_class d(std::string(den), 10);
    if (d == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    Rat q(mpz_class(std::string(num), 10), d);
    q.canonicalize();
    return q;
}

std::string rat_str(const Rat& q) {
    return q.get_str();
}

double rat_double(const Rat& q) {
    return q.get_d();
}

}  // namespace ctj
