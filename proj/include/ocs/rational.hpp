#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ocs {

// Exact rational scalar. GMP keeps values canonical (den > 0, gcd = 1)
// through every arithmetic operation, which is what makes equality
// testable as equality everywhere in this library.
using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

class parse_error : public std::runtime_error {
  public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Parses "p", "-p" or "p/q" decimal strings. The two-integer mpq constructor
// canonicalizes; a raw mpq string assignment would not (and a zero
// denominator would trap in GMP), hence the component-wise route.
inline Rat parse_rat(const std::string& text) {
    const auto check_digits = [&](const std::string& part) {
        if (part.empty() || (part.size() == 1 && (part[0] == '-' || part[0] == '+')))
            throw parse_error("malformed rational literal '" + text + "'");
        for (std::size_t i = part[0] == '-' || part[0] == '+' ? 1 : 0; i < part.size(); ++i)
            if (part[i] < '0' || part[i] > '9')
                throw parse_error("malformed rational literal '" + text + "'");
    };
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            check_digits(text);
            return Rat(Int(text));
        }
        std::string num_part = text.substr(0, slash), den_part = text.substr(slash + 1);
        check_digits(num_part);
        check_digits(den_part);
        Int num(num_part), den(den_part);
        if (den == 0) throw parse_error("zero denominator in rational literal '" + text + "'");
        return Rat(num, den);
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("malformed rational literal '" + text + "'");
    }
}

// Serializes as "p" or "p/q"; exact round-trip with parse_rat.
inline std::string rat_str(const Rat& r) { return r.str(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

inline int rat_sign(const Rat& r) { return r < 0 ? -1 : (r > 0 ? 1 : 0); }

}  // namespace ocs
