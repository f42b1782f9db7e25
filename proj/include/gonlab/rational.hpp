#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace gonlab {

using Rational = boost::rational<std::int64_t>;

/// Parses "p", "-p" or "p/q" (no decimals, no whitespace). Throws ParseError.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is 1, otherwise "p/q" in lowest terms.
std::string to_string(const Rational& r);

bool is_integer(const Rational& r);

std::int64_t lcm_of(std::int64_t a, std::int64_t b);

/// Edge length: a positive rational or the distinguished value INFINITY.
class Length {
public:
    Length() = default;
    Length(Rational value) : value_(value) {}
    Length(std::int64_t value) : value_(value) {}

    static Length infinity()
    {
        Length l;
        l.infinite_ = true;
        return l;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    // Precondition: finite.
    const Rational& value() const;

    friend bool operator==(const Length& a, const Length& b)
    {
        if (a.infinite_ || b.infinite_)
            return a.infinite_ == b.infinite_;
        return a.value_ == b.value_;
    }

private:
    Rational value_{1};
    bool infinite_ = false;
};

/// "inf" or a rational string.
Length parse_length(std::string_view text);
std::string to_string(const Length& l);

} // namespace gonlab
