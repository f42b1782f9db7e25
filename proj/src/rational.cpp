#include "gonlab/rational.hpp"

#include <charconv>
#include <numeric>

#include "gonlab/error.hpp"

namespace gonlab {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t value = 0;
    auto first = text.data();
    auto last = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || first == last)
        throw ParseError("malformed rational '" + std::string(whole) + "'");
    return value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    auto num = parse_int(text.substr(0, slash), text);
    auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
        throw ParseError("zero denominator in '" + std::string(text) + "'");
    return Rational(num, den);
}

std::string to_string(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool is_integer(const Rational& r) { return r.denominator() == 1; }

std::int64_t lcm_of(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

const Rational& Length::value() const
{
    if (infinite_)
        throw InvalidGraph("infinite length has no finite value");
    return value_;
}

Length parse_length(std::string_view text)
{
    if (text == "inf" || text == "infinity")
        return Length::infinity();
    return Length(parse_rational(text));
}

std::string to_string(const Length& l)
{
    return l.is_infinite() ? std::string("inf") : to_string(l.value());
}

} // namespace gonlab
