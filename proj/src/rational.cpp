#include <qseries/rational.hpp>

#include <cctype>
#include <limits>
#include <numeric>

namespace qseries
{

Rational parse_rational(std::string_view text)
{
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw Error("empty rational literal");
    }
    const auto slash = text.find('/');
    const auto check_digits = [&](std::string_view part, bool allow_sign) {
        if (allow_sign && !part.empty() && (part.front() == '-' || part.front() == '+')) {
            part.remove_prefix(1);
        }
        if (part.empty()) {
            throw Error("malformed rational literal '" + std::string(text) + "'");
        }
        for (char ch : part) {
            if (!std::isdigit(static_cast<unsigned char>(ch))) {
                throw Error("malformed rational literal '" + std::string(text) + "'");
            }
        }
    };
    std::string num(text.substr(0, slash));
    std::string den = slash == std::string_view::npos ? std::string("1") : std::string(text.substr(slash + 1));
    check_digits(num, true);
    check_digits(den, false);
    if (!num.empty() && num.front() == '+') {
        num.erase(0, 1);
    }
    Integer d(den);
    if (d == 0) {
        throw Error("zero denominator in '" + std::string(text) + "'");
    }
    Rational r(Integer(num), d);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational &r)
{
    if (r.get_den() == 1) {
        return r.get_num().get_str();
    }
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Integer floor(const Rational &r)
{
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

Integer ceil(const Rational &r)
{
    Integer out;
    mpz_cdiv_q(out.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return out;
}

std::int64_t to_int64(const Integer &z)
{
    if (!z.fits_slong_p()) {
        throw Error("integer " + z.get_str() + " out of 64-bit range");
    }
    return static_cast<std::int64_t>(z.get_si());
}

std::int64_t to_int64(const Rational &r)
{
    if (!is_integral(r)) {
        throw Error("expected an integer, got " + to_string(r));
    }
    return to_int64(r.get_num());
}

std::int64_t gcd64(std::int64_t a, std::int64_t b)
{
    return std::gcd(a, b);
}

std::int64_t lcm64(std::int64_t a, std::int64_t b)
{
    if (a == 0 || b == 0) {
        return 0;
    }
    const auto g = std::gcd(a, b);
    const auto a_red = (a < 0 ? -a : a) / g;
    const auto b_abs = b < 0 ? -b : b;
    if (a_red > std::numeric_limits<std::int64_t>::max() / b_abs) {
        throw Error("lattice denominator overflow");
    }
    return a_red * b_abs;
}

} // namespace qseries
