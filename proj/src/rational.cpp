#include "lrsynth/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace lrsynth {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

}  // namespace

Rational parse_rational(std::string_view raw) {
    const std::string text = trim(raw);
    auto fail = [&]() -> Rational {
        throw std::invalid_argument("malformed rational '" + std::string(raw) + "'");
    };
    if (text.empty()) return fail();

    std::string_view body = text;
    bool negative = false;
    if (body.front() == '-' || body.front() == '+') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    Rational value;
    if (auto slash = body.find('/'); slash != std::string_view::npos) {
        auto num = body.substr(0, slash);
        auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        mpz_class d{std::string(den), 10};
        if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(raw) + "'");
        value = Rational(mpz_class(std::string(num), 10), d);
    } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
        auto whole = body.substr(0, dot);
        auto frac = body.substr(dot + 1);
        if (whole.empty() && frac.empty()) return fail();
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) return fail();
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        mpz_class digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
        value = Rational(digits, scale);
    } else {
        if (!all_digits(body)) return fail();
        value = Rational(mpz_class(std::string(body), 10));
    }
    value.canonicalize();
    return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

Rational ratio(long num, long den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    Rational value(num, den);
    value.canonicalize();
    return value;
}

double to_double(const Rational& value) {
    return value.get_d();
}

Rational sum(const std::vector<Rational>& values) {
    Rational total = 0;
    for (const auto& v : values) total += v;
    return total;
}

}  // namespace lrsynth
