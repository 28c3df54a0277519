#include "koszul/core/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace koszul {

Scalar::Scalar(long num, long den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Scalar::Scalar(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

Scalar Scalar::parse(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    auto valid_int = [](std::string_view t) {
        if (t.empty()) return false;
        std::size_t i = (t.front() == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den.front() == '-')
        throw std::invalid_argument("Scalar: malformed rational '" + std::string(text) + "'");
    mpz_class n(num), d(den);
    if (d == 0) throw std::domain_error("Scalar: zero denominator in '" + std::string(text) + "'");
    return Scalar(mpq_class(n, d));
}

Scalar& Scalar::operator/=(const Scalar& o) {
    if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
    value_ /= o.value_;
    return *this;
}

Scalar factorial(int n) {
    mpz_class r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Scalar(mpq_class(r));
}

Scalar binomial(int n, int k) {
    if (k < 0 || k > n) return Scalar(0);
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Scalar(mpq_class(r));
}

}  // namespace koszul
