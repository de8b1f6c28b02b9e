#include "neron/integer.hpp"

#include "neron/errors.hpp"

namespace neron {

bool is_prime(std::int64_t n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (n % 2 == 0)
        return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0)
            return false;
    return true;
}

Integer ipow(std::int64_t base, unsigned exp)
{
    Integer r;
    Integer b(static_cast<long>(base));
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), exp);
    return r;
}

unsigned valuation(const Integer& x, std::int64_t l)
{
    return split_valuation(x, l).first;
}

std::pair<unsigned, Integer> split_valuation(const Integer& x, std::int64_t l)
{
    if (x == 0)
        throw InvalidArgument("valuation of zero");
    Integer w = abs(x);
    Integer p(static_cast<long>(l));
    unsigned v = static_cast<unsigned>(mpz_remove(w.get_mpz_t(), w.get_mpz_t(), p.get_mpz_t()));
    return {v, w};
}

std::vector<std::pair<std::int64_t, unsigned>> factorize(std::int64_t n)
{
    if (n <= 0)
        throw InvalidArgument("factorize: non-positive argument");
    std::vector<std::pair<std::int64_t, unsigned>> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        unsigned e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e)
            out.emplace_back(d, e);
    }
    if (n > 1)
        out.emplace_back(n, 1);
    return out;
}

Integer phi_prime_power(std::int64_t l, unsigned i)
{
    if (i == 0)
        return 1;
    return ipow(l, i - 1) * (l - 1);
}

void require_prime(std::int64_t l, const char* what)
{
    if (!is_prime(l))
        throw InvalidArgument(std::string(what) + ": " + std::to_string(l) + " is not prime");
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) { return x.get_str(); }

} // namespace neron
