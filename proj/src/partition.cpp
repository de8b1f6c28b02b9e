#include "neron/partition.hpp"

#include "neron/errors.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace neron {

namespace {

void normalize(std::vector<int>& parts)
{
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i] < 0)
            throw InvalidArgument("partition has a negative part");
        if (i + 1 < parts.size() && parts[i] < parts[i + 1])
            throw InvalidArgument("partition is not weakly decreasing");
    }
    while (!parts.empty() && parts.back() == 0)
        parts.pop_back();
}

} // namespace

Partition::Partition(std::initializer_list<int> parts) : parts_(parts) { normalize(parts_); }

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) { normalize(parts_); }

Partition Partition::from_unsorted(std::vector<int> parts)
{
    std::sort(parts.begin(), parts.end(), std::greater<>());
    return Partition(std::move(parts));
}

int Partition::total() const
{
    int s = 0;
    for (int x : parts_)
        s += x;
    return s;
}

std::string Partition::str() const
{
    std::string out = "(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            out += ",";
        out += std::to_string(parts_[i]);
    }
    return out + ")";
}

bool operator<(const Partition& p, const Partition& q) { return lex_compare(p, q) < 0; }

Partition conjugate(const Partition& p)
{
    std::vector<int> q;
    if (p.empty())
        return {};
    q.reserve(static_cast<std::size_t>(p[0]));
    for (int i = 0; i < p[0]; ++i) {
        int count = 0;
        for (int x : p.parts())
            if (x >= i + 1)
                ++count;
        q.push_back(count);
    }
    return Partition(std::move(q));
}

std::strong_ordering lex_compare(const Partition& p, const Partition& q)
{
    std::size_t n = std::max(p.length(), q.length());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = p[i] <=> q[i]; c != 0)
            return c;
    }
    return std::strong_ordering::equal;
}

bool dominates(const Partition& p, const Partition& q)
{
    for (std::size_t i = 0; i < p.length(); ++i)
        if (q[i] < p[i])
            return false;
    return true;
}

bool majorizes(const Partition& q, const Partition& p)
{
    long sq = 0, sp = 0;
    for (std::size_t i = 0; i < std::max(p.length(), q.length()); ++i) {
        sq += q[i];
        sp += p[i];
        if (sq < sp)
            return false;
    }
    return true;
}

Integer delta_l(std::int64_t l, const Partition& p)
{
    require_prime(l, "delta_l");
    Integer s = 0;
    for (int x : p.parts())
        s += ipow(l, static_cast<unsigned>(x)) - 1;
    return s;
}

Integer delta_prime_l(std::int64_t l, const Partition& p)
{
    require_prime(l, "delta_prime_l");
    if (p.empty())
        return 0;
    Integer s = ipow(l, static_cast<unsigned>(p[0])) - 1;
    long tail = 0;
    for (std::size_t i = 1; i < p.length(); ++i)
        tail += p[i];
    return s + Integer(static_cast<long>(l - 1)) * tail;
}

Partition shift_d(const Partition& p, std::size_t t)
{
    if (t >= p.length())
        return {};
    return Partition(std::vector<int>(p.parts().begin() + static_cast<std::ptrdiff_t>(t), p.parts().end()));
}

Partition shift_dprime(const Partition& p)
{
    std::vector<int> q;
    for (int x : p.parts())
        if (x > 1)
            q.push_back(x - 1);
    return Partition(std::move(q));
}

Rational f_l(std::int64_t l, const Partition& p)
{
    require_prime(l, "f_l");
    Rational s = 0;
    for (int m : p.parts()) {
        Integer lo = ipow(l, static_cast<unsigned>(m / 2));
        Integer hi = ipow(l, static_cast<unsigned>((m + 1) / 2));
        s += Rational(lo + hi, 2) - 1;
    }
    s.canonicalize();
    return s;
}

std::pair<Partition, Partition> balanced_split(const Partition& p)
{
    std::vector<int> r, s;
    for (int x : p.parts()) {
        r.push_back((x + 1) / 2);
        s.push_back(x / 2);
    }
    return {Partition(std::move(r)), Partition(std::move(s))};
}

Partition merge(const Partition& a, const Partition& b)
{
    std::vector<int> all = a.parts();
    all.insert(all.end(), b.parts().begin(), b.parts().end());
    return Partition::from_unsorted(std::move(all));
}

Partition componentwise_sum(const Partition& a, const Partition& b)
{
    std::size_t n = std::max(a.length(), b.length());
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = a[i] + b[i];
    return Partition(std::move(out));
}

std::vector<Partition> partitions_of(int n)
{
    if (n < 0)
        throw InvalidArgument("partitions_of: negative argument");
    std::vector<Partition> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int max_part) {
        if (remaining == 0) {
            out.emplace_back(cur);
            return;
        }
        for (int x = std::min(remaining, max_part); x >= 1; --x) {
            cur.push_back(x);
            rec(remaining - x, x);
            cur.pop_back();
        }
    };
    rec(n, n);
    return out;
}

Integer min_split_delta_bruteforce(std::int64_t l, const Partition& e, std::uint64_t budget)
{
    require_prime(l, "min_split_delta_bruteforce");
    const int n = e.total();
    std::vector<std::vector<Partition>> by_size(static_cast<std::size_t>(n) + 1);
    std::uint64_t pairs = 0;
    for (int k = 0; k <= n; ++k)
        by_size[static_cast<std::size_t>(k)] = partitions_of(k);
    for (int k = 0; k <= n; ++k)
        pairs += by_size[static_cast<std::size_t>(k)].size() * by_size[static_cast<std::size_t>(n - k)].size();
    if (pairs > budget)
        throw BudgetExceeded("min_split_delta_bruteforce: " + std::to_string(pairs) + " candidate pairs");

    std::optional<Integer> best;
    for (int k = 0; k <= n; ++k) {
        for (const Partition& r : by_size[static_cast<std::size_t>(k)]) {
            Integer dr = delta_l(l, r);
            for (const Partition& s : by_size[static_cast<std::size_t>(n - k)]) {
                if (lex_compare(componentwise_sum(r, s), e) < 0)
                    continue;
                Integer v = dr + delta_l(l, s);
                if (!best || v < *best)
                    best = v;
            }
        }
    }
    // (e, ()) is always admissible, so a minimum exists.
    return *best;
}

} // namespace neron
