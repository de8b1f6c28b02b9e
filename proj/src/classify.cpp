#include "neron/classify.hpp"

#include "neron/errors.hpp"

#include <sstream>

namespace neron {

RealizabilityQuery make_query(const AbGroup& g, long t, long a, long u, std::int64_t p)
{
    RealizabilityQuery q{g, p, t + a + u, t, a, u};
    validate_query(q);
    return q;
}

void validate_query(const RealizabilityQuery& q)
{
    if (q.t < 0 || q.a < 0 || q.u < 0 || q.d < 0)
        throw InvalidArgument("query: ranks must be non-negative");
    if (q.d != q.t + q.a + q.u)
        throw InvalidArgument("query: d must equal t + a + u");
    if (q.p != 0 && !is_prime(q.p))
        throw InvalidArgument("query: p must be 0 or a prime");
    if (q.p != 0 && !q.G.part(q.p).empty())
        throw InvalidArgument("query: |G| is divisible by p");
}

Rational rhs_bound(const AbGroup& g, long t, std::int64_t p)
{
    if (t < 0)
        throw InvalidArgument("rhs_bound: t must be non-negative");
    if (p != 0 && !g.part(p).empty())
        throw InvalidArgument("rhs_bound: G has a p-part");
    Rational s = 0;
    for (const auto& [l, part] : g.primary())
        s += f_l(l, shift_d(part, static_cast<std::size_t>(t)));
    return s;
}

bool is_realizable(const RealizabilityQuery& q)
{
    validate_query(q);
    return Rational(q.u) >= rhs_bound(q.G, q.t, q.p);
}

std::string to_string(BlockKind k)
{
    switch (k) {
    case BlockKind::tate_product: return "tate_product";
    case BlockKind::ex52: return "ex52";
    case BlockKind::ex53: return "ex53";
    case BlockKind::ex54: return "ex54";
    case BlockKind::ex55: return "ex55";
    case BlockKind::klein_pair: return "klein_pair";
    case BlockKind::cyclic2_single: return "cyclic2_single";
    case BlockKind::abelian_pad: return "abelian_pad";
    case BlockKind::unipotent_pad: return "unipotent_pad";
    }
    throw InvalidArgument("unknown block kind");
}

BlockKind block_kind_from_string(const std::string& s)
{
    for (BlockKind k : {BlockKind::tate_product, BlockKind::ex52, BlockKind::ex53, BlockKind::ex54, BlockKind::ex55,
                        BlockKind::klein_pair, BlockKind::cyclic2_single, BlockKind::abelian_pad,
                        BlockKind::unipotent_pad})
        if (to_string(k) == s)
            return k;
    throw InvalidArgument("unknown block kind '" + s + "'");
}

namespace {

long to_long(const Integer& x)
{
    if (!x.fits_slong_p())
        throw InvalidArgument("dimension does not fit in a machine integer");
    return x.get_si();
}

AbGroup lgroup(std::int64_t l, Partition p) { return AbGroup::from_primary({{l, std::move(p)}}); }

int as_int(unsigned x) { return static_cast<int>(x); }

// Dimension, ranks and predicted Φ from kind and parameters alone.
void fill_expected(BlockSpec& b)
{
    const std::int64_t l = b.l;
    auto lp = [&](unsigned e) { return ipow(l, e); };
    auto need_prime = [&] { require_prime(l, "block"); };
    switch (b.kind) {
    case BlockKind::tate_product:
        b.dim = static_cast<long>(b.ns.size());
        b.ranks = {b.dim, 0, 0};
        b.predicted_phi = AbGroup::from_invariant_factors(b.ns);
        return;
    case BlockKind::ex52:
        need_prime();
        b.dim = to_long(lp(b.i) - 1);
        b.predicted_phi = l == 2 ? lgroup(l, Partition{as_int(b.i + 1), as_int(b.i - 1)})
                                 : lgroup(l, Partition{as_int(b.i), as_int(b.i)});
        break;
    case BlockKind::ex53:
        need_prime();
        if (l == 2)
            throw InvalidArgument("ex53 block needs an odd prime");
        b.dim = to_long((lp(b.i) - 1) / 2);
        b.predicted_phi = lgroup(l, Partition{as_int(b.i)});
        break;
    case BlockKind::ex54:
        need_prime();
        b.dim = to_long((lp(b.r) + lp(b.r + b.s)) / 2 - 1);
        b.predicted_phi = lgroup(l, Partition{as_int(2 * b.r + b.s)});
        break;
    case BlockKind::ex55:
        need_prime();
        b.dim = to_long(lp(b.r) - 1);
        b.predicted_phi = lgroup(l, Partition{as_int(2 * b.r)});
        break;
    case BlockKind::klein_pair:
        b.dim = 1;
        b.predicted_phi = lgroup(2, Partition{1, 1});
        break;
    case BlockKind::cyclic2_single:
        b.dim = 1;
        b.predicted_phi = lgroup(2, Partition{1});
        break;
    case BlockKind::abelian_pad:
        b.ranks = {0, b.dim, 0};
        b.predicted_phi = AbGroup();
        return;
    case BlockKind::unipotent_pad:
        b.predicted_phi = AbGroup();
        break;
    }
    b.ranks = {0, 0, b.dim};
}

BlockSpec make_block(BlockKind kind, std::int64_t l, unsigned r, unsigned s, unsigned i)
{
    BlockSpec b;
    b.kind = kind;
    b.l = l;
    b.r = r;
    b.s = s;
    b.i = i;
    fill_expected(b);
    return b;
}

BlockSpec pad_block(BlockKind kind, long dim)
{
    BlockSpec b;
    b.kind = kind;
    b.dim = dim;
    fill_expected(b);
    return b;
}

} // namespace

ConstructionPlan plan(const RealizabilityQuery& q)
{
    if (!is_realizable(q))
        throw NotRealizable("G = " + q.G.str() + " is not realizable with t=" + std::to_string(q.t) +
                            ", a=" + std::to_string(q.a) + ", u=" + std::to_string(q.u));
    ConstructionPlan out;
    const std::size_t t = static_cast<std::size_t>(q.t);
    if (t > 0) {
        BlockSpec tate;
        tate.kind = BlockKind::tate_product;
        auto ns = q.G.to_invariant_factors();
        for (std::size_t k = 0; k < t; ++k)
            tate.ns.push_back(k < ns.size() ? ns[k] : Integer(1));
        fill_expected(tate);
        out.blocks.push_back(tate);
    }
    for (const auto& [l, part] : q.G.primary()) {
        if (l == q.p)
            continue;
        Partition rest = shift_d(part, t);
        int v = 0;
        for (int m : rest.parts()) {
            unsigned um = static_cast<unsigned>(m);
            if (m % 2 == 0)
                out.blocks.push_back(make_block(BlockKind::ex55, l, um / 2, 0, 0));
            else if (m > 1)
                out.blocks.push_back(make_block(BlockKind::ex54, l, (um - 1) / 2, 1, 0));
            else if (l != 2)
                out.blocks.push_back(make_block(BlockKind::ex53, l, 0, 0, 1));
            else
                ++v;
        }
        for (int k = 0; k < v / 2; ++k)
            out.blocks.push_back(make_block(BlockKind::klein_pair, 2, 0, 0, 0));
        if (v % 2)
            out.blocks.push_back(make_block(BlockKind::cyclic2_single, 2, 0, 0, 0));
    }
    if (q.a > 0)
        out.blocks.push_back(pad_block(BlockKind::abelian_pad, q.a));
    long used = 0;
    for (const auto& b : out.blocks)
        used += b.ranks.u;
    if (used > q.u)
        throw Error("plan: blocks need unipotent rank " + std::to_string(used) + " > u = " + std::to_string(q.u));
    if (q.u - used > 0)
        out.blocks.push_back(pad_block(BlockKind::unipotent_pad, q.u - used));
    return out;
}

PlanVerdict verify_plan(const ConstructionPlan& plan, const RealizabilityQuery& q)
{
    PlanVerdict v;
    auto fail = [&](std::string msg) {
        v.ok = false;
        v.diagnostics.push_back(std::move(msg));
    };
    try {
        validate_query(q);
    } catch (const Error& e) {
        fail(e.what());
        return v;
    }
    long dims = 0;
    BlockRanks sum;
    AbGroup merged;
    for (std::size_t k = 0; k < plan.blocks.size(); ++k) {
        const BlockSpec& b = plan.blocks[k];
        std::string tag = "block " + std::to_string(k) + " (" + to_string(b.kind) + ")";
        BlockSpec expect = b;
        try {
            fill_expected(expect);
        } catch (const Error& e) {
            fail(tag + ": " + e.what());
            continue;
        }
        if (b.dim < 0)
            fail(tag + ": negative dimension");
        if (b.dim != b.ranks.t + b.ranks.a + b.ranks.u)
            fail(tag + ": dim != t + a + u");
        if (b.dim != expect.dim)
            fail(tag + ": dim " + std::to_string(b.dim) + ", formula gives " + std::to_string(expect.dim));
        if (!(b.ranks == expect.ranks))
            fail(tag + ": ranks do not match the block kind");
        if (!(b.predicted_phi == expect.predicted_phi))
            fail(tag + ": predicted Φ " + b.predicted_phi.str() + ", formula gives " + expect.predicted_phi.str());
        if (q.p != 0 && !b.predicted_phi.part(q.p).empty())
            fail(tag + ": predicted Φ has a p-part");
        dims += b.dim;
        sum.t += b.ranks.t;
        sum.a += b.ranks.a;
        sum.u += b.ranks.u;
        merged = direct_sum(merged, b.predicted_phi);
    }
    if (dims != q.d)
        fail("total dimension " + std::to_string(dims) + " != d = " + std::to_string(q.d));
    if (!(sum == BlockRanks{q.t, q.a, q.u}))
        fail("rank sums (" + std::to_string(sum.t) + "," + std::to_string(sum.a) + "," + std::to_string(sum.u) +
             ") != (t,a,u)");
    if (!(merged == q.G))
        fail("merged Φ " + merged.str() + " != G = " + q.G.str());
    return v;
}

GaloisLatticeModel block_model(const BlockSpec& b, unsigned precision)
{
    auto prec = [&](unsigned m) { return precision ? precision : 2 * m + 2; };
    switch (b.kind) {
    case BlockKind::tate_product: return model_example51(b.ns, 2);
    case BlockKind::ex52: return model_example52(b.l, b.i);
    case BlockKind::ex53: return model_example53(b.l, b.i);
    case BlockKind::ex54: return model_example54(b.l, b.r, b.s, prec(2 * b.r + b.s));
    case BlockKind::ex55: return model_example55(b.l, b.r, prec(2 * b.r));
    case BlockKind::klein_pair: return model_unipotent_elliptic(EllipticKind::klein, 2);
    case BlockKind::cyclic2_single: return model_unipotent_elliptic(EllipticKind::cyclic2, 2);
    case BlockKind::abelian_pad: return model_abelian_pad(b.dim, 2);
    case BlockKind::unipotent_pad: return model_unipotent_pad(b.dim, 2);
    }
    throw InvalidArgument("unknown block kind");
}

namespace {

std::string block_key(const BlockSpec& b, std::int64_t l, unsigned precision)
{
    std::ostringstream os;
    os << to_string(b.kind) << '|' << b.l << '|' << b.r << '|' << b.s << '|' << b.i << '|' << b.dim << '|' << l << '|'
       << precision << '|';
    for (const auto& n : b.ns)
        os << n.get_str() << ',';
    return os.str();
}

} // namespace

const Partition& BlockPhiCache::phi(const BlockSpec& b, std::int64_t l, unsigned precision)
{
    std::string key = block_key(b, l, precision);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    GaloisLatticeModel m = block_model(b, precision);
    if (m.l != l) {
        // Exact blocks may be read at any prime; modular ones only at theirs.
        if (m.mode == Arithmetic::modular)
            throw InvalidArgument("block " + to_string(b.kind) + " lives at l = " + std::to_string(m.l));
        m.l = l;
    }
    validate_model(m);
    Partition p = compute_phi(m).phi;
    return cache_.emplace(std::move(key), std::move(p)).first->second;
}

EndToEndVerdict end_to_end_check(const ConstructionPlan& plan, BlockPhiCache* cache, unsigned precision)
{
    BlockPhiCache local;
    BlockPhiCache& c = cache ? *cache : local;
    EndToEndVerdict v;
    std::set<std::int64_t> plan_primes;
    for (const auto& b : plan.blocks)
        for (auto l : b.predicted_phi.primes())
            plan_primes.insert(l);
    if (plan_primes.empty())
        plan_primes.insert(2);
    for (std::size_t k = 0; k < plan.blocks.size(); ++k) {
        const BlockSpec& b = plan.blocks[k];
        std::string tag = "block " + std::to_string(k) + " (" + to_string(b.kind) + ")";
        const bool pad = b.kind == BlockKind::abelian_pad || b.kind == BlockKind::unipotent_pad;
        std::set<std::int64_t> primes = pad ? plan_primes : b.predicted_phi.primes();
        for (auto l : primes) {
            const Partition& got = c.phi(b, l, precision);
            Partition want = b.predicted_phi.part(l);
            if (!(got == want)) {
                v.ok = false;
                v.diagnostics.push_back(tag + " at l=" + std::to_string(l) + ": model gives " + got.str() +
                                        ", predicted " + want.str());
            }
        }
    }
    return v;
}

} // namespace neron
