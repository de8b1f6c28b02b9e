#include "neron/json_io.hpp"

#include "neron/errors.hpp"

#include <limits>

namespace neron::json_io {

namespace {

const Json& field(const Json& j, const char* key)
{
    if (!j.is_object())
        throw InvalidArgument(std::string("expected a JSON object with key '") + key + "'");
    auto it = j.find(key);
    if (it == j.end())
        throw InvalidArgument(std::string("missing key '") + key + "'");
    return *it;
}

unsigned unsigned_from_json(const Json& j, const char* what)
{
    long v = small_int_from_json(j, what);
    if (v < 0 || v > std::numeric_limits<int>::max())
        throw InvalidArgument(std::string(what) + " out of range");
    return static_cast<unsigned>(v);
}

std::vector<int> int_list(const Json& j, const char* what)
{
    if (!j.is_array())
        throw InvalidArgument(std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& x : j) {
        long v = small_int_from_json(x, what);
        if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
            throw InvalidArgument(std::string(what) + " entry out of range");
        out.push_back(static_cast<int>(v));
    }
    return out;
}

} // namespace

Json integer_to_json(const Integer& x)
{
    if (x.fits_slong_p())
        return static_cast<std::int64_t>(x.get_si());
    return x.get_str();
}

Json integer_to_string_json(const Integer& x) { return x.get_str(); }

Integer integer_from_json(const Json& j)
{
    if (j.is_number_integer())
        return Integer(static_cast<long>(j.get<std::int64_t>()));
    if (j.is_string()) {
        const std::string& s = j.get_ref<const std::string&>();
        std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (k == s.size())
            throw InvalidArgument("'" + s + "' is not an integer");
        for (std::size_t i = k; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9')
                throw InvalidArgument("'" + s + "' is not an integer");
        return Integer(s[0] == '+' ? s.substr(1) : s, 10);
    }
    throw InvalidArgument("expected an integer, got " + j.dump());
}

long small_int_from_json(const Json& j, const char* what)
{
    Integer x = integer_from_json(j);
    if (!x.fits_slong_p())
        throw InvalidArgument(std::string(what) + " is too large");
    return x.get_si();
}

Json to_json(const Partition& p) { return p.parts(); }

Partition partition_from_json(const Json& j) { return Partition(int_list(j, "partition")); }

Json to_json(const AbGroup& g)
{
    Json out = Json::object();
    for (const auto& [l, p] : g.primary())
        out[std::to_string(l)] = to_json(p);
    return out;
}

AbGroup abgroup_from_json(const Json& j)
{
    if (!j.is_object())
        throw InvalidArgument("group must be a JSON object mapping primes to partitions");
    std::map<std::int64_t, Partition> primary;
    for (const auto& [key, value] : j.items()) {
        long l = small_int_from_json(Json(key), "prime");
        if (!is_prime(l))
            throw InvalidArgument("group key " + key + " is not a prime");
        if (primary.count(l))
            throw InvalidArgument("duplicate prime " + key);
        primary[l] = partition_from_json(value);
    }
    return AbGroup::from_primary(primary);
}

Json to_json(const IntMatrix& m)
{
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k)
            row.push_back(m(i, k).get_str());
        rows.push_back(std::move(row));
    }
    return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

IntMatrix matrix_from_json(const Json& j)
{
    long r = small_int_from_json(field(j, "rows"), "rows");
    long c = small_int_from_json(field(j, "cols"), "cols");
    if (r < 0 || c < 0 || r > 100000 || c > 100000)
        throw InvalidArgument("matrix dimensions out of range");
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != static_cast<std::size_t>(r))
        throw InvalidArgument("matrix: 'entries' must have 'rows' rows");
    IntMatrix m(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (!e[i].is_array() || e[i].size() != m.cols())
            throw InvalidArgument("matrix: row " + std::to_string(i) + " does not have 'cols' entries");
        for (std::size_t k = 0; k < m.cols(); ++k)
            m(i, k) = integer_from_json(e[i][k]);
    }
    return m;
}

Json poly_to_json(const ZPoly& p)
{
    Json out = Json::array();
    for (const auto& c : p)
        out.push_back(c.get_str());
    return out;
}

ZPoly poly_from_json(const Json& j)
{
    if (!j.is_array())
        throw InvalidArgument("polynomial must be an array of coefficients");
    ZPoly p;
    for (const auto& c : j)
        p.push_back(integer_from_json(c));
    trim(p);
    return p;
}

namespace {

Json ranks_json(const Ranks& r)
{
    return {{"t", r.t}, {"a", r.a}, {"u", r.u}, {"t_tilde", r.t_tilde}, {"a_tilde", r.a_tilde}};
}

Ranks ranks_from_json(const Json& j)
{
    Ranks r;
    r.t = small_int_from_json(field(j, "t"), "t");
    r.a = small_int_from_json(field(j, "a"), "a");
    r.u = small_int_from_json(field(j, "u"), "u");
    r.t_tilde = small_int_from_json(field(j, "t_tilde"), "t_tilde");
    r.a_tilde = small_int_from_json(field(j, "a_tilde"), "a_tilde");
    return r;
}

} // namespace

Json to_json(const GaloisLatticeModel& m)
{
    Json out;
    out["name"] = m.name;
    out["l"] = m.l;
    out["mode"] = m.mode == Arithmetic::exact ? "exact" : "modular";
    if (m.mode == Arithmetic::modular) {
        out["N"] = m.precision;
        out["working_precision"] = m.working_precision;
    }
    out["rank"] = m.rank();
    out["tau"] = to_json(m.tau);
    Json filt = Json::array();
    for (const auto& f : m.filtration)
        filt.push_back(to_json(f));
    out["filtration"] = filt;
    out["ranks"] = ranks_json(m.ranks);
    out["m_t"] = m.m_t;
    out["m_a"] = m.m_a;
    if (m.charpoly_t)
        out["charpoly_t"] = poly_to_json(*m.charpoly_t);
    if (m.charpoly_a)
        out["charpoly_a"] = poly_to_json(*m.charpoly_a);
    out["warnings"] = m.warnings;
    if (!m.rank_identities)
        out["rank_identities"] = false;
    return out;
}

GaloisLatticeModel model_from_json(const Json& j)
{
    GaloisLatticeModel m;
    if (j.contains("name")) {
        if (!j["name"].is_string())
            throw InvalidArgument("model: 'name' must be a string");
        m.name = j["name"].get<std::string>();
    } else {
        m.name = "model";
    }
    m.l = small_int_from_json(field(j, "l"), "l");
    require_prime(m.l, "model");
    std::string mode = j.contains("mode") ? j["mode"].get<std::string>() : "exact";
    if (mode == "exact") {
        m.mode = Arithmetic::exact;
    } else if (mode == "modular") {
        m.mode = Arithmetic::modular;
        m.precision = unsigned_from_json(field(j, "N"), "N");
        if (m.precision == 0)
            throw InvalidArgument("model: N must be positive");
        m.working_precision = j.contains("working_precision")
                                  ? unsigned_from_json(j["working_precision"], "working_precision")
                                  : m.precision;
    } else {
        throw InvalidArgument("model: mode must be 'exact' or 'modular'");
    }
    m.tau = matrix_from_json(field(j, "tau"));
    if (j.contains("rank") && static_cast<std::size_t>(small_int_from_json(j["rank"], "rank")) != m.tau.rows())
        throw InvalidArgument("model: 'rank' disagrees with tau");
    const Json& f = field(j, "filtration");
    if (!f.is_array() || f.size() != 4)
        throw InvalidArgument("model: 'filtration' must list four generator matrices");
    for (std::size_t i = 0; i < 4; ++i)
        m.filtration[i] = matrix_from_json(f[i]);
    m.ranks = ranks_from_json(field(j, "ranks"));
    m.m_t = j.contains("m_t") ? int_list(j["m_t"], "m_t") : CycloMultiplicities{};
    m.m_a = j.contains("m_a") ? int_list(j["m_a"], "m_a") : CycloMultiplicities{};
    if (j.contains("charpoly_t"))
        m.charpoly_t = poly_from_json(j["charpoly_t"]);
    if (j.contains("charpoly_a"))
        m.charpoly_a = poly_from_json(j["charpoly_a"]);
    if (j.contains("warnings"))
        for (const auto& w : j["warnings"])
            m.warnings.push_back(w.get<std::string>());
    if (j.contains("rank_identities"))
        m.rank_identities = j["rank_identities"].get<bool>();
    if (m.mode == Arithmetic::modular)
        m.tau = ModMatrix(m.l, m.precision, m.tau).lift();
    return m;
}

Json to_json(const PhiReport& r, std::int64_t l)
{
    Json graded = Json::array();
    for (const auto& g : r.graded)
        graded.push_back(to_json(g));
    Json layers = Json::object();
    for (const auto& [ij, p] : r.layers)
        layers[std::to_string(ij.first) + "/" + std::to_string(ij.second)] = to_json(p);
    return {{"l", l},
            {"phi", to_json(r.phi)},
            {"order", integer_to_string_json(ipow(l, static_cast<unsigned>(r.phi.total())))},
            {"graded", graded},
            {"layers", layers},
            {"corank", r.corank}};
}

Json to_json(const RealizabilityQuery& q)
{
    return {{"group", to_json(q.G)}, {"p", q.p}, {"d", q.d}, {"t", q.t}, {"a", q.a}, {"u", q.u}};
}

RealizabilityQuery query_from_json(const Json& j)
{
    RealizabilityQuery q;
    q.G = abgroup_from_json(field(j, "group"));
    q.p = j.contains("p") ? small_int_from_json(j["p"], "p") : 0;
    q.t = small_int_from_json(field(j, "t"), "t");
    q.a = small_int_from_json(field(j, "a"), "a");
    q.u = small_int_from_json(field(j, "u"), "u");
    q.d = j.contains("d") ? small_int_from_json(j["d"], "d") : q.t + q.a + q.u;
    validate_query(q);
    return q;
}

Json to_json(const BlockSpec& b)
{
    Json out{{"kind", to_string(b.kind)},
             {"dim", b.dim},
             {"ranks", {{"t", b.ranks.t}, {"a", b.ranks.a}, {"u", b.ranks.u}}},
             {"predicted_phi", to_json(b.predicted_phi)}};
    switch (b.kind) {
    case BlockKind::tate_product: {
        Json ns = Json::array();
        for (const auto& n : b.ns)
            ns.push_back(n.get_str());
        out["ns"] = ns;
        break;
    }
    case BlockKind::ex52:
    case BlockKind::ex53:
        out["l"] = b.l;
        out["i"] = b.i;
        break;
    case BlockKind::ex54:
        out["l"] = b.l;
        out["r"] = b.r;
        out["s"] = b.s;
        break;
    case BlockKind::ex55:
        out["l"] = b.l;
        out["r"] = b.r;
        break;
    case BlockKind::klein_pair:
    case BlockKind::cyclic2_single:
        out["l"] = b.l;
        break;
    case BlockKind::abelian_pad:
    case BlockKind::unipotent_pad:
        break;
    }
    return out;
}

BlockSpec block_from_json(const Json& j)
{
    BlockSpec b;
    b.kind = block_kind_from_string(field(j, "kind").get<std::string>());
    if (j.contains("l"))
        b.l = small_int_from_json(j["l"], "l");
    if (j.contains("r"))
        b.r = unsigned_from_json(j["r"], "r");
    if (j.contains("s"))
        b.s = unsigned_from_json(j["s"], "s");
    if (j.contains("i"))
        b.i = unsigned_from_json(j["i"], "i");
    if (j.contains("ns"))
        for (const auto& n : j["ns"])
            b.ns.push_back(integer_from_json(n));
    b.dim = small_int_from_json(field(j, "dim"), "dim");
    const Json& r = field(j, "ranks");
    b.ranks = {small_int_from_json(field(r, "t"), "t"), small_int_from_json(field(r, "a"), "a"),
               small_int_from_json(field(r, "u"), "u")};
    b.predicted_phi = abgroup_from_json(field(j, "predicted_phi"));
    return b;
}

Json to_json(const ConstructionPlan& p, const RealizabilityQuery& q)
{
    Json blocks = Json::array();
    for (const auto& b : p.blocks)
        blocks.push_back(to_json(b));
    return {{"query", to_json(q)}, {"blocks", blocks}};
}

ConstructionPlan plan_from_json(const Json& j)
{
    const Json& blocks = field(j, "blocks");
    if (!blocks.is_array())
        throw InvalidArgument("plan: 'blocks' must be an array");
    ConstructionPlan p;
    for (const auto& b : blocks)
        p.blocks.push_back(block_from_json(b));
    return p;
}

Json parse(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
}

} // namespace neron::json_io
