#pragma once

#include "neron/abgroup.hpp"
#include "neron/model.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace neron {

struct RealizabilityQuery {
    AbGroup G;
    std::int64_t p = 0; // residue characteristic, 0 or a prime
    long d = 0;
    long t = 0;
    long a = 0;
    long u = 0;
};

// Query with d = t + a + u filled in.
RealizabilityQuery make_query(const AbGroup& g, long t, long a, long u, std::int64_t p = 0);
// Throws InvalidArgument when d != t+a+u, a rank is negative, p is neither
// 0 nor prime, or p divides |G|.
void validate_query(const RealizabilityQuery& q);

// sum over l != p of f_l(d^t(m_l)), where m_l is the invariant of G_l.
Rational rhs_bound(const AbGroup& g, long t, std::int64_t p);
bool is_realizable(const RealizabilityQuery& q);

enum class BlockKind { tate_product, ex52, ex53, ex54, ex55, klein_pair, cyclic2_single, abelian_pad, unipotent_pad };

std::string to_string(BlockKind k);
BlockKind block_kind_from_string(const std::string& s);

struct BlockRanks {
    long t = 0;
    long a = 0;
    long u = 0;
    bool operator==(const BlockRanks&) const = default;
};

struct BlockSpec {
    BlockKind kind = BlockKind::abelian_pad;
    std::int64_t l = 0; // 0 for tate_product and pads
    unsigned r = 0;
    unsigned s = 0;
    unsigned i = 0;
    std::vector<Integer> ns; // tate_product only
    long dim = 0;
    BlockRanks ranks;
    AbGroup predicted_phi;

    bool operator==(const BlockSpec&) const = default;
};

struct ConstructionPlan {
    std::vector<BlockSpec> blocks;
};

// The construction from the proof of the classification theorem.
// Throws NotRealizable when is_realizable(q) is false.
ConstructionPlan plan(const RealizabilityQuery& q);

struct PlanVerdict {
    bool ok = true;
    std::vector<std::string> diagnostics;
};
PlanVerdict verify_plan(const ConstructionPlan& plan, const RealizabilityQuery& q);

// Builds the model for a block. Modular blocks use precision 2m+2 unless
// `precision` is given. Tate and pad blocks are exact.
GaloisLatticeModel block_model(const BlockSpec& b, unsigned precision = 0);

// Memo of per-block Φ computations shared across end_to_end_check calls.
class BlockPhiCache {
public:
    // l-part of Φ for the block's model read at l.
    const Partition& phi(const BlockSpec& b, std::int64_t l, unsigned precision = 0);
    std::size_t size() const { return cache_.size(); }

private:
    std::map<std::string, Partition> cache_;
};

struct EndToEndVerdict {
    bool ok = true;
    std::vector<std::string> diagnostics;
};
// Compares each block's computed Φ with its prediction at every prime
// dividing the predicted order; pads must give a trivial Φ.
EndToEndVerdict end_to_end_check(const ConstructionPlan& plan, BlockPhiCache* cache = nullptr, unsigned precision = 0);

} // namespace neron
