#include "byzgd/adversary.hpp"

#include <algorithm>
#include <cmath>

#include "byzgd/rng.hpp"

namespace byzgd::attack {

std::string AttackSpec::name() const {
    switch (kind) {
        case AttackKind::None: return "none";
        case AttackKind::LabelFlip: return "label_flip";
        case AttackKind::RandomLabels: return "random_labels";
        case AttackKind::SignFlip: return "sign_flip(" + std::to_string(scale) + ")";
        case AttackKind::ConstantVector: return "constant_vector";
        case AttackKind::GaussianMessage:
            return "gaussian_message(" + std::to_string(scale) + ")";
    }
    return "unknown";
}

bool ByzantineAssignment::is_byzantine(std::size_t worker) const {
    return std::binary_search(byzantine_set.begin(), byzantine_set.end(), worker);
}

ByzantineAssignment select_byzantine_set(std::size_t m, double alpha, uint64_t seed) {
    if (m < 1)
        throw InvalidArgument("select_byzantine_set: m must be >= 1");
    if (!(alpha >= 0.0 && alpha < 1.0))
        throw InvalidArgument("select_byzantine_set: alpha must be in [0, 1)");
    std::size_t count = static_cast<std::size_t>(alpha * static_cast<double>(m));

    // Partial Fisher-Yates over [0, m) with a dedicated stream.
    std::vector<std::size_t> pool(m);
    for (std::size_t i = 0; i < m; ++i) pool[i] = i;
    RngStream rng(seed, 0x42595a53ull /* selection stream tag */);
    for (std::size_t i = 0; i < count; ++i)
        std::swap(pool[i], pool[i + rng.below(m - i)]);

    ByzantineAssignment assignment;
    assignment.byzantine_set.assign(pool.begin(), pool.begin() + count);
    std::sort(assignment.byzantine_set.begin(), assignment.byzantine_set.end());
    assignment.alpha_realized = static_cast<double>(count) / static_cast<double>(m);
    assignment.median_warning = 2 * count >= m;
    return assignment;
}

losses::Shard corrupt_dataset(const losses::Shard& shard, const AttackSpec& attack,
                              const LabelSpace& labels, uint64_t seed) {
    if (!attack.data_level())
        throw InvalidArgument("corrupt_dataset: attack is not data-level");
    losses::Shard out = shard;
    RngStream rng(seed, 0x434f5252ull /* corruption stream tag */);
    for (auto& z : out) {
        if (attack.kind == AttackKind::LabelFlip) {
            z.y = labels.classification ? static_cast<double>(labels.max_label) - z.y
                                        : -z.y;
        } else {
            if (labels.classification) {
                z.y = static_cast<double>(rng.below(static_cast<uint64_t>(labels.max_label) + 1));
            } else {
                // Regression analogue: uniform over the observed label range.
                double lo = shard.front().y, hi = shard.front().y;
                for (const auto& p : shard) {
                    lo = std::min(lo, p.y);
                    hi = std::max(hi, p.y);
                }
                z.y = lo + (hi - lo) * rng.uniform();
            }
        }
    }
    return out;
}

Vector forge_message(const Vector& true_message, const AttackSpec& attack,
                     std::size_t worker, std::size_t round, uint64_t seed) {
    if (!attack.message_level())
        throw InvalidArgument("forge_message: attack is not message-level");
    Vector forged;
    switch (attack.kind) {
        case AttackKind::SignFlip:
            if (!(attack.scale > 0.0))
                throw InvalidArgument("forge_message: sign-flip scale must be positive");
            forged = -attack.scale * true_message;
            break;
        case AttackKind::ConstantVector:
            if (attack.constant.size() != true_message.size())
                throw InvalidArgument("forge_message: constant vector dimension mismatch");
            forged = attack.constant;
            break;
        case AttackKind::GaussianMessage: {
            RngStream rng(seed, worker, round, 0x464f524dull /* forgery stream tag */);
            forged = attack.scale * rng.normal_vector(true_message.size());
            break;
        }
        default:
            throw InvalidArgument("forge_message: unsupported attack kind");
    }
    if (!all_finite(forged))
        throw InvalidArgument("forge_message: non-finite forged message");
    return forged;
}

} // namespace byzgd::attack
