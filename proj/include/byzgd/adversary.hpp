#ifndef BYZGD_ADVERSARY_HPP
#define BYZGD_ADVERSARY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "byzgd/losses.hpp"
#include "byzgd/vec.hpp"

namespace byzgd::attack {

enum class AttackKind {
    None,
    LabelFlip,      // data-level: y -> max_label - y (classification), y -> -y (regression)
    RandomLabels,   // data-level: labels i.i.d. uniform over the label space
    SignFlip,       // message-level: g -> -c * g
    ConstantVector, // message-level: fixed vector
    GaussianMessage // message-level: scale * keyed standard normal vector
};

struct AttackSpec {
    AttackKind kind = AttackKind::None;
    double scale = 1.0;      // SignFlip c / GaussianMessage scale
    Vector constant;         // ConstantVector payload

    bool data_level() const {
        return kind == AttackKind::LabelFlip || kind == AttackKind::RandomLabels;
    }
    bool message_level() const {
        return kind == AttackKind::SignFlip || kind == AttackKind::ConstantVector ||
               kind == AttackKind::GaussianMessage;
    }
    std::string name() const;
};

// Label space for data-level attacks. Regression uses the negation
// convention; classification flips within {0..max_label}.
struct LabelSpace {
    bool classification = false;
    long max_label = 1;
};

struct ByzantineAssignment {
    std::vector<std::size_t> byzantine_set; // sorted subset of [0, m)
    double alpha_realized = 0.0;            // floor(alpha*m)/m
    bool median_warning = false;            // set when floor(alpha*m) >= m/2

    bool is_byzantine(std::size_t worker) const;
};

// Uniformly random floor(alpha*m)-subset of [0, m), keyed by seed.
ByzantineAssignment select_byzantine_set(std::size_t m, double alpha, uint64_t seed);

// Applies a data-level attack to one shard. Randomness keyed by
// (seed, worker) through the supplied seed.
losses::Shard corrupt_dataset(const losses::Shard& shard, const AttackSpec& attack,
                              const LabelSpace& labels, uint64_t seed);

// Produces the forged message of one Byzantine worker for one round.
Vector forge_message(const Vector& true_message, const AttackSpec& attack,
                     std::size_t worker, std::size_t round, uint64_t seed);

} // namespace byzgd::attack

#endif
