#include "byzgd/rng.hpp"

#include "byzgd/robust_stats.hpp"

namespace byzgd {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace

uint64_t mix_key(uint64_t a, uint64_t b, uint64_t c, uint64_t e) {
    uint64_t h = splitmix64(a);
    h = splitmix64(h ^ b);
    h = splitmix64(h ^ c);
    h = splitmix64(h ^ e);
    return h;
}

double RngStream::normal() {
    return stats::inverse_normal_cdf(uniform());
}

} // namespace byzgd
