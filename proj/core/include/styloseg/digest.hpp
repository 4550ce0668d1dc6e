#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace styloseg {

/// Incremental FNV-1a 64-bit hash. Used for provenance digests in model files
/// and run manifests; not cryptographic.
class Fnv1a {
public:
    void update(std::string_view data) {
        for (unsigned char c : data) {
            state_ ^= c;
            state_ *= 0x100000001b3ULL;
        }
    }

    void update_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            state_ ^= (v >> (8 * i)) & 0xffULL;
            state_ *= 0x100000001b3ULL;
        }
    }

    std::uint64_t value() const { return state_; }

    /// 16-char lowercase hex rendering of the current state.
    std::string hex() const;

private:
    std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::uint64_t fnv1a(std::string_view data);
std::string fnv1a_hex(std::string_view data);

/// Splitmix64 step; used to derive independent RNG seeds from one global seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace styloseg
