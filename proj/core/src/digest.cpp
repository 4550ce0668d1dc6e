#include "styloseg/digest.hpp"

#include <cstdio>

namespace styloseg {

std::string Fnv1a::hex() const {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(state_));
    return std::string(buf, 16);
}

std::uint64_t fnv1a(std::string_view data) {
    Fnv1a h;
    h.update(data);
    return h.value();
}

std::string fnv1a_hex(std::string_view data) {
    Fnv1a h;
    h.update(data);
    return h.hex();
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace styloseg
