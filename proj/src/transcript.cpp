#include "qsample/transcript.hpp"

#include <cstdio>

namespace qsample {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex_digest(std::string_view data) {
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return buffer;
}

void Transcript::add(std::string phase, std::string sender, std::string type, std::string_view payload) {
    messages_.push_back({std::move(phase), std::move(sender), std::move(type), hex_digest(payload)});
}

std::string Transcript::digest() const {
    std::string joined;
    for (const auto& m : messages_) joined += m.phase + '/' + m.sender + '/' + m.type + '/' + m.payload_digest + '\n';
    return hex_digest(joined);
}

}  // namespace qsample
