#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsample {

struct TranscriptMessage {
    std::string phase;
    std::string sender;
    std::string type;
    std::string payload_digest;
};

// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view data);
std::string hex_digest(std::string_view data);

class Transcript {
public:
    void add(std::string phase, std::string sender, std::string type, std::string_view payload);
    const std::vector<TranscriptMessage>& messages() const { return messages_; }
    // Digest over every message in order.
    std::string digest() const;

private:
    std::vector<TranscriptMessage> messages_;
};

}  // namespace qsample
