#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsfm {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad flags, bad config values, incompatible (method, backbone) pairs. CLI exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Malformed archives, bad manifests, missing tasks, unreadable files. CLI exit code 3.
class DataError : public Error {
public:
    using Error::Error;
};

/// NaN losses, non-finite inputs, unreachable DTW cells. CLI exit code 4.
class NumericError : public Error {
public:
    using Error::Error;
};

/// FNV-1a 64-bit over raw bytes. Used for content hashes and stream keying.
inline std::uint64_t fnv1a64(const void* data, std::size_t len,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
    return fnv1a64(s.data(), s.size());
}

std::string to_hex(std::uint64_t v);

} // namespace tsfm
