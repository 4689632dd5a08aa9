#pragma once

// FNV-1a input digests for run reports.

#include <cstdint>
#include <cstring>
#include <string>
#include <vector>

namespace fracparts {

class Digest {
public:
    void bytes(const void* data, size_t n) {
        const unsigned char* p = static_cast<const unsigned char*>(data);
        for (size_t i = 0; i < n; ++i) {
            h_ ^= p[i];
            h_ *= 0x100000001B3ull;
        }
    }
    void u64(std::uint64_t v) { bytes(&v, sizeof v); }
    void i64(long long v) { bytes(&v, sizeof v); }
    void f64(double v) { bytes(&v, sizeof v); }
    void str(const std::string& s) {
        u64(s.size());
        bytes(s.data(), s.size());
    }

    std::string hex() const {
        static const char* d = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = h_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<size_t>(i)] = d[v & 0xF];
            v >>= 4;
        }
        return out;
    }

private:
    std::uint64_t h_ = 0xCBF29CE484222325ull;
};

}  // namespace fracparts
