#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace gpur {

// Unnormalized Walsh-Hadamard transform; applying it twice multiplies by the length.
inline void walsh_hadamard(std::span<double> a) {
    std::size_t n = a.size();
    if (n & (n - 1))
        throw std::invalid_argument("transform length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += h << 1)
            for (std::size_t j = i; j < i + h; j++) {
                double x = a[j], y = a[j + h];
                a[j] = x + y;
                a[j + h] = x - y;
            }
}

// out[g] = sum_{u ^ v = g} a[u] b[v]
inline void xor_convolve_direct(std::span<const double> a, std::span<const double> b, std::span<double> out) {
    std::fill(out.begin(), out.end(), 0.0);
    for (std::size_t u = 0; u < a.size(); u++) {
        if (a[u] == 0)
            continue;
        for (std::size_t v = 0; v < b.size(); v++)
            out[u ^ v] += a[u] * b[v];
    }
}

// Same as above via the transform; a and b are used as scratch.
inline void xor_convolve(std::span<double> a, std::span<double> b, std::span<double> out) {
    std::size_t n = a.size();
    if (b.size() != n || out.size() != n)
        throw std::invalid_argument("xor_convolve length mismatch");
    if (n <= 8) {
        xor_convolve_direct(a, b, out);
        return;
    }
    walsh_hadamard(a);
    walsh_hadamard(b);
    for (std::size_t i = 0; i < n; i++)
        out[i] = a[i] * b[i];
    walsh_hadamard(out);
    for (auto &v : out)
        v /= double(n);
}

}  // namespace gpur
