#include "sicbell/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace sicbell {

ExactScalar inner_product(const ExactVector& u, const ExactVector& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("inner_product: dimension mismatch");
    }
    ExactScalar acc;
    for (std::size_t k = 0; k < u.size(); ++k) {
        acc += u[k].conj() * v[k];
    }
    return acc;
}

std::int64_t squared_norm(const ExactVector& v) {
    std::int64_t acc = 0;
    for (const auto& z : v) {
        acc += z.norm();
    }
    return acc;
}

bool is_zero(const ExactVector& v) {
    for (const auto& z : v) {
        if (!z.is_zero()) {
            return false;
        }
    }
    return true;
}

std::vector<std::complex<double>> to_complex(const ExactVector& v) {
    std::vector<std::complex<double>> out;
    out.reserve(v.size());
    for (const auto& z : v) {
        out.push_back(z.to_complex());
    }
    return out;
}

std::vector<std::complex<double>> normalized(const ExactVector& v) {
    const std::int64_t n2 = squared_norm(v);
    if (n2 == 0) {
        throw std::invalid_argument("normalized: zero vector");
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(n2));
    auto out = to_complex(v);
    for (auto& z : out) {
        z *= scale;
    }
    return out;
}

}  // namespace sicbell
