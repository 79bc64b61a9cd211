#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

namespace sicbell {

// Element a + b·ω of the Eisenstein ring Z[ω], ω = exp(iπ/3).
// ω satisfies ω² = ω − 1 and ω̄ = 1 − ω, so the ring is closed under
// conjugation and every operation below is exact.
class ExactScalar {
public:
    constexpr ExactScalar() = default;
    constexpr ExactScalar(std::int64_t a) : a_(a) {}
    constexpr ExactScalar(std::int64_t a, std::int64_t b) : a_(a), b_(b) {}

    static constexpr ExactScalar omega() { return {0, 1}; }

    constexpr std::int64_t real_part() const { return a_; }
    constexpr std::int64_t omega_part() const { return b_; }

    constexpr bool is_zero() const { return a_ == 0 && b_ == 0; }

    constexpr ExactScalar conj() const { return {a_ + b_, -b_}; }

    // |a + bω|² = a² + ab + b²
    constexpr std::int64_t norm() const { return a_ * a_ + a_ * b_ + b_ * b_; }

    std::complex<double> to_complex() const {
        constexpr double half_sqrt3 = 0.86602540378443864676;
        return {static_cast<double>(a_) + 0.5 * static_cast<double>(b_),
                half_sqrt3 * static_cast<double>(b_)};
    }

    constexpr ExactScalar operator-() const { return {-a_, -b_}; }

    friend constexpr ExactScalar operator+(ExactScalar x, ExactScalar y) {
        return {x.a_ + y.a_, x.b_ + y.b_};
    }
    friend constexpr ExactScalar operator-(ExactScalar x, ExactScalar y) {
        return {x.a_ - y.a_, x.b_ - y.b_};
    }
    friend constexpr ExactScalar operator*(ExactScalar x, ExactScalar y) {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(ω − 1)
        return {x.a_ * y.a_ - x.b_ * y.b_,
                x.a_ * y.b_ + x.b_ * y.a_ + x.b_ * y.b_};
    }
    ExactScalar& operator+=(ExactScalar o) { return *this = *this + o; }
    ExactScalar& operator*=(ExactScalar o) { return *this = *this * o; }

    friend constexpr bool operator==(ExactScalar, ExactScalar) = default;

    friend std::ostream& operator<<(std::ostream& os, ExactScalar z) {
        return os << '(' << z.a_ << ',' << z.b_ << ')';
    }

private:
    std::int64_t a_ = 0;
    std::int64_t b_ = 0;
};

using ExactVector = std::vector<ExactScalar>;

// ⟨u|v⟩ = Σ conj(u_k) v_k. Throws std::invalid_argument on length mismatch.
ExactScalar inner_product(const ExactVector& u, const ExactVector& v);

std::int64_t squared_norm(const ExactVector& v);

bool is_zero(const ExactVector& v);

std::vector<std::complex<double>> to_complex(const ExactVector& v);

// Unit-norm floating copy; throws std::invalid_argument for the zero vector.
std::vector<std::complex<double>> normalized(const ExactVector& v);

}  // namespace sicbell
