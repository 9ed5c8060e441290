#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gridlinks/rational.hpp"

namespace gridlinks::exact {

struct TruncationTooSmall : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Truncated formal power series with exact rational coefficients.
/// All arithmetic is exact up to the truncation order; extracting a
/// coefficient beyond it throws instead of silently returning garbage.
class SeriesQ {
  public:
    explicit SeriesQ(std::size_t order) : coeffs_(order + 1) {}

    static SeriesQ constant(std::size_t order, const BigRational& c0) {
        SeriesQ s(order);
        s.coeffs_[0] = c0;
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }

    const BigRational& coeff(std::size_t i) const {
        if (i >= coeffs_.size())
            throw TruncationTooSmall("coefficient index exceeds truncation order");
        return coeffs_[i];
    }

    void set_coeff(std::size_t i, BigRational v) {
        if (i >= coeffs_.size())
            throw TruncationTooSmall("coefficient index exceeds truncation order");
        coeffs_[i] = std::move(v);
    }

    SeriesQ operator+(const SeriesQ& o) const {
        check_same_order(o);
        SeriesQ out(order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            out.coeffs_[i] = coeffs_[i] + o.coeffs_[i];
        return out;
    }

    SeriesQ operator-(const SeriesQ& o) const {
        check_same_order(o);
        SeriesQ out(order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
            out.coeffs_[i] = coeffs_[i] - o.coeffs_[i];
        return out;
    }

    SeriesQ operator*(const SeriesQ& o) const {
        check_same_order(o);
        SeriesQ out(order());
        for (std::size_t i = 0; i < coeffs_.size(); ++i) {
            if (coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; i + j < coeffs_.size(); ++j) {
                if (o.coeffs_[j] == 0)
                    continue;
                out.coeffs_[i + j] += coeffs_[i] * o.coeffs_[j];
            }
        }
        return out;
    }

    SeriesQ pow(unsigned k) const {
        SeriesQ result = constant(order(), 1);
        SeriesQ base = *this;
        while (k != 0) {
            if (k & 1u)
                result = result * base;
            base = base * base;
            k >>= 1;
        }
        return result;
    }

    /// log of a unit series (constant term 1), via f * (log f)' = f'.
    SeriesQ log() const {
        if (coeffs_[0] != 1)
            throw std::domain_error("series log requires constant term 1");
        SeriesQ out(order());
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            BigRational acc = BigRational(k) * coeffs_[k];
            for (std::size_t j = 1; j < k; ++j)
                acc -= BigRational(k - j) * coeffs_[j] * out.coeffs_[k - j];
            out.coeffs_[k] = acc / BigRational(k);
        }
        return out;
    }

    bool operator==(const SeriesQ& o) const { return coeffs_ == o.coeffs_; }

  private:
    void check_same_order(const SeriesQ& o) const {
        if (o.coeffs_.size() != coeffs_.size())
            throw TruncationTooSmall("series operands have different truncation orders");
    }

    std::vector<BigRational> coeffs_;
};

/// Sum_{i>=1} x^i / i = -ln(1-x), truncated.
inline SeriesQ log_reciprocal_one_minus_x(std::size_t order) {
    SeriesQ s(order);
    for (std::size_t i = 1; i <= order; ++i)
        s.set_coeff(i, BigRational(1, i));
    return s;
}

/// Sum_{i>=0} (-x)^i / i! = e^{-x}, truncated.
inline SeriesQ exp_minus_x(std::size_t order) {
    SeriesQ s(order);
    BigInt fact = 1;
    for (std::size_t i = 0; i <= order; ++i) {
        if (i > 0)
            fact *= static_cast<int>(i);
        s.set_coeff(i, BigRational(i % 2 == 0 ? BigInt(1) : BigInt(-1), fact));
    }
    return s;
}

/// Sum_{i>=0} x^i = 1/(1-x), truncated.
inline SeriesQ geometric(std::size_t order) {
    SeriesQ s(order);
    for (std::size_t i = 0; i <= order; ++i)
        s.set_coeff(i, 1);
    return s;
}

}  // namespace gridlinks::exact
