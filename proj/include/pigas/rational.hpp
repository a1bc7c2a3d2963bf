#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pigas {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p", "-p" or "p/q". Throws Error(Parse) on malformed text or q = 0.
Rational parse_rational(const std::string& text);

/// "p" when the denominator is 1, "p/q" otherwise.
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

/// Dense row-major matrix over the rationals. Used for everything that ends
/// up in a certificate; sizes are small (graph order), so no sparsity.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::vector<Rational> multiply(std::span<const Rational> x) const;
    RationalMatrix transpose() const;
    bool is_symmetric() const;

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Rank by exact Gaussian elimination.
std::size_t rank(RationalMatrix m);

}  // namespace pigas
