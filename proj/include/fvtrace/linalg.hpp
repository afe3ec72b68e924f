#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "fvtrace/fp.hpp"

namespace fvtrace {

/// Dense matrix over F_p, row-major. Elimination uses first-nonzero pivoting
/// so every derived result (determinant sign handling aside, rank, solutions,
/// kernel vectors) is deterministic.
class Mat {
public:
    Mat(Field f, std::size_t rows, std::size_t cols);
    static Mat identity(const Field& f, std::size_t n);
    static Mat from_rows(const Field& f, const std::vector<FpVec>& rows);

    std::size_t rows() const noexcept { return r_; }
    std::size_t cols() const noexcept { return c_; }
    const Field& field() const noexcept { return f_; }

    std::uint16_t at(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
    std::uint16_t& at(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const std::uint16_t* row_ptr(std::size_t i) const { return a_.data() + i * c_; }
    FpVec row(std::size_t i) const;
    FpVec col(std::size_t j) const;

    Mat mul(const Mat& other) const;
    FpVec apply(const FpVec& x) const;  // matrix * column vector
    Mat add(const Mat& other) const;
    Mat scale(std::uint16_t c) const;
    Mat pow(unsigned e) const;          // square matrices only
    Mat transpose() const;
    bool is_zero() const noexcept;

    std::uint16_t det() const;  // square matrices only
    std::size_t rank() const;
    std::optional<Mat> inverse() const;
    // First solution of A x = rhs (free variables set to 0); nullopt when
    // inconsistent. Works for any shape.
    std::optional<FpVec> solve(const FpVec& rhs) const;
    // Deterministic nonzero kernel vector (first free column set to 1), or
    // nullopt when the kernel is trivial.
    std::optional<FpVec> null_vector() const;

    bool operator==(const Mat& other) const;

private:
    Field f_;
    std::size_t r_, c_;
    FpVec a_;
};

}  // namespace fvtrace
