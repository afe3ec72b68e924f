#include "fvtrace/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace fvtrace {

Mat::Mat(Field f, std::size_t rows, std::size_t cols)
    : f_(f), r_(rows), c_(cols), a_(rows * cols, 0) {}

Mat Mat::identity(const Field& f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

Mat Mat::from_rows(const Field& f, const std::vector<FpVec>& rows) {
    if (rows.empty()) return Mat(f, 0, 0);
    Mat m(f, rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.c_) throw std::invalid_argument("ragged rows");
        for (std::size_t j = 0; j < m.c_; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

FpVec Mat::row(std::size_t i) const { return FpVec(a_.begin() + i * c_, a_.begin() + (i + 1) * c_); }

FpVec Mat::col(std::size_t j) const {
    FpVec out(r_);
    for (std::size_t i = 0; i < r_; ++i) out[i] = at(i, j);
    return out;
}

Mat Mat::mul(const Mat& other) const {
    f_.require_same(other.f_);
    if (c_ != other.r_) throw std::invalid_argument("dimension mismatch");
    Mat out(f_, r_, other.c_);
    for (std::size_t i = 0; i < r_; ++i) {
        std::uint16_t* dst = out.a_.data() + i * out.c_;
        for (std::size_t k = 0; k < c_; ++k) {
            std::uint16_t v = at(i, k);
            if (v) f_.ops().axpy(dst, v, other.row_ptr(k), other.c_, std::uint16_t(f_.p()));
        }
    }
    return out;
}

FpVec Mat::apply(const FpVec& x) const {
    if (x.size() != c_) throw std::invalid_argument("dimension mismatch");
    FpVec out(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        out[i] = f_.ops().dot(row_ptr(i), x.data(), c_, std::uint16_t(f_.p()));
    }
    return out;
}

Mat Mat::add(const Mat& other) const {
    f_.require_same(other.f_);
    if (r_ != other.r_ || c_ != other.c_) throw std::invalid_argument("dimension mismatch");
    Mat out(f_, r_, c_);
    f_.ops().add(out.a_.data(), a_.data(), other.a_.data(), a_.size(), std::uint16_t(f_.p()));
    return out;
}

Mat Mat::scale(std::uint16_t c) const {
    Mat out(f_, r_, c_);
    f_.ops().axpy(out.a_.data(), c, a_.data(), a_.size(), std::uint16_t(f_.p()));
    return out;
}

Mat Mat::pow(unsigned e) const {
    if (r_ != c_) throw std::invalid_argument("matrix not square");
    Mat result = identity(f_, r_);
    Mat base = *this;
    while (e > 0) {
        if (e & 1) result = result.mul(base);
        e >>= 1;
        if (e) base = base.mul(base);
    }
    return result;
}

Mat Mat::transpose() const {
    Mat out(f_, c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) out.at(j, i) = at(i, j);
    return out;
}

bool Mat::is_zero() const noexcept { return vec_is_zero(a_); }

bool Mat::operator==(const Mat& other) const {
    return f_ == other.f_ && r_ == other.r_ && c_ == other.c_ && a_ == other.a_;
}

namespace {

// Row echelon form in place; returns pivot column per pivot row, in order.
// First nonzero entry (top-down) in each column is the pivot.
std::vector<std::size_t> echelonize(const Field& f, std::vector<FpVec>& rows, std::size_t cols,
                                    unsigned* swap_count = nullptr) {
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
        std::size_t sel = lead;
        while (sel < rows.size() && rows[sel][col] == 0) ++sel;
        if (sel == rows.size()) continue;
        if (sel != lead) {
            std::swap(rows[sel], rows[lead]);
            if (swap_count) ++*swap_count;
        }
        std::uint16_t inv = f.inv(rows[lead][col]);
        if (inv != 1) {
            for (std::size_t j = col; j < rows[lead].size(); ++j)
                rows[lead][j] = f.mul(rows[lead][j], inv);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == lead) continue;
            std::uint16_t v = rows[i][col];
            if (v) {
                f.ops().axpy(rows[i].data() + col, f.neg(v), rows[lead].data() + col,
                             rows[i].size() - col, std::uint16_t(f.p()));
            }
        }
        pivots.push_back(col);
        ++lead;
    }
    return pivots;
}

}  // namespace

std::uint16_t Mat::det() const {
    if (r_ != c_) throw std::invalid_argument("matrix not square");
    if (r_ == 0) return 1;
    std::vector<FpVec> rows(r_);
    for (std::size_t i = 0; i < r_; ++i) rows[i] = row(i);
    std::uint16_t d = 1;
    unsigned swaps = 0;
    std::size_t lead = 0;
    for (std::size_t col = 0; col < c_; ++col) {
        std::size_t sel = lead;
        while (sel < r_ && rows[sel][col] == 0) ++sel;
        if (sel == r_) return 0;
        if (sel != lead) {
            std::swap(rows[sel], rows[lead]);
            ++swaps;
        }
        std::uint16_t piv = rows[lead][col];
        d = f_.mul(d, piv);
        std::uint16_t inv = f_.inv(piv);
        for (std::size_t i = lead + 1; i < r_; ++i) {
            std::uint16_t v = rows[i][col];
            if (v) {
                f_.ops().axpy(rows[i].data() + col, f_.neg(f_.mul(v, inv)),
                              rows[lead].data() + col, c_ - col, std::uint16_t(f_.p()));
            }
        }
        ++lead;
    }
    if (swaps % 2 == 1) d = f_.neg(d);
    return d;
}

std::size_t Mat::rank() const {
    std::vector<FpVec> rows(r_);
    for (std::size_t i = 0; i < r_; ++i) rows[i] = row(i);
    return echelonize(f_, rows, c_).size();
}

std::optional<Mat> Mat::inverse() const {
    if (r_ != c_) throw std::invalid_argument("matrix not square");
    std::vector<FpVec> rows(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        rows[i] = FpVec(2 * c_, 0);
        for (std::size_t j = 0; j < c_; ++j) rows[i][j] = at(i, j);
        rows[i][c_ + i] = 1;
    }
    auto pivots = echelonize(f_, rows, c_);
    if (pivots.size() != c_) return std::nullopt;
    Mat out(f_, r_, c_);
    for (std::size_t i = 0; i < r_; ++i)
        for (std::size_t j = 0; j < c_; ++j) out.at(i, j) = rows[i][c_ + j];
    return out;
}

std::optional<FpVec> Mat::solve(const FpVec& rhs) const {
    if (rhs.size() != r_) throw std::invalid_argument("dimension mismatch");
    std::vector<FpVec> rows(r_);
    for (std::size_t i = 0; i < r_; ++i) {
        rows[i] = FpVec(c_ + 1);
        for (std::size_t j = 0; j < c_; ++j) rows[i][j] = at(i, j);
        rows[i][c_] = rhs[i];
    }
    auto pivots = echelonize(f_, rows, c_);
    for (std::size_t i = pivots.size(); i < r_; ++i) {
        if (rows[i][c_] != 0) return std::nullopt;  // 0 = nonzero row
    }
    FpVec x(c_, 0);
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rows[i][c_];
    return x;
}

std::optional<FpVec> Mat::null_vector() const {
    std::vector<FpVec> rows(r_);
    for (std::size_t i = 0; i < r_; ++i) rows[i] = row(i);
    auto pivots = echelonize(f_, rows, c_);
    if (pivots.size() == c_) return std::nullopt;
    // first non-pivot column, set to 1
    std::size_t free_col = 0;
    {
        std::size_t k = 0;
        while (k < pivots.size() && pivots[k] == free_col) {
            ++k;
            ++free_col;
        }
    }
    FpVec x(c_, 0);
    x[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        // pivot row is reduced: x[pivot] = -row[free_col]
        x[pivots[i]] = f_.neg(rows[i][free_col]);
    }
    return x;
}

}  // namespace fvtrace
