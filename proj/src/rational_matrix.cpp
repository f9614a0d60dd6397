#include "rkenergy/rational_matrix.hpp"

#include <sstream>
#include <utility>

namespace rkenergy {

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

RationalMatrix::RationalMatrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw ContractViolation("ragged matrix literal");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::diagonal(std::span<const Rational> entries) {
    RationalMatrix m(entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::leading_block(std::size_t n) const {
    if (n > rows_ || n > cols_) throw ContractViolation("leading block larger than matrix");
    RationalMatrix b(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = (*this)(i, j);
    return b;
}

bool RationalMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RationalMatrix::is_zero() const {
    for (const auto& x : entries_)
        if (!x.is_zero()) return false;
    return true;
}

bool RationalMatrix::is_unit_upper_triangular() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
        if ((*this)(i, i) != 1) return false;
        for (std::size_t j = 0; j < i; ++j)
            if (!(*this)(i, j).is_zero()) return false;
    }
    return true;
}

RationalMatrix& RationalMatrix::operator+=(const RationalMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ContractViolation("shape mismatch in +");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += rhs.entries_[k];
    return *this;
}

RationalMatrix& RationalMatrix::operator-=(const RationalMatrix& rhs) {
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ContractViolation("shape mismatch in -");
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= rhs.entries_[k];
    return *this;
}

RationalMatrix operator*(const RationalMatrix& lhs, const RationalMatrix& rhs) {
    if (lhs.cols_ != rhs.rows_) throw ContractViolation("shape mismatch in *");
    RationalMatrix out(lhs.rows_, rhs.cols_);
    for (std::size_t i = 0; i < lhs.rows_; ++i) {
        for (std::size_t k = 0; k < lhs.cols_; ++k) {
            const Rational& a = lhs(i, k);
            if (a.is_zero()) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

RationalMatrix operator*(const Rational& scale, RationalMatrix m) {
    for (auto& x : m.entries_) x *= scale;
    return m;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ", (" : "(");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j);
        os << ')';
    }
    os << ')';
    return os.str();
}

Rational determinant(RationalMatrix m) {
    if (!m.is_square()) throw ContractViolation("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && m(pivot, k).is_zero()) ++pivot;
        if (pivot == n) return 0;
        if (pivot != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(pivot, j));
            det = -det;
        }
        det *= m(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (m(i, k).is_zero()) continue;
            const Rational factor = m(i, k) / m(k, k);
            for (std::size_t j = k; j < n; ++j) m(i, j) -= factor * m(k, j);
        }
    }
    return det;
}

UtduFactorization utdu_factorize(const RationalMatrix& S, bool repair) {
    if (!S.is_symmetric()) throw ContractViolation("utdu_factorize requires a square symmetric matrix");
    const std::size_t n = S.rows();

    // Schur complements of M = -S + diag(delta) are kept in the upper triangle.
    RationalMatrix work = Rational(-1) * S;
    UtduFactorization out{RationalMatrix::identity(n), std::vector<Rational>(n), std::vector<Rational>(n), true};

    for (std::size_t k = 0; k < n; ++k) {
        const Rational pivot = work(k, k);
        bool row_is_zero = true;
        for (std::size_t j = k + 1; j < n && row_is_zero; ++j) row_is_zero = work(k, j).is_zero();

        if (pivot.sign() <= 0) {
            if (pivot.is_zero() && row_is_zero) continue;  // d_k = 0, column skipped
            if (!repair) {
                out.success = false;
                return out;
            }
            if (row_is_zero) {
                out.delta[k] = -pivot;
                continue;
            }
            out.delta[k] = Rational(1) - pivot;
        }

        const Rational p = pivot + out.delta[k];
        out.d[k] = p;
        for (std::size_t j = k + 1; j < n; ++j) out.U(k, j) = work(k, j) / p;
        for (std::size_t i = k + 1; i < n; ++i) {
            if (work(k, i).is_zero()) continue;
            for (std::size_t j = i; j < n; ++j) work(i, j) -= out.U(k, i) * work(k, j);
        }
    }
    return out;
}

bool is_negative_semidefinite(const RationalMatrix& S) { return utdu_factorize(S, false).success; }

std::size_t largest_nsd_leading_block(const RationalMatrix& S) {
    if (!S.is_symmetric()) throw ContractViolation("largest_nsd_leading_block requires a symmetric matrix");
    std::size_t m = 0;
    while (m < S.rows() && is_negative_semidefinite(S.leading_block(m + 1))) ++m;
    return m;
}

}  // namespace rkenergy
