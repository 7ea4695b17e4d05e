#pragma once

// Exact arithmetic over prime fields GF(q) and the small dense linear-algebra
// kernels (rank, determinant, row-space membership, left solves) used by the
// graph classifier, the code constructions and the verifier.
//
// Everything here is integer-exact; there is no floating point and no
// tolerance anywhere. All values are immutable after construction and safe to
// share across threads.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gsc::gf {

// Moduli are capped so that products of two reduced values fit in 64 bits.
inline constexpr std::uint32_t kMaxModulus = 0x7fffffffu;  // 2^31 - 1

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FieldMismatchError : public FieldError {
public:
    using FieldError::FieldError;
};

class DivisionByZeroError : public FieldError {
public:
    using FieldError::FieldError;
};

class ShapeError : public FieldError {
public:
    using FieldError::FieldError;
};

bool is_prime(std::uint64_t n);

// Smallest prime strictly greater than n (n >= 1). Throws FieldError if the
// result would exceed kMaxModulus.
std::uint32_t next_prime_above(std::uint64_t n);

/// One element of GF(q), q prime. Carries its modulus; mixing moduli throws.
class FieldElement {
public:
    FieldElement(std::uint64_t value, std::uint32_t modulus);

    std::uint32_t value() const { return value_; }
    std::uint32_t modulus() const { return q_; }

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator/(const FieldElement& rhs) const;
    FieldElement operator-() const;

    // Multiplicative inverse; throws DivisionByZeroError on zero.
    FieldElement inv() const;

    bool operator==(const FieldElement& rhs) const {
        return value_ == rhs.value_ && q_ == rhs.q_;
    }
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

private:
    void require_same_field(const FieldElement& rhs) const;

    std::uint32_t value_;
    std::uint32_t q_;
};

// value^-1 mod q for raw values (q prime, value != 0 mod q).
std::uint32_t mod_inverse(std::uint32_t value, std::uint32_t q);

/// Dense row-major matrix over GF(q). All entries share one modulus.
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, std::uint32_t modulus);

    static Matrix identity(std::size_t n, std::uint32_t modulus);
    static Matrix from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                            std::uint32_t modulus);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint32_t modulus() const { return q_; }

    std::uint32_t at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, std::uint64_t value);

    std::vector<std::uint32_t> row(std::size_t r) const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& rhs) const;
    Matrix vstack(const Matrix& below) const;
    Matrix hstack(const Matrix& right) const;
    Matrix select_columns(const std::vector<std::size_t>& idx) const;

    std::size_t rank() const;
    FieldElement det() const;  // throws ShapeError unless square

    bool operator==(const Matrix& rhs) const;
    bool operator!=(const Matrix& rhs) const { return !(*this == rhs); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::uint32_t q_;
    std::vector<std::uint32_t> e_;
};

// True iff v lies in the row space of m, i.e. rank(m) == rank(m stacked with v).
bool row_space_contains(const Matrix& m, const std::vector<std::uint32_t>& v);

/// Incremental row-echelon accumulator: feeds rows one by one, answers rank
/// and membership queries without re-eliminating from scratch.
class RowSpace {
public:
    RowSpace(std::size_t width, std::uint32_t modulus);

    // Returns true if the row enlarged the space.
    bool add(std::vector<std::uint32_t> row);
    bool contains(std::vector<std::uint32_t> row) const;
    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

private:
    // Reduces row in place; returns pivot column or npos if it vanished.
    std::size_t reduce(std::vector<std::uint32_t>& row) const;

    std::size_t width_;
    std::uint32_t q_;
    std::vector<std::vector<std::uint32_t>> rows_;  // echelon rows, pivot = 1
    std::vector<std::size_t> pivots_;               // pivot column per row
};

// Solves x * a = target for a row vector x (length a.rows()); nullopt if the
// target is not in the row space of a.
std::optional<std::vector<std::uint32_t>> left_solve(
    const Matrix& a, const std::vector<std::uint32_t>& target);

}  // namespace gsc::gf
