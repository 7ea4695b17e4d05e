#include "gsc/gf.hpp"

#include <algorithm>

namespace gsc::gf {

namespace {

std::uint64_t reduce(std::uint64_t v, std::uint32_t q) { return v % q; }

void require_modulus(std::uint32_t q) {
    if (q < 2 || q > kMaxModulus) {
        throw FieldError("modulus out of range [2, 2^31-1]: " + std::to_string(q));
    }
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::uint64_t d = 3; d * d <= n; d += 2) {
        if (n % d == 0) return false;
    }
    return true;
}

std::uint32_t next_prime_above(std::uint64_t n) {
    if (n < 1) throw FieldError("next_prime_above requires n >= 1");
    std::uint64_t c = n + 1;
    while (!is_prime(c)) ++c;
    if (c > kMaxModulus) {
        throw FieldError("required field size exceeds 2^31-1: " + std::to_string(c));
    }
    return static_cast<std::uint32_t>(c);
}

FieldElement::FieldElement(std::uint64_t value, std::uint32_t modulus) : q_(modulus) {
    require_modulus(modulus);
    value_ = static_cast<std::uint32_t>(reduce(value, modulus));
}

void FieldElement::require_same_field(const FieldElement& rhs) const {
    if (q_ != rhs.q_) {
        throw FieldMismatchError("field modulus mismatch: " + std::to_string(q_) +
                                 " vs " + std::to_string(rhs.q_));
    }
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    require_same_field(rhs);
    return FieldElement(static_cast<std::uint64_t>(value_) + rhs.value_, q_);
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    require_same_field(rhs);
    return FieldElement(static_cast<std::uint64_t>(value_) + q_ - rhs.value_, q_);
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    require_same_field(rhs);
    return FieldElement(static_cast<std::uint64_t>(value_) * rhs.value_, q_);
}

FieldElement FieldElement::operator/(const FieldElement& rhs) const {
    require_same_field(rhs);
    return *this * rhs.inv();
}

FieldElement FieldElement::operator-() const {
    return FieldElement(static_cast<std::uint64_t>(q_) - value_, q_);
}

FieldElement FieldElement::inv() const {
    return FieldElement(mod_inverse(value_, q_), q_);
}

std::uint32_t mod_inverse(std::uint32_t value, std::uint32_t q) {
    value %= q;
    if (value == 0) throw DivisionByZeroError("inverse of zero in GF(" + std::to_string(q) + ")");
    // Extended Euclid; q prime so gcd(value, q) = 1.
    std::int64_t r0 = q, r1 = value, s0 = 0, s1 = 1;
    while (r1 != 0) {
        std::int64_t k = r0 / r1;
        std::int64_t r2 = r0 - k * r1;
        std::int64_t s2 = s0 - k * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    std::int64_t inv = s0 % static_cast<std::int64_t>(q);
    if (inv < 0) inv += q;
    return static_cast<std::uint32_t>(inv);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::uint32_t modulus)
    : rows_(rows), cols_(cols), q_(modulus), e_(rows * cols, 0) {
    require_modulus(modulus);
}

Matrix Matrix::identity(std::size_t n, std::uint32_t modulus) {
    Matrix m(n, n, modulus);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<std::uint32_t>>& rows,
                         std::uint32_t modulus) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Matrix m(r, c, modulus);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw ShapeError("ragged row list");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
}

std::uint32_t Matrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
    return e_[r * cols_ + c];
}

void Matrix::set(std::size_t r, std::size_t c, std::uint64_t value) {
    if (r >= rows_ || c >= cols_) throw ShapeError("matrix index out of range");
    e_[r * cols_ + c] = static_cast<std::uint32_t>(reduce(value, q_));
}

std::vector<std::uint32_t> Matrix::row(std::size_t r) const {
    if (r >= rows_) throw ShapeError("row index out of range");
    return std::vector<std::uint32_t>(e_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                                      e_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

Matrix Matrix::transpose() const {
    Matrix m(cols_, rows_, q_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m.set(c, r, at(r, c));
    }
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (q_ != rhs.q_) throw FieldMismatchError("matrix modulus mismatch");
    if (cols_ != rhs.rows_) throw ShapeError("inner dimensions do not match");
    Matrix m(rows_, rhs.cols_, q_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < rhs.cols_; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < cols_; ++k) {
                acc += static_cast<std::uint64_t>(at(r, k)) * rhs.at(k, c) % q_;
            }
            m.set(r, c, acc);
        }
    }
    return m;
}

Matrix Matrix::vstack(const Matrix& below) const {
    if (q_ != below.q_) throw FieldMismatchError("matrix modulus mismatch");
    if (cols_ != below.cols_) throw ShapeError("column counts do not match");
    Matrix m(rows_ + below.rows_, cols_, q_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, at(r, c));
    for (std::size_t r = 0; r < below.rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m.set(rows_ + r, c, below.at(r, c));
    return m;
}

Matrix Matrix::hstack(const Matrix& right) const {
    if (q_ != right.q_) throw FieldMismatchError("matrix modulus mismatch");
    if (rows_ != right.rows_) throw ShapeError("row counts do not match");
    Matrix m(rows_, cols_ + right.cols_, q_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) m.set(r, c, at(r, c));
        for (std::size_t c = 0; c < right.cols_; ++c) m.set(r, cols_ + c, right.at(r, c));
    }
    return m;
}

Matrix Matrix::select_columns(const std::vector<std::size_t>& idx) const {
    Matrix m(rows_, idx.size(), q_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < idx.size(); ++c) m.set(r, c, at(r, idx[c]));
    }
    return m;
}

std::size_t Matrix::rank() const {
    RowSpace space(cols_, q_);
    for (std::size_t r = 0; r < rows_; ++r) space.add(row(r));
    return space.rank();
}

FieldElement Matrix::det() const {
    if (rows_ != cols_) throw ShapeError("determinant requires a square matrix");
    const std::size_t n = rows_;
    std::vector<std::uint32_t> w = e_;
    auto cell = [&](std::size_t r, std::size_t c) -> std::uint32_t& { return w[r * n + c]; };
    std::uint64_t det = 1;
    bool negate = false;
    for (std::size_t col = 0; col < n; ++col) {
        // First row with a nonzero entry in this column.
        std::size_t pivot = col;
        while (pivot < n && cell(pivot, col) == 0) ++pivot;
        if (pivot == n) return FieldElement(0, q_);
        if (pivot != col) {
            for (std::size_t c = col; c < n; ++c) std::swap(cell(pivot, c), cell(col, c));
            negate = !negate;
        }
        const std::uint64_t p = cell(col, col);
        det = det * p % q_;
        const std::uint64_t pinv = mod_inverse(static_cast<std::uint32_t>(p), q_);
        for (std::size_t r = col + 1; r < n; ++r) {
            if (cell(r, col) == 0) continue;
            const std::uint64_t factor = static_cast<std::uint64_t>(cell(r, col)) * pinv % q_;
            for (std::size_t c = col; c < n; ++c) {
                const std::uint64_t sub = factor * cell(col, c) % q_;
                cell(r, c) = static_cast<std::uint32_t>((cell(r, c) + q_ - sub) % q_);
            }
        }
    }
    if (negate) det = (q_ - det) % q_;
    return FieldElement(det, q_);
}

bool Matrix::operator==(const Matrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && q_ == rhs.q_ && e_ == rhs.e_;
}

RowSpace::RowSpace(std::size_t width, std::uint32_t modulus) : width_(width), q_(modulus) {
    require_modulus(modulus);
}

std::size_t RowSpace::reduce(std::vector<std::uint32_t>& row) const {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const std::uint32_t v = row[pivots_[i]];
        if (v == 0) continue;
        const std::uint64_t factor = v;  // echelon rows have pivot 1
        for (std::size_t c = pivots_[i]; c < width_; ++c) {
            const std::uint64_t sub = factor * rows_[i][c] % q_;
            row[c] = static_cast<std::uint32_t>((row[c] + q_ - sub) % q_);
        }
    }
    for (std::size_t c = 0; c < width_; ++c) {
        if (row[c] != 0) return c;
    }
    return static_cast<std::size_t>(-1);
}

bool RowSpace::add(std::vector<std::uint32_t> row) {
    if (row.size() != width_) throw ShapeError("row width mismatch");
    const std::size_t pivot = reduce(row);
    if (pivot == static_cast<std::size_t>(-1)) return false;
    const std::uint64_t inv = mod_inverse(row[pivot], q_);
    for (std::size_t c = pivot; c < width_; ++c) {
        row[c] = static_cast<std::uint32_t>(inv * row[c] % q_);
    }
    // Keep rows ordered by pivot column.
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    rows_.insert(rows_.begin() + static_cast<std::ptrdiff_t>(pos), std::move(row));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
}

bool RowSpace::contains(std::vector<std::uint32_t> row) const {
    if (row.size() != width_) throw ShapeError("row width mismatch");
    return reduce(row) == static_cast<std::size_t>(-1);
}

bool row_space_contains(const Matrix& m, const std::vector<std::uint32_t>& v) {
    if (v.size() != m.cols()) throw ShapeError("vector width does not match matrix");
    RowSpace space(m.cols(), m.modulus());
    for (std::size_t r = 0; r < m.rows(); ++r) space.add(m.row(r));
    const std::size_t base = space.rank();
    std::vector<std::uint32_t> reduced = v;
    for (auto& x : reduced) x %= m.modulus();
    RowSpace stacked = space;
    stacked.add(reduced);
    return stacked.rank() == base;
}

std::optional<std::vector<std::uint32_t>> left_solve(const Matrix& a,
                                                     const std::vector<std::uint32_t>& target) {
    if (target.size() != a.cols()) throw ShapeError("target width does not match matrix");
    const std::uint32_t q = a.modulus();
    const std::size_t n = a.cols();   // equations
    const std::size_t m = a.rows();   // unknowns
    // Gaussian elimination on [a^T | target^T].
    std::vector<std::vector<std::uint32_t>> w(n, std::vector<std::uint32_t>(m + 1, 0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < m; ++c) w[r][c] = a.at(c, r);
        w[r][m] = target[r] % q;
    }
    std::vector<std::size_t> pivot_col_of_row;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m && row < n; ++col) {
        std::size_t pr = row;
        while (pr < n && w[pr][col] == 0) ++pr;
        if (pr == n) continue;
        std::swap(w[pr], w[row]);
        const std::uint64_t inv = mod_inverse(w[row][col], q);
        for (std::size_t c = col; c <= m; ++c) {
            w[row][c] = static_cast<std::uint32_t>(inv * w[row][c] % q);
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == row || w[r][col] == 0) continue;
            const std::uint64_t f = w[r][col];
            for (std::size_t c = col; c <= m; ++c) {
                const std::uint64_t sub = f * w[row][c] % q;
                w[r][c] = static_cast<std::uint32_t>((w[r][c] + q - sub) % q);
            }
        }
        pivot_col_of_row.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < n; ++r) {
        if (w[r][m] != 0) return std::nullopt;  // inconsistent
    }
    std::vector<std::uint32_t> x(m, 0);
    for (std::size_t r = 0; r < pivot_col_of_row.size(); ++r) {
        x[pivot_col_of_row[r]] = w[r][m];
    }
    return x;
}

}  // namespace gsc::gf
