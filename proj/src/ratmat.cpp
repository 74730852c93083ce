#include "approxsym/ratmat.hpp"

namespace approxsym {

RatMat RatMat::identity(size_t n) {
    RatMat m(n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

RatMat RatMat::operator*(const RatMat& o) const {
    if (cols_ != o.rows_) throw Error("matrix dimension mismatch");
    RatMat r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Rat& aik = at(i, k);
            if (aik == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

RatMat RatMat::operator+(const RatMat& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw Error("matrix dimension mismatch");
    RatMat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

RatMat RatMat::operator-(const RatMat& o) const { return *this + o.scale(-1); }

RatMat RatMat::scale(const Rat& q) const {
    RatMat r = *this;
    for (auto& v : r.a_) v *= q;
    return r;
}

RatMat RatMat::transpose() const {
    RatMat r(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

Rat RatMat::trace() const {
    if (rows_ != cols_) throw Error("trace of non-square matrix");
    Rat s(0);
    for (size_t i = 0; i < rows_; ++i) s += at(i, i);
    return s;
}

std::vector<Rat> RatMat::apply(const std::vector<Rat>& v) const {
    if (v.size() != cols_) throw Error("matrix dimension mismatch");
    std::vector<Rat> r(rows_, Rat(0));
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

std::vector<size_t> RatMat::rref() {
    std::vector<size_t> pivots;
    size_t row = 0;
    for (size_t col = 0; col < cols_ && row < rows_; ++col) {
        size_t pr = row;
        while (pr < rows_ && at(pr, col) == 0) ++pr;
        if (pr == rows_) continue;
        if (pr != row)
            for (size_t j = 0; j < cols_; ++j) std::swap(at(pr, j), at(row, j));
        Rat inv = Rat(1) / at(row, col);
        for (size_t j = col; j < cols_; ++j) at(row, j) *= inv;
        for (size_t i = 0; i < rows_; ++i) {
            if (i == row || at(i, col) == 0) continue;
            Rat f = at(i, col);
            for (size_t j = col; j < cols_; ++j) at(i, j) -= f * at(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

size_t RatMat::rank() const {
    RatMat m = *this;
    return m.rref().size();
}

std::vector<std::vector<Rat>> RatMat::nullspace() const {
    RatMat m = *this;
    std::vector<size_t> pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (size_t c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(cols_, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rat>> RatMat::solve(const std::vector<Rat>& b) const {
    if (b.size() != rows_) throw Error("matrix dimension mismatch");
    RatMat aug(rows_, cols_ + 1);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_) = b[i];
    }
    std::vector<size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt; // inconsistent
    std::vector<Rat> x(cols_, Rat(0));
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

Rat RatMat::det() const {
    if (rows_ != cols_) throw Error("determinant of non-square matrix");
    RatMat m = *this;
    Rat d(1);
    for (size_t col = 0; col < cols_; ++col) {
        size_t pr = col;
        while (pr < rows_ && m.at(pr, col) == 0) ++pr;
        if (pr == rows_) return Rat(0);
        if (pr != col) {
            for (size_t j = 0; j < cols_; ++j) std::swap(m.at(pr, j), m.at(col, j));
            d = -d;
        }
        d *= m.at(col, col);
        Rat inv = Rat(1) / m.at(col, col);
        for (size_t i = col + 1; i < rows_; ++i) {
            if (m.at(i, col) == 0) continue;
            Rat f = m.at(i, col) * inv;
            for (size_t j = col; j < cols_; ++j) m.at(i, j) -= f * m.at(col, j);
        }
    }
    return d;
}

bool RatMat::invertible() const { return rows_ == cols_ && rank() == rows_; }

RatMat RatMat::inverse() const {
    if (rows_ != cols_) throw Error("inverse of non-square matrix");
    RatMat aug(rows_, 2 * cols_);
    for (size_t i = 0; i < rows_; ++i) {
        for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = 1;
    }
    std::vector<size_t> pivots = aug.rref();
    if (pivots.size() < rows_ || pivots[rows_ - 1] != rows_ - 1) throw Error("matrix is singular");
    RatMat r(rows_, cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
    return r;
}

std::vector<Rat> primitive_vector(std::vector<Rat> v) {
    Int num_gcd = 0, den_lcm = 1;
    for (const auto& q : v) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    }
    if (num_gcd == 0) return v;
    Rat scale(den_lcm, num_gcd);
    scale.canonicalize();
    for (const auto& q : v) {
        if (q != 0) {
            if (q * scale < 0) scale = -scale;
            break;
        }
    }
    for (auto& q : v) q *= scale;
    return v;
}

} // namespace approxsym
