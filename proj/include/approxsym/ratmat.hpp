#ifndef APPROXSYM_RATMAT_HPP
#define APPROXSYM_RATMAT_HPP

#include <optional>
#include <vector>

#include "approxsym/rational.hpp"

namespace approxsym {

// Dense matrix over exact rationals with Gaussian elimination.
class RatMat {
  public:
    RatMat() = default;
    RatMat(size_t rows, size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}
    static RatMat identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Rat& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RatMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    RatMat operator*(const RatMat& o) const;
    RatMat operator+(const RatMat& o) const;
    RatMat operator-(const RatMat& o) const;
    RatMat scale(const Rat& q) const;
    RatMat transpose() const;
    Rat trace() const;
    Rat det() const;

    std::vector<Rat> apply(const std::vector<Rat>& v) const;

    // In-place reduced row echelon form; returns pivot column indices.
    std::vector<size_t> rref();
    size_t rank() const;

    // Basis of {x : A x = 0}.
    std::vector<std::vector<Rat>> nullspace() const;
    // One solution of A x = b with free variables set to zero, or nullopt.
    std::optional<std::vector<Rat>> solve(const std::vector<Rat>& b) const;

    bool invertible() const;
    RatMat inverse() const;

  private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Rat> a_;
};

// Scales to coprime integers with positive first nonzero entry.
std::vector<Rat> primitive_vector(std::vector<Rat> v);

} // namespace approxsym

#endif
