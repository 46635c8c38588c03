#pragma once

// Dense bit-packed linear algebra over F2.
//
// Convention: vectors are row vectors and a matrix acts on the right,
// x·m, unless a function says otherwise (kernel_basis uses column vectors,
// m·v, to match the usual meaning of "kernel of a matrix").

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace motext::f2 {

class BitVector {
public:
    static constexpr size_t npos = static_cast<size_t>(-1);

    BitVector() = default;
    explicit BitVector(size_t length) : len_(length), words_((length + 63) / 64, 0) {}

    /// Parses "0110"-style strings; index 0 is the leftmost character.
    static BitVector from_string(std::string_view bits);
    static BitVector unit(size_t length, size_t i);

    size_t size() const { return len_; }
    bool empty() const { return len_ == 0; }

    bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(size_t i) { words_[i >> 6] |= uint64_t{1} << (i & 63); }
    void reset(size_t i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }
    void assign(size_t i, bool v) { v ? set(i) : reset(i); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    /// XOR restricted to the words holding coordinates >= from; valid when
    /// other has no set coordinate below from's word.
    void xor_from(const BitVector& other, size_t from);
    bool operator==(const BitVector& other) const = default;
    /// Lexicographic on coordinates (coordinate 0 most significant).
    bool operator<(const BitVector& other) const;

    bool is_zero() const;
    size_t count() const;
    /// Smallest set index >= from, or npos.
    size_t next_set(size_t from) const;
    size_t leading() const { return next_set(0); }
    bool dot(const BitVector& other) const;
    std::vector<size_t> support() const;

    /// Changes the length; bits beyond the new length are cleared.
    void resize(size_t length);

    std::span<const uint64_t> words() const { return words_; }
    std::string to_string() const;

private:
    void trim();

    size_t len_ = 0;
    std::vector<uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    explicit BitMatrix(size_t ncols) : ncols_(ncols) {}
    BitMatrix(std::vector<BitVector> rows, size_t ncols);

    static BitMatrix identity(size_t n);
    static BitMatrix zero(size_t nrows, size_t ncols);
    /// Each string is one row, e.g. {"110", "011"}.
    static BitMatrix from_strings(const std::vector<std::string>& rows);

    size_t nrows() const { return rows_.size(); }
    size_t ncols() const { return ncols_; }
    const BitVector& row(size_t i) const { return rows_[i]; }
    BitVector& row(size_t i) { return rows_[i]; }
    const std::vector<BitVector>& rows() const { return rows_; }
    void push_row(BitVector r);

    /// x·m, with x.size() == nrows().
    BitVector left_apply(const BitVector& x) const;
    /// m·v, with v.size() == ncols().
    BitVector right_apply(const BitVector& v) const;
    BitMatrix transpose() const;
    bool operator==(const BitMatrix& other) const = default;

private:
    size_t ncols_ = 0;
    std::vector<BitVector> rows_;
};

/// Fully reduced row echelon form. Invariants: pivots strictly increasing,
/// each pivot column has exactly one 1 among the basis rows, and row i has
/// its leading 1 at pivots[i].
struct EchelonSpace {
    BitMatrix basis;
    std::vector<size_t> pivots;

    size_t rank() const { return pivots.size(); }
    size_t ambient_dim() const { return basis.ncols(); }
    /// v minus its projection onto the span along pivot columns.
    BitVector residual(BitVector v) const;
    bool contains(const BitVector& v) const { return residual(v).is_zero(); }
};

EchelonSpace row_reduce(const BitMatrix& m);
size_t rank(const BitMatrix& m);

/// Basis of {v : m·v = 0}, one vector per free column, in increasing
/// free-column order.
std::vector<BitVector> kernel_basis(const BitMatrix& m);

/// Some x with x·m = target, or nullopt. target.size() must equal m.ncols().
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& target);

/// Vectors that extend sub's basis to a basis of ambient. Throws
/// std::invalid_argument when sub is not contained in ambient.
std::vector<BitVector> complement_basis(const EchelonSpace& sub, const EchelonSpace& ambient);

/// Incremental forward elimination that remembers, for every stored row, which
/// inserted rows were combined to produce it.
///
/// Stored rows have distinct leading columns. A vector in the span of any set
/// of stored rows reduces to zero using only rows from that set, so a prefix of
/// the insertion order can be solved against without touching later rows.
class Eliminator {
public:
    Eliminator(size_t ncols, size_t combo_capacity);

    size_t ncols() const { return ncols_; }
    size_t rank() const { return rows_.size(); }
    size_t inserted() const { return inserted_; }

    /// Inserts the next row (its combination is the unit vector at the next
    /// insertion index). Returns the combination of a kernel vector when the
    /// row reduces to zero, otherwise nullopt.
    std::optional<BitVector> insert(BitVector v);

    /// Reduces v against the stored rows; records the rows used in combo.
    BitVector reduce(BitVector v, BitVector* combo = nullptr) const;

    /// Some combination x of inserted rows with x·rows = target, or nullopt.
    std::optional<BitVector> solve(const BitVector& target) const;

    size_t memory_bytes() const;

private:
    size_t ncols_;
    size_t capacity_;
    size_t inserted_ = 0;
    std::vector<BitVector> rows_;
    std::vector<BitVector> combos_;
    std::vector<int32_t> pivot_row_;  // column -> stored row or -1
};

}  // namespace motext::f2
