#include "motext/f2.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace motext::f2 {

BitVector BitVector::from_string(std::string_view bits)
{
    BitVector v(bits.size());
    for (size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            v.set(i);
        else if (bits[i] != '0')
            throw std::invalid_argument("bit string may only contain 0 and 1");
    }
    return v;
}

BitVector BitVector::unit(size_t length, size_t i)
{
    BitVector v(length);
    v.set(i);
    return v;
}

BitVector& BitVector::operator^=(const BitVector& other)
{
    assert(len_ == other.len_);
    const size_t n = words_.size();
    uint64_t* a = words_.data();
    const uint64_t* b = other.words_.data();
    for (size_t i = 0; i < n; ++i)
        a[i] ^= b[i];
    return *this;
}

void BitVector::xor_from(const BitVector& other, size_t from)
{
    assert(len_ == other.len_);
    const size_t n = words_.size();
    uint64_t* a = words_.data();
    const uint64_t* b = other.words_.data();
    for (size_t i = from >> 6; i < n; ++i)
        a[i] ^= b[i];
}

bool BitVector::operator<(const BitVector& other) const
{
    if (len_ != other.len_)
        return len_ < other.len_;
    for (size_t w = 0; w < words_.size(); ++w) {
        uint64_t diff = words_[w] ^ other.words_[w];
        if (diff) {
            size_t bit = static_cast<size_t>(std::countr_zero(diff));
            // the vector with a 1 at the first differing coordinate is larger
            return ((other.words_[w] >> bit) & 1U) != 0;
        }
    }
    return false;
}

bool BitVector::is_zero() const
{
    return std::all_of(words_.begin(), words_.end(), [](uint64_t w) { return w == 0; });
}

size_t BitVector::count() const
{
    size_t c = 0;
    for (uint64_t w : words_)
        c += static_cast<size_t>(std::popcount(w));
    return c;
}

size_t BitVector::next_set(size_t from) const
{
    if (from >= len_)
        return npos;
    size_t w = from >> 6;
    uint64_t word = words_[w] & (~uint64_t{0} << (from & 63));
    while (true) {
        if (word)
            return (w << 6) + static_cast<size_t>(std::countr_zero(word));
        if (++w >= words_.size())
            return npos;
        word = words_[w];
    }
}

bool BitVector::dot(const BitVector& other) const
{
    assert(len_ == other.len_);
    uint64_t acc = 0;
    for (size_t i = 0; i < words_.size(); ++i)
        acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

std::vector<size_t> BitVector::support() const
{
    std::vector<size_t> s;
    for (size_t i = next_set(0); i != npos; i = next_set(i + 1))
        s.push_back(i);
    return s;
}

void BitVector::resize(size_t length)
{
    len_ = length;
    words_.resize((length + 63) / 64, 0);
    trim();
}

void BitVector::trim()
{
    if (len_ & 63)
        words_.back() &= (uint64_t{1} << (len_ & 63)) - 1;
}

std::string BitVector::to_string() const
{
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; ++i)
        if (get(i))
            s[i] = '1';
    return s;
}

BitMatrix::BitMatrix(std::vector<BitVector> rows, size_t ncols) : ncols_(ncols), rows_(std::move(rows))
{
    for (const auto& r : rows_)
        if (r.size() != ncols_)
            throw std::invalid_argument("BitMatrix rows must share the column count");
}

BitMatrix BitMatrix::identity(size_t n)
{
    BitMatrix m(n);
    for (size_t i = 0; i < n; ++i)
        m.push_row(BitVector::unit(n, i));
    return m;
}

BitMatrix BitMatrix::zero(size_t nrows, size_t ncols)
{
    return BitMatrix(std::vector<BitVector>(nrows, BitVector(ncols)), ncols);
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows)
{
    size_t ncols = rows.empty() ? 0 : rows.front().size();
    BitMatrix m(ncols);
    for (const auto& r : rows)
        m.push_row(BitVector::from_string(r));
    return m;
}

void BitMatrix::push_row(BitVector r)
{
    if (r.size() != ncols_)
        throw std::invalid_argument("row length does not match matrix");
    rows_.push_back(std::move(r));
}

BitVector BitMatrix::left_apply(const BitVector& x) const
{
    if (x.size() != nrows())
        throw std::invalid_argument("left_apply: dimension mismatch");
    BitVector out(ncols_);
    for (size_t i = x.next_set(0); i != BitVector::npos; i = x.next_set(i + 1))
        out ^= rows_[i];
    return out;
}

BitVector BitMatrix::right_apply(const BitVector& v) const
{
    if (v.size() != ncols_)
        throw std::invalid_argument("right_apply: dimension mismatch");
    BitVector out(nrows());
    for (size_t i = 0; i < nrows(); ++i)
        if (rows_[i].dot(v))
            out.set(i);
    return out;
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t = zero(ncols_, nrows());
    for (size_t i = 0; i < nrows(); ++i)
        for (size_t j = rows_[i].next_set(0); j != BitVector::npos; j = rows_[i].next_set(j + 1))
            t.rows_[j].set(i);
    return t;
}

BitVector EchelonSpace::residual(BitVector v) const
{
    for (size_t i = 0; i < pivots.size(); ++i)
        if (v.get(pivots[i]))
            v ^= basis.row(i);
    return v;
}

EchelonSpace row_reduce(const BitMatrix& m)
{
    std::vector<BitVector> rows;
    std::vector<size_t> pivots;
    for (const auto& r : m.rows()) {
        BitVector v = r;
        for (size_t i = 0; i < rows.size(); ++i)
            if (v.get(pivots[i]))
                v ^= rows[i];
        size_t lead = v.leading();
        if (lead == BitVector::npos)
            continue;
        for (auto& other : rows)
            if (other.get(lead))
                other ^= v;
        rows.push_back(std::move(v));
        pivots.push_back(lead);
    }
    std::vector<size_t> order(rows.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return pivots[a] < pivots[b]; });
    EchelonSpace out{BitMatrix(m.ncols()), {}};
    for (size_t i : order) {
        out.basis.push_row(std::move(rows[i]));
        out.pivots.push_back(pivots[i]);
    }
    return out;
}

size_t rank(const BitMatrix& m)
{
    Eliminator e(m.ncols(), 0);
    for (const auto& r : m.rows())
        e.insert(r);
    return e.rank();
}

std::vector<BitVector> kernel_basis(const BitMatrix& m)
{
    EchelonSpace e = row_reduce(m);
    const size_t n = m.ncols();
    std::vector<bool> is_pivot(n, false);
    for (size_t p : e.pivots)
        is_pivot[p] = true;
    std::vector<BitVector> out;
    for (size_t j = 0; j < n; ++j) {
        if (is_pivot[j])
            continue;
        BitVector v(n);
        v.set(j);
        for (size_t i = 0; i < e.pivots.size(); ++i)
            if (e.basis.row(i).get(j))
                v.set(e.pivots[i]);
        out.push_back(std::move(v));
    }
    return out;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& target)
{
    if (target.size() != m.ncols())
        throw std::invalid_argument("solve: target length must equal the column count");
    Eliminator e(m.ncols(), m.nrows());
    for (const auto& r : m.rows())
        e.insert(r);
    return e.solve(target);
}

std::vector<BitVector> complement_basis(const EchelonSpace& sub, const EchelonSpace& ambient)
{
    if (sub.ambient_dim() != ambient.ambient_dim())
        throw std::invalid_argument("complement_basis: ambient dimensions differ");
    for (const auto& r : sub.basis.rows())
        if (!ambient.contains(r))
            throw std::invalid_argument("complement_basis: sub is not contained in ambient");
    Eliminator e(ambient.ambient_dim(), 0);
    for (const auto& r : sub.basis.rows())
        e.insert(r);
    std::vector<BitVector> out;
    for (const auto& r : ambient.basis.rows())
        if (!e.insert(r))
            out.push_back(r);
    return out;
}

Eliminator::Eliminator(size_t ncols, size_t combo_capacity)
    : ncols_(ncols), capacity_(combo_capacity), pivot_row_(ncols, -1)
{
}

std::optional<BitVector> Eliminator::insert(BitVector v)
{
    assert(v.size() == ncols_);
    const bool track = capacity_ > 0;
    BitVector combo;
    if (track) {
        if (inserted_ >= capacity_)
            throw std::logic_error("Eliminator: combination capacity exceeded");
        combo = BitVector(capacity_);
        combo.set(inserted_);
    }
    ++inserted_;
    v = reduce(std::move(v), track ? &combo : nullptr);
    size_t lead = v.leading();
    if (lead == BitVector::npos) {
        if (track)
            return combo;
        return BitVector();
    }
    pivot_row_[lead] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(v));
    if (track)
        combos_.push_back(std::move(combo));
    return std::nullopt;
}

BitVector Eliminator::reduce(BitVector v, BitVector* combo) const
{
    for (size_t c = v.next_set(0); c != BitVector::npos; c = v.next_set(c + 1)) {
        int32_t r = pivot_row_[c];
        if (r < 0)
            continue;
        v.xor_from(rows_[static_cast<size_t>(r)], c);
        if (combo)
            *combo ^= combos_[static_cast<size_t>(r)];
    }
    return v;
}

std::optional<BitVector> Eliminator::solve(const BitVector& target) const
{
    if (target.size() != ncols_)
        throw std::invalid_argument("Eliminator::solve: dimension mismatch");
    BitVector combo(capacity_);
    BitVector residual = reduce(target, &combo);
    if (!residual.is_zero())
        return std::nullopt;
    combo.resize(inserted_);
    return combo;
}

size_t Eliminator::memory_bytes() const
{
    size_t words = 0;
    for (const auto& r : rows_)
        words += r.words().size();
    for (const auto& c : combos_)
        words += c.words().size();
    return words * 8 + pivot_row_.size() * 4;
}

}  // namespace motext::f2
