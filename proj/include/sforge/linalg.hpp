#pragma once

#include "sforge/lincomb.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sforge {

class SingularMap : public std::runtime_error {
public:
    SingularMap(std::size_t rank, std::size_t dim)
        : std::runtime_error("singular map: rank " + std::to_string(rank) + " of " + std::to_string(dim)), rank_(rank) {}
    std::size_t rank() const { return rank_; }

private:
    std::size_t rank_;
};

// Dense row-major rational matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = Rational(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    void append_rows(const Matrix& o) {
        if (r_ == 0 && c_ == 0) c_ = o.c_;
        if (o.c_ != c_) throw std::invalid_argument("column count mismatch");
        a_.insert(a_.end(), o.a_.begin(), o.a_.end());
        r_ += o.r_;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw std::invalid_argument("matrix shape mismatch");
        Matrix z(x.r_, y.c_);
        for (std::size_t i = 0; i < x.r_; ++i)
            for (std::size_t k = 0; k < x.c_; ++k) {
                const Rational& v = x(i, k);
                if (v.is_zero()) continue;
                for (std::size_t j = 0; j < y.c_; ++j)
                    if (!y(k, j).is_zero()) z(i, j) += v * y(k, j);
            }
        return z;
    }
    friend Matrix operator+(Matrix x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
        return x;
    }
    friend Matrix operator-(Matrix x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("matrix shape mismatch");
        for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
        return x;
    }
    friend Matrix operator*(const Rational& s, Matrix x) {
        for (auto& v : x.a_) v *= s;
        return x;
    }
    friend bool operator==(const Matrix& x, const Matrix& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    // Reduced row echelon form in place; pivot = first nonzero in column
    // order, rows scanned top-down. Returns pivot columns.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> piv;
        std::size_t row = 0;
        for (std::size_t col = 0; col < c_ && row < r_; ++col) {
            std::size_t p = row;
            while (p < r_ && (*this)(p, col).is_zero()) ++p;
            if (p == r_) continue;
            if (p != row)
                for (std::size_t j = 0; j < c_; ++j) std::swap((*this)(p, j), (*this)(row, j));
            Rational inv = Rational(1) / (*this)(row, col);
            for (std::size_t j = col; j < c_; ++j)
                if (!(*this)(row, j).is_zero()) (*this)(row, j) *= inv;
            for (std::size_t i = 0; i < r_; ++i) {
                if (i == row || (*this)(i, col).is_zero()) continue;
                Rational f = (*this)(i, col);
                for (std::size_t j = col; j < c_; ++j)
                    if (!(*this)(row, j).is_zero()) (*this)(i, j) -= f * (*this)(row, j);
            }
            piv.push_back(col);
            ++row;
        }
        return piv;
    }

    std::size_t rank() const {
        Matrix m = *this;
        return m.rref().size();
    }

    // Basis of the null space, one vector per free column, in reduced
    // echelon form (free coordinate 1, other free coordinates 0).
    std::vector<std::vector<Rational>> kernel_basis() const {
        Matrix m = *this;
        auto piv = m.rref();
        std::vector<bool> is_piv(c_, false);
        for (auto p : piv) is_piv[p] = true;
        std::vector<std::vector<Rational>> out;
        for (std::size_t f = 0; f < c_; ++f) {
            if (is_piv[f]) continue;
            std::vector<Rational> v(c_);
            v[f] = Rational(1);
            for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -m(i, f);
            out.push_back(std::move(v));
        }
        return out;
    }

    Matrix inverse() const {
        if (r_ != c_) throw std::invalid_argument("inverse of non-square matrix");
        Matrix aug(r_, 2 * c_);
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < c_; ++j) aug(i, j) = (*this)(i, j);
            aug(i, c_ + i) = Rational(1);
        }
        auto piv = aug.rref();
        std::size_t rk = 0;
        for (auto p : piv)
            if (p < c_) ++rk;
        if (rk != r_) throw SingularMap(rk, r_);
        Matrix inv(r_, c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) inv(i, j) = aug(i, c_ + j);
        return inv;
    }

private:
    std::size_t r_ = 0, c_ = 0;
    std::vector<Rational> a_;
};

// Linear map between finite ordered bases; column j is the image of
// domain()[j].
template <class K>
class LinMap {
public:
    LinMap() = default;
    LinMap(std::vector<K> dom, std::vector<K> cod) : dom_(std::move(dom)), cod_(std::move(cod)), cols_(dom_.size()) { index(); }
    LinMap(std::vector<K> dom, std::vector<K> cod, std::vector<LinComb<K>> cols)
        : dom_(std::move(dom)), cod_(std::move(cod)), cols_(std::move(cols)) {
        if (cols_.size() != dom_.size()) throw std::invalid_argument("column count mismatch");
        index();
        for (const auto& c : cols_)
            for (const auto& [k, v] : c)
                if (!cod_pos_.count(k)) throw std::invalid_argument("image outside codomain basis");
    }

    static LinMap identity(const std::vector<K>& basis) {
        std::vector<LinComb<K>> cols;
        for (const auto& k : basis) cols.emplace_back(k);
        return LinMap(basis, basis, std::move(cols));
    }

    const std::vector<K>& domain() const { return dom_; }
    const std::vector<K>& codomain() const { return cod_; }
    const std::vector<LinComb<K>>& columns() const { return cols_; }
    const LinComb<K>& column(std::size_t j) const { return cols_[j]; }
    void set_column(std::size_t j, LinComb<K> c) { cols_[j] = std::move(c); }

    LinComb<K> apply(const LinComb<K>& x) const {
        LinComb<K> out;
        for (const auto& [k, c] : x) {
            auto it = dom_pos_.find(k);
            if (it == dom_pos_.end()) throw std::invalid_argument("vector outside domain basis");
            for (const auto& [k2, c2] : cols_[it->second]) out.push_raw(k2, c * c2);
        }
        out.normalize();
        return out;
    }

    Matrix matrix() const {
        Matrix m(cod_.size(), dom_.size());
        for (std::size_t j = 0; j < dom_.size(); ++j)
            for (const auto& [k, c] : cols_[j]) m(cod_pos_.at(k), j) = c;
        return m;
    }
    static LinMap from_matrix(std::vector<K> dom, std::vector<K> cod, const Matrix& m) {
        if (m.rows() != cod.size() || m.cols() != dom.size()) throw std::invalid_argument("matrix shape mismatch");
        std::vector<LinComb<K>> cols(dom.size());
        for (std::size_t j = 0; j < dom.size(); ++j)
            for (std::size_t i = 0; i < cod.size(); ++i) cols[j].push_raw(cod[i], m(i, j));
        for (auto& c : cols) c.normalize();
        return LinMap(std::move(dom), std::move(cod), std::move(cols));
    }

    std::size_t rank() const { return matrix().rank(); }
    std::vector<LinComb<K>> kernel_basis() const {
        std::vector<LinComb<K>> out;
        for (const auto& v : matrix().kernel_basis()) {
            LinComb<K> x;
            for (std::size_t j = 0; j < v.size(); ++j) x.push_raw(dom_[j], v[j]);
            x.normalize();
            out.push_back(std::move(x));
        }
        return out;
    }
    LinMap inverse() const {
        if (dom_.size() != cod_.size()) throw std::invalid_argument("inverse of non-square map");
        return from_matrix(cod_, dom_, matrix().inverse());
    }
    LinMap transpose() const { return from_matrix(cod_, dom_, matrix().transpose()); }

    friend LinMap compose(const LinMap& f, const LinMap& g) {
        if (g.cod_ != f.dom_) throw std::invalid_argument("compose: basis mismatch");
        std::vector<LinComb<K>> cols;
        cols.reserve(g.dom_.size());
        for (const auto& c : g.cols_) cols.push_back(f.apply(c));
        return LinMap(g.dom_, f.cod_, std::move(cols));
    }
    friend LinMap operator+(const LinMap& f, const LinMap& g) {
        if (f.dom_ != g.dom_ || f.cod_ != g.cod_) throw std::invalid_argument("sum: basis mismatch");
        LinMap r = f;
        for (std::size_t j = 0; j < r.cols_.size(); ++j) r.cols_[j] += g.cols_[j];
        return r;
    }
    friend LinMap operator*(const Rational& s, LinMap f) {
        for (auto& c : f.cols_) c *= s;
        return f;
    }
    friend LinMap operator-(const LinMap& f, const LinMap& g) { return f + Rational(-1) * g; }
    friend bool operator==(const LinMap& f, const LinMap& g) { return f.dom_ == g.dom_ && f.cod_ == g.cod_ && f.cols_ == g.cols_; }

private:
    void index() {
        for (std::size_t i = 0; i < dom_.size(); ++i) dom_pos_[dom_[i]] = i;
        for (std::size_t i = 0; i < cod_.size(); ++i) cod_pos_[cod_[i]] = i;
    }

    std::vector<K> dom_, cod_;
    std::vector<LinComb<K>> cols_;
    std::map<K, std::size_t> dom_pos_, cod_pos_;
};

}  // namespace sforge
