#pragma once

#include "sforge/rational.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sforge {

// Sparse linear combination over opaque keys, kept sorted by key with no
// zero coefficients.
template <class K, class Less = std::less<K>>
class LinComb {
public:
    using Term = std::pair<K, Rational>;

    LinComb() = default;
    explicit LinComb(const K& k, Rational c = Rational(1)) {
        if (!c.is_zero()) terms_.emplace_back(k, std::move(c));
    }

    const std::vector<Term>& terms() const { return terms_; }
    auto begin() const { return terms_.begin(); }
    auto end() const { return terms_.end(); }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    Rational coeff(const K& k) const {
        auto it = find(k);
        return it != terms_.end() && !Less{}(k, it->first) ? it->second : Rational();
    }

    void add(const K& k, const Rational& c) {
        if (c.is_zero()) return;
        auto it = find(k);
        if (it != terms_.end() && !Less{}(k, it->first)) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        } else {
            terms_.insert(it, Term(k, c));
        }
    }

    // Fast accumulation: push terms in any order, then call normalize().
    void push_raw(const K& k, const Rational& c) {
        if (!c.is_zero()) terms_.emplace_back(k, c);
    }
    void normalize() {
        if (terms_.size() < 2) return;
        std::stable_sort(terms_.begin(), terms_.end(), [](const Term& a, const Term& b) { return Less{}(a.first, b.first); });
        std::size_t w = 0;
        for (std::size_t r = 0; r < terms_.size();) {
            Term acc = terms_[r++];
            while (r < terms_.size() && !Less{}(acc.first, terms_[r].first)) acc.second += terms_[r++].second;
            if (!acc.second.is_zero()) terms_[w++] = std::move(acc);
        }
        terms_.resize(w);
    }

    LinComb& operator+=(const LinComb& o) {
        if (o.empty()) return *this;
        if (empty()) return *this = o;
        std::vector<Term> out;
        out.reserve(terms_.size() + o.terms_.size());
        auto a = terms_.begin(), b = o.terms_.begin();
        while (a != terms_.end() || b != o.terms_.end()) {
            if (b == o.terms_.end() || (a != terms_.end() && Less{}(a->first, b->first))) {
                out.push_back(*a++);
            } else if (a == terms_.end() || Less{}(b->first, a->first)) {
                out.push_back(*b++);
            } else {
                Rational c = a->second + b->second;
                if (!c.is_zero()) out.emplace_back(a->first, std::move(c));
                ++a;
                ++b;
            }
        }
        terms_ = std::move(out);
        return *this;
    }
    LinComb& operator-=(const LinComb& o) { return *this += o * Rational(-1); }
    LinComb& operator*=(const Rational& c) {
        if (c.is_zero()) {
            terms_.clear();
        } else if (!c.is_one()) {
            for (auto& t : terms_) t.second *= c;
        }
        return *this;
    }
    void add_scaled(const LinComb& o, const Rational& c) {
        if (c.is_zero() || o.empty()) return;
        *this += o * c;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
    friend LinComb operator*(LinComb a, const Rational& c) { return a *= c; }
    friend LinComb operator*(const Rational& c, LinComb a) { return a *= c; }
    friend bool operator==(const LinComb& a, const LinComb& b) {
        if (a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            if (Less{}(a.terms_[i].first, b.terms_[i].first) || Less{}(b.terms_[i].first, a.terms_[i].first)) return false;
            if (!(a.terms_[i].second == b.terms_[i].second)) return false;
        }
        return true;
    }

    template <class F>
    auto map_keys(F&& f) const {
        using K2 = std::decay_t<decltype(f(std::declval<K>()))>;
        LinComb<K2> out;
        for (const auto& [k, c] : terms_) out.push_raw(f(k), c);
        out.normalize();
        return out;
    }

private:
    auto find(const K& k) {
        return std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, const K& key) { return Less{}(t.first, key); });
    }
    auto find(const K& k) const {
        return std::lower_bound(terms_.begin(), terms_.end(), k, [](const Term& t, const K& key) { return Less{}(t.first, key); });
    }

    std::vector<Term> terms_;
};

// Pairing of a dual functional (M-coordinates) against an H-combination.
template <class K>
Rational pairing(const LinComb<K>& m, const LinComb<K>& h) {
    Rational r;
    auto a = m.begin(), b = h.begin();
    while (a != m.end() && b != h.end()) {
        if (a->first < b->first) {
            ++a;
        } else if (b->first < a->first) {
            ++b;
        } else {
            r += a->second * b->second;
            ++a;
            ++b;
        }
    }
    return r;
}

}  // namespace sforge
