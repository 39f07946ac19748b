#pragma once

#include "sforge/species.hpp"

namespace sforge {

// A natural family of endomorphisms f_n of h[n], n = 0..nmax, multiplied by
// convolution: (f * g)_n = Σ_{S ⊔ T = [n]} μ_{S,T} (f_S ⊗ g_T) Δ_{S,T}.
class OpSeries {
public:
    OpSeries(const Model& h, int nmax) : h_(&h) {
        for (int n = 0; n <= nmax; ++n) maps_.push_back(zero_map(n));
    }
    template <class Fn>
    static OpSeries from(const Model& h, int nmax, Fn&& fn) {
        OpSeries s(h, nmax);
        for (int n = 0; n <= nmax; ++n) s.maps_[static_cast<std::size_t>(n)] = fn(n);
        return s;
    }
    static OpSeries identity(const Model& h, int nmax) {
        return from(h, nmax, [&](int n) { return LinMap<Key>::identity(h.basis(n)); });
    }
    // u ε: nonzero only in degree 0.
    static OpSeries unit(const Model& h, int nmax) {
        OpSeries s(h, nmax);
        s.maps_[0] = endomorphism(h, 0, [&](const Vec& x) {
            Rational e;
            for (const auto& [k, c] : x) e += c * h.counit(k);
            return e * h.unit();
        });
        return s;
    }

    const Model& model() const { return *h_; }
    int nmax() const { return static_cast<int>(maps_.size()) - 1; }
    const LinMap<Key>& operator[](int n) const { return maps_[static_cast<std::size_t>(n)]; }
    LinMap<Key>& operator[](int n) { return maps_[static_cast<std::size_t>(n)]; }

    friend OpSeries operator+(OpSeries a, const OpSeries& b) {
        for (int n = 0; n <= a.nmax(); ++n) a[n] = a[n] + b[n];
        return a;
    }
    friend OpSeries operator-(OpSeries a, const OpSeries& b) {
        for (int n = 0; n <= a.nmax(); ++n) a[n] = a[n] - b[n];
        return a;
    }
    friend OpSeries operator*(const Rational& c, OpSeries a) {
        for (int n = 0; n <= a.nmax(); ++n) a[n] = c * a[n];
        return a;
    }
    friend bool operator==(const OpSeries& a, const OpSeries& b) { return a.maps_ == b.maps_; }

    friend OpSeries convolve(const OpSeries& f, const OpSeries& g) {
        const Model& h = f.model();
        OpSeries out(h, f.nmax());
        for (int n = 0; n <= f.nmax(); ++n) {
            const Mask full = full_mask(n);
            out[n] = endomorphism(h, n, [&](const Vec& x) {
                Vec acc;
                for (Mask s = 0;; ++s) {
                    int a = popcount(s);
                    for (const auto& [xy, c] : delta(h, n, s, x))
                        acc.add_scaled(mu(h, n, s, f[a].apply(Vec(xy.first)), g[n - a].apply(Vec(xy.second))), c);
                    if (s == full) break;
                }
                return acc;
            });
        }
        return out;
    }

    // f^{*k} for k ≥ 0.
    OpSeries power(int k) const {
        OpSeries r = unit(*h_, nmax());
        for (int i = 0; i < k; ++i) r = convolve(r, *this);
        return r;
    }

    // Σ_k coeffs[k] (f - uε)^{*k}; f - uε vanishes in degree 0, so terms
    // beyond nmax contribute nothing.
    OpSeries calculus(const std::function<Rational(int)>& coeff) const {
        OpSeries x = *this - unit(*h_, nmax());
        OpSeries r = coeff(0) * unit(*h_, nmax());
        OpSeries p = unit(*h_, nmax());
        for (int k = 1; k <= nmax(); ++k) {
            p = convolve(p, x);
            Rational c = coeff(k);
            if (!c.is_zero()) r = r + c * p;
        }
        return r;
    }

    OpSeries log() const {
        return calculus([](int k) { return k == 0 ? Rational(0) : Rational(k % 2 ? 1 : -1, k); });
    }

    // exp of a family vanishing in degree 0.
    OpSeries exp() const {
        OpSeries shifted = *this + unit(*h_, nmax());
        return shifted.calculus([](int k) { return Rational(1) / factorial(k); });
    }

private:
    LinMap<Key> zero_map(int n) const { return LinMap<Key>(h_->basis(n), h_->basis(n)); }

    const Model* h_;
    std::vector<LinMap<Key>> maps_;
};

}  // namespace sforge
