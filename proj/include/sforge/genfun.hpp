#pragma once

#include "sforge/models.hpp"

#include <numeric>
#include <optional>
#include <set>

namespace sforge {

// Truncated formal power series Σ a_n x^n.
using PowerSeries = std::vector<Rational>;

inline PowerSeries ps_multiply(const PowerSeries& a, const PowerSeries& b) {
    PowerSeries c(std::min(a.size(), b.size()));
    for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = 0; i + j < c.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

inline PowerSeries ps_inverse(const PowerSeries& a) {
    if (a.empty() || a[0].is_zero()) throw std::invalid_argument("power series is not invertible");
    PowerSeries b(a.size());
    b[0] = Rational(1) / a[0];
    for (std::size_t n = 1; n < a.size(); ++n) {
        Rational s;
        for (std::size_t k = 1; k <= n; ++k) s += a[k] * b[n - k];
        b[n] = -s / a[0];
    }
    return b;
}

// log a for a_0 = 1.
inline PowerSeries ps_log(const PowerSeries& a) {
    if (a.empty() || !a[0].is_one()) throw std::invalid_argument("log needs constant term 1");
    PowerSeries y = a;
    y[0] = Rational(0);
    PowerSeries out(a.size()), p(a.size());
    p[0] = Rational(1);
    for (std::size_t k = 1; k < a.size(); ++k) {
        p = ps_multiply(p, y);
        Rational c(k % 2 ? 1 : -1, static_cast<long long>(k));
        for (std::size_t i = 0; i < a.size(); ++i) out[i] += c * p[i];
    }
    return out;
}

// ---- transforms of a dimension sequence d_0 = 1, d_1, ... --------------------------------

// Coefficients of 1 - 1/O(x), O(x) = Σ d_n x^n.
inline PowerSeries boolean_transform(const PowerSeries& d) {
    PowerSeries b = ps_inverse(d);
    for (auto& c : b) c = -c;
    b[0] += Rational(1);
    return b;
}

// n! [x^n] e^{-x} E(x) with E(x) = Σ d_n x^n/n!.
inline PowerSeries binomial_transform(const PowerSeries& d) {
    PowerSeries b(d.size());
    for (std::size_t n = 0; n < d.size(); ++n)
        for (std::size_t k = 0; k <= n; ++k) {
            Rational t = binomial(Rational(static_cast<long long>(n)), static_cast<int>(k)) * d[k];
            b[n] += (n - k) % 2 ? -t : t;
        }
    return b;
}

// n! [x^n] log E(x).
inline PowerSeries log_egf(const PowerSeries& d) {
    PowerSeries e(d.size());
    for (std::size_t n = 0; n < d.size(); ++n) e[n] = d[n] / factorial(static_cast<int>(n));
    PowerSeries l = ps_log(e);
    for (std::size_t n = 0; n < l.size(); ++n) l[n] *= factorial(static_cast<int>(n));
    return l;
}

// Coefficients of O(x)/T(x).
inline PowerSeries ordinary_over_type(const PowerSeries& d, const PowerSeries& t) {
    return ps_multiply(d, ps_inverse(t));
}

// Coefficients of (1 - x) T(x).
inline PowerSeries type_increments(const PowerSeries& t) {
    PowerSeries out(t.size());
    for (std::size_t n = 0; n < t.size(); ++n) out[n] = t[n] - (n ? t[n - 1] : Rational(0));
    return out;
}

inline bool nonnegative(const PowerSeries& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& c) { return c >= Rational(0); });
}

// ---- dimension and type sequences ---------------------------------------------------------

// Number of S_n-orbits on the basis of h[n]; needs a permutation basis.
inline long long orbit_count(const Model& h, int n) {
    if (!h.flags().permutation_basis) throw UnsupportedStructure(h.name() + " has no permutation basis");
    std::vector<Perm> gens;
    for (int i = 0; i + 1 < n; ++i) {
        Perm t(static_cast<std::size_t>(n));
        std::iota(t.begin(), t.end(), 0);
        std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(i) + 1]);
        gens.push_back(std::move(t));
    }
    std::set<Key> seen;
    long long orbits = 0;
    for (Key k : h.basis(n)) {
        if (seen.count(k)) continue;
        ++orbits;
        std::vector<Key> stack{k};
        seen.insert(k);
        while (!stack.empty()) {
            Key x = stack.back();
            stack.pop_back();
            for (const auto& g : gens) {
                Vec y = h.relabel(n, g, x);
                if (y.size() != 1) throw UnsupportedStructure(h.name() + " has no permutation basis");
                Key z = y.begin()->first;
                if (seen.insert(z).second) stack.push_back(z);
            }
        }
    }
    return orbits;
}

namespace detail {

inline std::string base_name(const std::string& name) {
    std::string s = name;
    if (s.rfind("dual:", 0) == 0) s = s.substr(5);
    if (s.rfind("Lq:", 0) == 0) return "L";
    if (s.rfind("Sigmaq:", 0) == 0) return "Sigma";
    return s;
}

// Unlabeled graphs on n vertices by Burnside: average of 2^{cycles on pairs}.
inline Rational unlabeled_graphs(int n) {
    Perm sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    Rational total;
    do {
        std::set<std::pair<int, int>> seen;
        int cycles = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                if (seen.count({i, j})) continue;
                ++cycles;
                int a = i, b = j;
                while (seen.insert({std::min(a, b), std::max(a, b)}).second) {
                    a = sigma[static_cast<std::size_t>(a)];
                    b = sigma[static_cast<std::size_t>(b)];
                }
            }
        total += pow(Rational(2), cycles);
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total / factorial(n);
}

}  // namespace detail

// Closed-form dimension sequence for the built-in families (and their duals).
inline std::optional<PowerSeries> known_dimensions(const std::string& name, int nmax) {
    const std::string b = detail::base_name(name);
    PowerSeries d;
    if (b == "E") {
        d.assign(static_cast<std::size_t>(nmax) + 1, Rational(1));
    } else if (b == "L") {
        for (int n = 0; n <= nmax; ++n) d.push_back(factorial(n));
    } else if (b == "G") {
        for (int n = 0; n <= nmax; ++n) d.push_back(pow(Rational(2), n * (n - 1) / 2));
    } else if (b == "Pi") {
        // B_n = Σ_k C(n-1, k) B_k
        d.push_back(Rational(1));
        for (int n = 1; n <= nmax; ++n) {
            Rational s;
            for (int k = 0; k < n; ++k) s += binomial(Rational(n - 1), k) * d[static_cast<std::size_t>(k)];
            d.push_back(s);
        }
    } else if (b == "Sigma") {
        // a_n = Σ_{k≥1} C(n, k) a_{n-k}
        d.push_back(Rational(1));
        for (int n = 1; n <= nmax; ++n) {
            Rational s;
            for (int k = 1; k <= n; ++k) s += binomial(Rational(n), k) * d[static_cast<std::size_t>(n - k)];
            d.push_back(s);
        }
    } else {
        return std::nullopt;
    }
    return d;
}

// Closed-form orbit counts for the built-in set-theoretic families.
inline std::optional<PowerSeries> known_types(const std::string& name, int nmax) {
    const std::string b = detail::base_name(name);
    PowerSeries t;
    if (b == "E" || b == "L") {
        t.assign(static_cast<std::size_t>(nmax) + 1, Rational(1));
    } else if (b == "Sigma") {
        for (int n = 0; n <= nmax; ++n) t.push_back(n ? pow(Rational(2), n - 1) : Rational(1));
    } else if (b == "Pi") {
        // integer partitions
        std::vector<Rational> p(static_cast<std::size_t>(nmax) + 1);
        p[0] = Rational(1);
        for (int part = 1; part <= nmax; ++part)
            for (int n = part; n <= nmax; ++n) p[static_cast<std::size_t>(n)] += p[static_cast<std::size_t>(n - part)];
        t = p;
    } else if (b == "G") {
        for (int n = 0; n <= nmax; ++n) t.push_back(detail::unlabeled_graphs(n));
    } else {
        return std::nullopt;
    }
    return t;
}

struct SequenceTransformReport {
    std::string model;
    int nmax = 0;
    PowerSeries dims;
    std::optional<PowerSeries> types;
    PowerSeries boolean;
    PowerSeries binomial;
    PowerSeries log;  // empty unless d_0 = 1
    std::optional<PowerSeries> ordinary_type;
    std::optional<PowerSeries> type_steps;
    // degrees taken from a closed form rather than enumeration
    int enumerated_upto = 0;

    // Verdicts apply where the theorem's hypotheses hold; nullopt otherwise.
    std::optional<bool> boolean_ok, binomial_ok, log_ok, ordinary_type_ok, type_steps_ok;

    bool pass() const {
        for (const auto& v : {boolean_ok, binomial_ok, log_ok, ordinary_type_ok, type_steps_ok})
            if (v && !*v) return false;
        return true;
    }
};

// Enumerates dims (and orbit counts) up to the model's degree cap and uses
// closed forms beyond it when one is known.
inline SequenceTransformReport sequence_transforms(const Model& h, int nmax) {
    SequenceTransformReport r;
    r.model = h.name();
    r.nmax = nmax;
    const auto f = h.flags();
    const int cap = std::min(nmax, h.degree_cap());
    r.enumerated_upto = cap;
    auto known_d = known_dimensions(h.name(), nmax);
    auto known_t = f.permutation_basis ? known_types(h.name(), nmax) : std::nullopt;
    bool have_types = f.permutation_basis;
    PowerSeries types;
    for (int n = 0; n <= nmax; ++n) {
        if (n <= cap) {
            r.dims.emplace_back(static_cast<long long>(h.dim(n)));
            if (have_types) types.emplace_back(orbit_count(h, n));
        } else {
            if (!known_d) throw UnsupportedStructure("degree " + std::to_string(n) + " of " + h.name() + " exceeds the enumeration cap");
            r.dims.push_back((*known_d)[static_cast<std::size_t>(n)]);
            if (have_types) {
                if (known_t) types.push_back((*known_t)[static_cast<std::size_t>(n)]);
                else have_types = false;
            }
        }
    }
    r.boolean = boolean_transform(r.dims);
    r.binomial = binomial_transform(r.dims);
    if (r.dims[0].is_one()) r.log = log_egf(r.dims);
    const bool connected_hopf = f.connected && f.hopf && r.dims[0].is_one();
    if (connected_hopf) r.boolean_ok = nonnegative(r.boolean);
    if (connected_hopf && f.set_theoretic && f.permutation_basis) r.binomial_ok = nonnegative(r.binomial);
    if (connected_hopf && f.cocommutative) r.log_ok = nonnegative(r.log);
    if (have_types) {
        r.types = types;
        r.ordinary_type = ordinary_over_type(r.dims, types);
        r.type_steps = type_increments(types);
        if (connected_hopf) r.ordinary_type_ok = nonnegative(*r.ordinary_type);
        if (connected_hopf && f.set_theoretic) r.type_steps_ok = nonnegative(*r.type_steps);
    }
    return r;
}

}  // namespace sforge
