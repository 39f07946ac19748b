#pragma once

#include "sforge/models.hpp"

namespace sforge {

enum class BasisTag { H, Q, M, P };

inline std::string tag_str(BasisTag t) {
    switch (t) {
        case BasisTag::H: return "H";
        case BasisTag::Q: return "Q";
        case BasisTag::M: return "M";
        case BasisTag::P: return "P";
    }
    return "?";
}

inline BasisTag parse_tag(std::string_view s) {
    if (s == "H") return BasisTag::H;
    if (s == "Q") return BasisTag::Q;
    if (s == "M") return BasisTag::M;
    if (s == "P") return BasisTag::P;
    throw std::invalid_argument("unknown basis tag '" + std::string(s) + "'");
}

// Which of the Q-capable families a model belongs to.
enum class QFamily { None, Partitions, Graphs, Faces };

inline QFamily q_family(const Model& m) {
    if (dynamic_cast<const PartitionModel*>(&m)) return QFamily::Partitions;
    if (dynamic_cast<const GraphModel*>(&m)) return QFamily::Graphs;
    if (auto f = dynamic_cast<const FaceModel*>(&m); f && f->q().is_one()) return QFamily::Faces;
    return QFamily::None;
}

// ---- H <-> Q ---------------------------------------------------------------------

// Column for key x: the expansion of H_x in the Q basis (or Q_x in H when
// inverse is set).
inline LinMap<Key> h_to_q(const Model& m, int n, bool inverse = false) {
    const auto& b = m.basis(n);
    std::vector<Vec> cols;
    switch (q_family(m)) {
        case QFamily::Partitions:
            for (Key k : b) {
                auto x = key_partition(n, k);
                Vec c;
                for (Key l : b) {
                    auto y = key_partition(n, l);
                    if (refines(x, y)) c.push_raw(l, inverse ? mobius_partition(x, y) : Rational(1));
                }
                c.normalize();
                cols.push_back(std::move(c));
            }
            break;
        case QFamily::Graphs:
            for (Key g : b) {
                Vec c;
                // subsets h of g
                for (Key h = g;; h = (h - 1) & g) {
                    c.push_raw(h, inverse && popcount(g & ~h) % 2 ? Rational(-1) : Rational(1));
                    if (h == 0) break;
                }
                c.normalize();
                cols.push_back(std::move(c));
            }
            break;
        case QFamily::Faces:
            for (Key k : b) {
                auto f = key_composition(n, k);
                Vec c;
                for (Key l : b) {
                    auto g = key_composition(n, l);
                    if (!refines(f, g)) continue;
                    if (inverse) {
                        Rational sign((g.length() - f.length()) % 2 ? -1 : 1);
                        c.push_raw(l, sign / length_quotient(f, g));
                    } else {
                        c.push_raw(l, Rational(1) / factorial_quotient(f, g));
                    }
                }
                c.normalize();
                cols.push_back(std::move(c));
            }
            break;
        case QFamily::None: throw std::invalid_argument("model " + m.name() + " has no Q basis");
    }
    return LinMap<Key>(b, b, std::move(cols));
}

inline LinMap<Key> q_to_h(const Model& m, int n) { return h_to_q(m, n, true); }

// The same bimonoid written in the Q basis.
inline ModelPtr q_view(const ModelPtr& m) {
    if (q_family(*m) == QFamily::None) throw std::invalid_argument("model " + m->name() + " has no Q basis");
    const Model* raw = m.get();
    return std::make_shared<BasisView>(
        m, "Q", [raw](int n) { return h_to_q(*raw, n); }, [raw](int n) { return q_to_h(*raw, n); });
}

// The dual in the P basis, the basis dual to Q.
inline ModelPtr p_view(const ModelPtr& m) {
    if (q_family(*m) == QFamily::None) throw std::invalid_argument("model " + m->name() + " has no P basis");
    auto d = std::make_shared<DualModel>(m);
    const Model* raw = m.get();
    return std::make_shared<BasisView>(
        d, "P", [raw](int n) { return q_to_h(*raw, n).transpose(); }, [raw](int n) { return h_to_q(*raw, n).transpose(); });
}

// ---- structure constants written directly in Q ---------------------------------

inline bool graph_admissible(Key g, int n, Mask s) { return graph_admissible(SimpleGraph{n, g}, s); }

inline Vec q_product(QFamily fam, const Model& m, int n, Mask s, Key x, Key y) {
    if (fam == QFamily::None) throw std::invalid_argument("no Q structure");
    return m.product(n, s, x, y);
}

inline Vec2 q_coproduct(QFamily fam, const Model& m, int n, Mask s, Key z) {
    bool ok = false;
    switch (fam) {
        case QFamily::Partitions: ok = admissible(s, key_partition(n, z).blocks); break;
        case QFamily::Graphs: ok = graph_admissible(z, n, s); break;
        case QFamily::Faces: ok = admissible(s, key_composition(n, z).blocks); break;
        case QFamily::None: throw std::invalid_argument("no Q structure");
    }
    return ok ? m.coproduct(n, s, z) : Vec2();
}

inline Vec q_antipode(QFamily fam, int n, Key z) {
    switch (fam) {
        case QFamily::Partitions: {
            int l = key_partition(n, z).length();
            return Vec(z, Rational(l % 2 ? -1 : 1));
        }
        case QFamily::Graphs: {
            int c = components(SimpleGraph{n, z}).length();
            return Vec(z, Rational(c % 2 ? -1 : 1));
        }
        case QFamily::Faces: {
            auto f = key_composition(n, z);
            return Vec(composition_key(opp(f)), Rational(f.length() % 2 ? -1 : 1));
        }
        case QFamily::None: break;
    }
    throw std::invalid_argument("no Q structure");
}

// ---- morphisms ------------------------------------------------------------------

// υ: Σ̂ -> Σ, drop empty blocks.
inline Key upsilon(int n, Key dec) { return composition_key(positive_part(key_decomposition(n, dec))); }

// π: Σ -> Π, forget the block order.
inline Key support_map(int n, Key comp) { return partition_key(support(key_composition(n, comp))); }

// k: Π -> G, complete graph on each block.
inline Key complete_map(int n, Key part) { return complete_on_blocks(key_partition(n, part)).edges; }

// Matrix of a basis-to-basis map between two models in degree n.
template <class Fn>
LinMap<Key> key_map(const Model& from, const Model& to, int n, Fn&& fn) {
    std::vector<Vec> cols;
    for (Key k : from.basis(n)) cols.emplace_back(fn(n, k));
    return LinMap<Key>(from.basis(n), to.basis(n), std::move(cols));
}

// ---- self-duality maps, H basis to M basis ------------------------------------------

inline LinMap<Key> isolinear(const LinearModel& l, int n) {
    const auto& b = l.basis(n);
    std::vector<Vec> cols;
    for (Key k : b) {
        auto f = order_composition(key_order(n, k));
        Vec c;
        for (Key k2 : b) c.push_raw(k2, pow(l.q(), distance(f, order_composition(key_order(n, k2)))));
        c.normalize();
        cols.push_back(std::move(c));
    }
    return LinMap<Key>(b, b, std::move(cols));
}

inline LinMap<Key> isoflat(const PartitionModel& p, int n) {
    const auto& b = p.basis(n);
    std::vector<Vec> cols;
    for (Key y : b) {
        auto py = key_partition(n, y);
        Vec c;
        for (Key x : b) c.push_raw(x, factorial_of(join(key_partition(n, x), py)));
        c.normalize();
        cols.push_back(std::move(c));
    }
    return LinMap<Key>(b, b, std::move(cols));
}

inline LinMap<Key> isograph_partitions(const PartitionModel& p, int n) {
    const auto& b = p.basis(n);
    std::vector<Vec> cols;
    for (Key y : b) {
        auto py = key_partition(n, y);
        Vec c;
        for (Key x : b)
            if (join(key_partition(n, x), py).length() == n) c.push_raw(x, Rational(1));
        c.normalize();
        cols.push_back(std::move(c));
    }
    return LinMap<Key>(b, b, std::move(cols));
}

inline LinMap<Key> isograph_graphs(const GraphModel& g, int n) {
    const auto& b = g.basis(n);
    Key all = full_mask(n * (n - 1) / 2);
    std::vector<Vec> cols;
    for (Key h : b) {
        Key co = all & ~h;
        Vec c;
        for (Key s = co;; s = (s - 1) & co) {
            c.push_raw(s, Rational(1));
            if (s == 0) break;
        }
        c.normalize();
        cols.push_back(std::move(c));
    }
    return LinMap<Key>(b, b, std::move(cols));
}

inline LinMap<Key> isoface(const FaceModel& s, int n) {
    const auto& b = s.basis(n);
    std::vector<Vec> cols;
    for (Key k : b) {
        auto f = key_composition(n, k);
        Vec c;
        for (Key k2 : b) {
            auto f2 = key_composition(n, k2);
            c.push_raw(k2, factorial_of(tits_product(f, f2)) * pow(s.q(), distance(f, f2)));
        }
        c.normalize();
        cols.push_back(std::move(c));
    }
    return LinMap<Key>(b, b, std::move(cols));
}

// True when ψ is a morphism h -> h* of bimonoids in degree n: it
// intertwines all products and coproducts with those of the dual.
inline bool is_dual_morphism(const Model& h, const DualModel& d, const std::function<LinMap<Key>(int)>& psi, int n) {
    std::vector<LinMap<Key>> maps;
    for (int m = 0; m <= n; ++m) maps.push_back(psi(m));
    if (maps[0].apply(h.unit()) != d.unit()) return false;
    for (Mask s = 0; s <= full_mask(n); ++s) {
        int a = popcount(s);
        for (Key x : h.basis(a))
            for (Key y : h.basis(n - a)) {
                Vec lhs = maps[static_cast<std::size_t>(n)].apply(Vec(h.product(n, s, x, y)));
                Vec rhs = mu(d, n, s, maps[static_cast<std::size_t>(a)].apply(Vec(x)), maps[static_cast<std::size_t>(n - a)].apply(Vec(y)));
                if (lhs != rhs) return false;
            }
        for (Key z : h.basis(n)) {
            Vec2 lhs;
            for (const auto& [xy, c] : h.coproduct(n, s, z))
                for (const auto& [u, cu] : maps[static_cast<std::size_t>(a)].apply(Vec(xy.first)))
                    for (const auto& [v, cv] : maps[static_cast<std::size_t>(n - a)].apply(Vec(xy.second)))
                        lhs.push_raw(KeyPair{u, v}, c * cu * cv);
            lhs.normalize();
            if (lhs != delta(d, n, s, maps[static_cast<std::size_t>(n)].apply(Vec(z)))) return false;
        }
        if (s == full_mask(n)) break;
    }
    return true;
}

}  // namespace sforge
