#pragma once

// Formal characters (elements of the group ring of the weight lattice),
// singular elements, and weight multiplicities of irreducible modules.

#include "splinter/lattice.hpp"

#include <memory>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

namespace splinter {

/// Finite map weight -> nonzero integer. Also used as a generic group-ring
/// element (products, exact division by (1 - e^{-a})).
class FormalCharacter {
public:
    using Map = std::map<Weight, std::int64_t>;

    FormalCharacter() = default;
    explicit FormalCharacter(Map terms) {
        for (auto& [w, c] : terms)
            if (c != 0) terms_.emplace(w, c);
    }

    static FormalCharacter monomial(const Weight& w, std::int64_t c = 1) {
        FormalCharacter f;
        f.add(w, c);
        return f;
    }

    void add(const Weight& w, std::int64_t c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    [[nodiscard]] std::int64_t at(const Weight& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? 0 : it->second;
    }
    [[nodiscard]] const Map& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }
    [[nodiscard]] std::int64_t total() const {
        std::int64_t s = 0;
        for (const auto& [w, c] : terms_) s += c;
        return s;
    }

    FormalCharacter& operator+=(const FormalCharacter& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }
    FormalCharacter& operator-=(const FormalCharacter& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }
    FormalCharacter& operator*=(std::int64_t s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [w, c] : terms_) c *= s;
        return *this;
    }
    friend FormalCharacter operator+(FormalCharacter a, const FormalCharacter& b) { return a += b; }
    friend FormalCharacter operator-(FormalCharacter a, const FormalCharacter& b) { return a -= b; }
    friend FormalCharacter operator*(std::int64_t s, FormalCharacter a) { return a *= s; }
    friend FormalCharacter operator*(const FormalCharacter& a, const FormalCharacter& b) {
        FormalCharacter out;
        for (const auto& [wa, ca] : a.terms_)
            for (const auto& [wb, cb] : b.terms_) out.add(wa + wb, ca * cb);
        return out;
    }
    /// Multiplication by the monomial e^{w}.
    [[nodiscard]] FormalCharacter shifted(const Weight& w) const {
        FormalCharacter out;
        for (const auto& [x, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), x + w, c);
        return out;
    }
    template <class F>
    [[nodiscard]] FormalCharacter mapped(F&& f) const {
        FormalCharacter out;
        for (const auto& [x, c] : terms_) out.add(f(x), c);
        return out;
    }

    friend bool operator==(const FormalCharacter& a, const FormalCharacter& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const FormalCharacter& a, const FormalCharacter& b) { return !(a == b); }

    [[nodiscard]] std::string str() const {
        std::string s = "{";
        bool first = true;
        for (const auto& [w, c] : terms_) {
            s += (first ? "" : ", ") + w.str() + ":" + std::to_string(c);
            first = false;
        }
        return s + "}";
    }

private:
    Map terms_;
};

namespace detail {

inline void require_dominant_integral(const RootSystem& rs, const Weight& mu, const char* what) {
    if (mu.size() != rs.dimension()) throw InvalidInput(std::string(what) + ": weight dimension mismatch");
    if (!rs.is_integral(mu)) throw InvalidInput(std::string(what) + ": weight " + mu.str() + " is not integral");
    if (!rs.is_dominant(mu)) throw InvalidInput(std::string(what) + ": weight " + mu.str() + " is not dominant");
}

/// Orders group-ring terms by (rho, x) and then coordinates.
struct RhoOrder {
    const RootSystem* rs;
    bool operator()(const Weight& a, const Weight& b) const {
        const Rational ra = rs->inner(rs->rho(), a), rb = rs->inner(rs->rho(), b);
        if (ra != rb) return ra < rb;
        return a < b;
    }
};

}  // namespace detail

/// Product over positive roots of (1 - e^{-a}).
inline FormalCharacter weyl_denominator(const RootSystem& rs) {
    FormalCharacter d = FormalCharacter::monomial(Weight(rs.dimension()));
    for (const auto& a : rs.positive_roots()) d = d - d.shifted(-a);
    return d;
}

/// Exact quotient p / (1 - e^{-a}) for (rho, a) > 0. Throws ConsistencyError if
/// the division leaves a remainder.
inline FormalCharacter divide_by_root_factor(const RootSystem& rs, const FormalCharacter& p, const Weight& a) {
    if (p.empty()) return {};
    const detail::RhoOrder order{&rs};
    Rational floor_rho = rs.inner(rs.rho(), p.terms().begin()->first);
    for (const auto& [w, c] : p.terms()) floor_rho = std::min(floor_rho, rs.inner(rs.rho(), w));
    std::map<Weight, std::int64_t, detail::RhoOrder> rem(order);
    for (const auto& [w, c] : p.terms()) rem.emplace(w, c);
    FormalCharacter q;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        const Weight w = top->first;
        const std::int64_t c = top->second;
        if (rs.inner(rs.rho(), w) < floor_rho + rs.inner(rs.rho(), a))
            throw ConsistencyError("group-ring division by (1 - e^{-" + a.str() + "}) leaves a remainder");
        q.add(w, c);
        rem.erase(top);
        auto [it, inserted] = rem.try_emplace(w - a, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) rem.erase(it);
        }
    }
    return q;
}

/// Exact quotient by the full Weyl denominator.
inline FormalCharacter divide_by_weyl_denominator(const RootSystem& rs, FormalCharacter p) {
    for (const auto& a : rs.positive_roots()) p = divide_by_root_factor(rs, p, a);
    return p;
}

/// sum_{w in W} eps(w) e^{w(mu+rho) - rho}.
inline FormalCharacter singular_element(const RootSystem& rs, const Weight& mu) {
    detail::require_dominant_integral(rs, mu, "singular_element");
    FormalCharacter psi;
    for (const auto& [w, s] : weyl_orbit(rs, mu + rs.rho())) psi.add(w - rs.rho(), s);
    return psi;
}

/// prod_{a>0} (mu+rho, a)/(rho, a).
inline std::int64_t weyl_dimension(const RootSystem& rs, const Weight& mu) {
    detail::require_dominant_integral(rs, mu, "weyl_dimension");
    Rational d = 1;
    const Weight shifted = mu + rs.rho();
    for (const auto& a : rs.positive_roots()) d *= rs.inner(shifted, a) / rs.inner(rs.rho(), a);
    if (!is_integer(d)) throw ConsistencyError("non-integral Weyl dimension");
    return d.numerator();
}

/// Character of L^mu by the Weyl character formula (exact group-ring division).
inline FormalCharacter character_via_weyl(const RootSystem& rs, const Weight& mu) {
    return divide_by_weyl_denominator(rs, singular_element(rs, mu));
}

namespace detail {

inline FormalCharacter freudenthal_uncached(const RootSystem& rs, const Weight& mu) {
    const Weight& rho = rs.rho();
    const Rational top = rs.norm2(mu + rho);
    // heights of positive roots
    std::vector<std::int64_t> heights;
    for (const auto& c : rs.positive_root_coordinates())
        heights.push_back(std::accumulate(c.begin(), c.end(), std::int64_t{0}));

    std::vector<std::map<Weight, std::int64_t>> levels;
    levels.push_back({{mu, 1}});
    for (std::int64_t h = 1;; ++h) {
        std::set<Weight> candidates;
        for (const auto& [w, m] : levels.back())
            for (const auto& a : rs.simple_roots()) candidates.insert(w - a);
        std::map<Weight, std::int64_t> layer;
        for (const auto& lam : candidates) {
            const Rational denom = top - rs.norm2(lam + rho);
            Rational sum = 0;
            for (std::size_t r = 0; r < rs.positive_roots().size(); ++r) {
                const Weight& a = rs.positive_roots()[r];
                Weight probe = lam;
                for (std::int64_t k = 1; h - k * heights[r] >= 0; ++k) {
                    probe += a;
                    const auto& lv = levels[static_cast<std::size_t>(h - k * heights[r])];
                    auto it = lv.find(probe);
                    if (it != lv.end()) sum += Rational(it->second) * rs.inner(probe, a);
                }
            }
            if (denom == 0) {
                if (sum != 0) throw ConsistencyError("Freudenthal recursion: nonzero sum on the sphere");
                continue;
            }
            const Rational m = 2 * sum / denom;
            if (!is_integer(m) || m < 0)
                throw ConsistencyError("Freudenthal recursion produced multiplicity " + to_string(m));
            if (m != 0) layer.emplace(lam, m.numerator());
        }
        if (layer.empty()) break;
        levels.push_back(std::move(layer));
    }
    FormalCharacter::Map all;
    for (auto& lv : levels) all.insert(lv.begin(), lv.end());
    return FormalCharacter(std::move(all));
}

/// Process-wide character cache keyed by (root system descriptor, labels).
class CharacterCache {
public:
    static CharacterCache& instance() {
        static CharacterCache c;
        return c;
    }

    std::shared_ptr<const FormalCharacter> find(const std::string& key) const {
        std::shared_lock lock(mutex_);
        auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : it->second;
    }
    std::shared_ptr<const FormalCharacter> insert(const std::string& key, FormalCharacter ch) {
        std::unique_lock lock(mutex_);
        auto [it, inserted] = entries_.try_emplace(key, std::make_shared<const FormalCharacter>(std::move(ch)));
        return it->second;
    }
    void clear() {
        std::unique_lock lock(mutex_);
        entries_.clear();
    }
    std::size_t size() const {
        std::shared_lock lock(mutex_);
        return entries_.size();
    }

private:
    mutable std::shared_mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<const FormalCharacter>> entries_;
};

}  // namespace detail

/// Weight system of L^mu with multiplicities (Freudenthal's recursion, memoized
/// per root system and highest weight).
inline FormalCharacter freudenthal_character(const RootSystem& rs, const Weight& mu) {
    detail::require_dominant_integral(rs, mu, "freudenthal_character");
    const std::string key = rs.descriptor() + "#" + mu.str();
    auto& cache = detail::CharacterCache::instance();
    if (auto hit = cache.find(key)) return *hit;
    return *cache.insert(key, detail::freudenthal_uncached(rs, mu));
}

/// Dominant weights xi with (rho, xi) <= bound, sorted ascending by (rho, xi)
/// with lexicographic Dynkin-label tie-break.
inline std::vector<Weight> dominant_weights_up_to(const RootSystem& rs, const Rational& bound) {
    std::vector<std::vector<std::int64_t>> found;
    std::vector<std::int64_t> labels(rs.rank(), 0);
    std::vector<Rational> step(rs.rank());
    for (std::size_t i = 0; i < rs.rank(); ++i) step[i] = rs.inner(rs.rho(), rs.fundamental_weights()[i]);
    auto rec = [&](auto&& self, std::size_t i, Rational used) -> void {
        if (i == rs.rank()) {
            found.push_back(labels);
            return;
        }
        for (std::int64_t m = 0; used + Rational(m) * step[i] <= bound; ++m) {
            labels[i] = m;
            self(self, i + 1, used + Rational(m) * step[i]);
        }
        labels[i] = 0;
    };
    rec(rec, 0, Rational(0));
    std::vector<std::pair<std::pair<Rational, std::vector<std::int64_t>>, Weight>> keyed;
    for (const auto& l : found) {
        Weight w = rs.from_dynkin(l);
        keyed.push_back({{rs.inner(rs.rho(), w), l}, std::move(w)});
    }
    std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Weight> out;
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
}

}  // namespace splinter
