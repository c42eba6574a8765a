#pragma once

// Embeddings of root systems, splints, injection fans and branching of
// finite-dimensional modules to a same-rank reductive subalgebra, both by
// character subtraction and through the stem weight multiplicities.

#include "splinter/characters.hpp"

namespace splinter {

/// Branching coefficients keyed by subalgebra highest weight (ambient coords).
using BranchingTable = FormalCharacter;

/// Additive bijection from the roots of `source` into the roots of `target`,
/// stored on positive source roots and extended by negation.
class Embedding {
public:
    Embedding() = default;
    /// images[i] is the image of source.positive_roots()[i], in target coordinates.
    Embedding(RootSystem source, RootSystem target, std::vector<Weight> images)
        : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
        if (images_.size() != source_.positive_roots().size())
            throw InvalidInput("embedding needs one image per positive source root");
        for (const auto& w : images_)
            if (w.size() != target_.dimension()) throw InvalidInput("embedding image outside target space");
        for (std::size_t i = 0; i < images_.size(); ++i) {
            root_index_.emplace(source_.positive_roots()[i], static_cast<std::int64_t>(i) + 1);
            root_index_.emplace(-source_.positive_roots()[i], -static_cast<std::int64_t>(i) - 1);
        }
    }

    /// Embedding determined by images of the simple roots (extended linearly).
    static Embedding from_simple_images(RootSystem source, RootSystem target, const std::vector<Weight>& simple) {
        std::vector<Weight> images;
        for (const auto& c : source.positive_root_coordinates()) {
            Weight w(target.dimension());
            for (std::size_t k = 0; k < c.size(); ++k)
                if (c[k] != 0) w += Rational(c[k]) * simple.at(k);
            images.push_back(std::move(w));
        }
        return Embedding(std::move(source), std::move(target), std::move(images));
    }

    [[nodiscard]] const RootSystem& source() const { return source_; }
    [[nodiscard]] const RootSystem& target() const { return target_; }
    [[nodiscard]] const std::vector<Weight>& images() const { return images_; }

    /// Image of any source root (positive or negative).
    [[nodiscard]] Weight image_of_root(const Weight& root) const {
        auto it = root_index_.find(root);
        if (it == root_index_.end()) throw InvalidInput(root.str() + " is not a root of " + source_.name());
        return it->second > 0 ? images_[static_cast<std::size_t>(it->second - 1)]
                              : -images_[static_cast<std::size_t>(-it->second - 1)];
    }

    /// All images, positives first then negatives.
    [[nodiscard]] std::vector<Weight> all_images() const {
        std::vector<Weight> r = images_;
        for (const auto& w : images_) r.push_back(-w);
        return r;
    }

    /// Linear extension through the images of the simple roots; defined on the
    /// rational span of the source roots.
    [[nodiscard]] Weight apply(const Weight& x) const {
        const auto c = source_.simple_root_coordinates(x);
        Weight w(target_.dimension());
        for (std::size_t k = 0; k < c.size(); ++k)
            if (c[k] != 0) w += c[k] * images_[k];  // simple roots lead positive_roots()
        return w;
    }

private:
    RootSystem source_;
    RootSystem target_;
    std::vector<Weight> images_;
    std::map<Weight, std::int64_t> root_index_;
};

struct VerificationReport {
    bool pass = true;
    std::vector<std::string> violations;

    void fail(std::string why) {
        pass = false;
        violations.push_back(std::move(why));
    }
    void merge(const VerificationReport& o, const std::string& prefix) {
        for (const auto& v : o.violations) fail(prefix + v);
    }
};

/// Bijectivity onto the image, negation-equivariance, and additivity on every
/// pair of source roots whose sum is a source root.
inline VerificationReport check_embedding(const Embedding& e) {
    VerificationReport rep;
    const auto& src = e.source();
    const auto& tgt = e.target();
    std::map<Weight, Weight> seen;  // image -> preimage
    for (const auto& a : src.all_roots()) {
        const Weight img = e.image_of_root(a);
        if (!tgt.is_root(img)) rep.fail("image " + img.str() + " of " + a.str() + " is not a root of " + tgt.name());
        auto [it, inserted] = seen.emplace(img, a);
        if (!inserted) rep.fail("not injective: " + a.str() + " and " + it->second.str() + " both map to " + img.str());
        if (e.image_of_root(-a) != -img) rep.fail("negation not preserved at " + a.str());
    }
    const auto roots = src.all_roots();
    for (const auto& a : roots)
        for (const auto& b : roots) {
            if (!(a < b)) continue;
            const Weight s = a + b;
            if (!src.is_root(s)) continue;
            const Weight lhs = e.image_of_root(s);
            const Weight rhs = e.image_of_root(a) + e.image_of_root(b);
            if (lhs != rhs)
                rep.fail("additivity broken for (" + a.str() + ", " + b.str() + "): phi(a+b) = " + lhs.str() +
                         " but phi(a)+phi(b) = " + rhs.str());
        }
    return rep;
}

/// Presentation of a root system as the disjoint union of the images of two
/// embeddings. phi1 is expected to be a root subsystem (the subalgebra a),
/// phi2 the stem s. `correspondence[k]` is the stem fundamental weight index
/// that carries the ambient Dynkin label k.
struct Splint {
    std::string name;
    RootSystem ambient;
    Embedding phi1;
    Embedding phi2;
    std::vector<std::size_t> correspondence;

    [[nodiscard]] std::string qualified_name() const { return ambient.name() + ":" + name; }
};

struct SplintReport {
    VerificationReport report;
    bool positive_compatible = true;  // positive stem roots map to positive roots
};

inline SplintReport check_splint(const Splint& s) {
    SplintReport out;
    auto& rep = out.report;
    rep.merge(check_embedding(s.phi1), "phi1: ");
    rep.merge(check_embedding(s.phi2), "phi2: ");
    std::map<Weight, int> owner;
    for (const auto& w : s.phi1.all_images()) owner[w] |= 1;
    for (const auto& w : s.phi2.all_images()) {
        if (owner.count(w) && (owner[w] & 1)) rep.fail("images overlap at " + w.str());
        owner[w] |= 2;
    }
    for (const auto& a : s.ambient.all_roots())
        if (!owner.count(a)) rep.fail("root " + a.str() + " is not covered by the stems");
    for (const auto& [w, o] : owner)
        if (!s.ambient.is_root(w)) rep.fail("image " + w.str() + " is not a root of " + s.ambient.name());
    if (s.phi1.source().rank() > s.ambient.rank()) rep.fail("rank of first stem exceeds ambient rank");
    if (s.phi2.source().rank() > s.ambient.rank()) rep.fail("rank of second stem exceeds ambient rank");
    const auto img1 = s.phi1.all_images();
    const std::set<Weight> set1(img1.begin(), img1.end());
    for (const auto& a : set1)
        for (const auto& b : set1) {
            const Weight sum = a + b;
            if (s.ambient.is_root(sum) && !set1.count(sum))
                rep.fail("first stem is not closed: " + a.str() + " + " + b.str() + " = " + sum.str());
        }
    for (const auto& w : s.phi1.images()) out.positive_compatible &= s.ambient.is_positive_root(w);
    for (const auto& w : s.phi2.images()) out.positive_compatible &= s.ambient.is_positive_root(w);
    return out;
}

/// Signed coefficients s(gamma) with
///   prod_{beta in stem+} (1 - e^{-phi2(beta)}) = - sum_gamma s(gamma) e^{-gamma}.
struct Fan {
    std::map<Weight, std::int64_t> coefficients;

    [[nodiscard]] std::int64_t at(const Weight& g) const {
        auto it = coefficients.find(g);
        return it == coefficients.end() ? 0 : it->second;
    }
    /// -sum s(gamma) e^{-gamma}
    [[nodiscard]] FormalCharacter reconstruct() const {
        FormalCharacter f;
        for (const auto& [g, c] : coefficients) f.add(-g, -c);
        return f;
    }
};

inline FormalCharacter stem_product(const Splint& s) {
    FormalCharacter p = FormalCharacter::monomial(Weight(s.ambient.dimension()));
    for (const auto& b : s.phi2.images()) p = p - p.shifted(-b);
    return p;
}

inline Fan fan_coefficients(const Splint& s) {
    Fan f;
    const FormalCharacter p = stem_product(s);
    for (const auto& [w, c] : p.terms()) f.coefficients.emplace(-w, -c);
    return f;
}

/// Stem weight with the ambient Dynkin labels of mu, placed through the
/// splint's stored index correspondence.
inline Weight tilde_weight(const Splint& s, const Weight& mu) {
    const RootSystem& stem = s.phi2.source();
    if (stem.rank() != s.ambient.rank())
        throw InvalidInput("tilde weight needs a stem of full rank: " + stem.name() + " in " + s.ambient.name());
    if (s.correspondence.size() != s.ambient.rank()) throw InvalidInput("splint has no index correspondence");
    detail::require_dominant_integral(s.ambient, mu, "tilde_weight");
    const auto labels = s.ambient.integral_labels(mu);
    std::vector<std::int64_t> stem_labels(stem.rank(), 0);
    for (std::size_t k = 0; k < labels.size(); ++k) stem_labels.at(s.correspondence[k]) = labels[k];
    return stem.from_dynkin(stem_labels);
}

/// The reductive subalgebra a of a splint: phi1's image realized in the
/// ambient space (center directions are kept as ambient coordinates).
inline RootSubsystem subalgebra_of(const Splint& s) { return root_subsystem(s.ambient, s.phi1.all_images()); }

/// Branching through the stem: b_{mu - phi2(mu~ - nu~)} = mult of nu~ in L^{mu~}_s.
inline BranchingTable branch_via_splint(const Splint& s, const Weight& mu, const RootSystem* dominant_for = nullptr) {
    const Weight mt = tilde_weight(s, mu);
    BranchingTable table;
    const FormalCharacter ch = freudenthal_character(s.phi2.source(), mt);
    for (const auto& [nt, m] : ch.terms()) {
        const Weight nu = mu - s.phi2.apply(mt - nt);
        if (dominant_for && !dominant_for->is_dominant(nu)) continue;
        table.add(nu, m);
    }
    return table;
}

/// Decomposes a (virtual-free) character of the ambient algebra into
/// irreducible characters of a realized subsystem by repeatedly removing the
/// highest remaining weight. Throws ConsistencyError if a leading term is not
/// dominant or has a negative coefficient.
inline BranchingTable decompose(const FormalCharacter& ch, const RootSystem& sub) {
    const detail::RhoOrder order{&sub};
    std::map<Weight, std::int64_t, detail::RhoOrder> rem(order);
    for (const auto& [w, c] : ch.terms()) rem.emplace(w, c);
    BranchingTable table;
    while (!rem.empty()) {
        auto top = std::prev(rem.end());
        const Weight nu = top->first;
        const std::int64_t b = top->second;
        if (b < 0 || !sub.is_dominant(nu))
            throw ConsistencyError("decomposition into " + sub.name() + " characters: leading term " + nu.str() +
                                   " with coefficient " + std::to_string(b));
        table.add(nu, b);
        const FormalCharacter sub_ch = freudenthal_character(sub, nu);
        for (const auto& [w, m] : sub_ch.terms()) {
            auto [it, inserted] = rem.try_emplace(w, -b * m);
            if (!inserted) {
                it->second -= b * m;
                if (it->second == 0) rem.erase(it);
            }
        }
    }
    return table;
}

/// Brute-force branching: subtract subalgebra characters from ch L^mu.
inline BranchingTable branch_direct(const RootSystem& rs, const RootSubsystem& sub, const Weight& mu) {
    if (sub.realized.dimension() != rs.dimension())
        throw InvalidInput("subsystem is not realized in the ambient space of " + rs.name());
    return decompose(freudenthal_character(rs, mu), sub.realized);
}

/// Sum of b * dim over a table of subalgebra highest weights.
inline std::int64_t table_dimension(const BranchingTable& t, const RootSystem& sub) {
    std::int64_t d = 0;
    for (const auto& [nu, b] : t.terms()) d += b * weyl_dimension(sub, nu);
    return d;
}

}  // namespace splinter
