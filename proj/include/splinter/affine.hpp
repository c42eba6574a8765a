#pragma once

// Untwisted affine extensions: truncated characters of integrable highest
// weight modules, graded branching to the horizontal subalgebra, string
// functions and the multiplicity-matrix relation, branching through a splint
// to a same-rank subalgebra, and q-dimensions.
//
// delta is never a vector: grades are explicit indices. Grade n means the
// coefficient of e^{-n delta} relative to the highest weight.

#include "splinter/splint.hpp"

namespace splinter {

struct AffineWeight {
    Weight finite;
    std::int64_t level = 0;
    std::int64_t grade = 0;
};

/// Layers 0..cutoff of a graded group-ring element.
class GradedCharacter {
public:
    GradedCharacter() = default;
    explicit GradedCharacter(std::int64_t cutoff) : layers_(static_cast<std::size_t>(std::max<std::int64_t>(cutoff, -1) + 1)) {}

    [[nodiscard]] std::int64_t cutoff() const { return static_cast<std::int64_t>(layers_.size()) - 1; }
    [[nodiscard]] const FormalCharacter& layer(std::int64_t n) const { return layers_.at(static_cast<std::size_t>(n)); }
    FormalCharacter& layer(std::int64_t n) { return layers_.at(static_cast<std::size_t>(n)); }
    [[nodiscard]] const std::vector<FormalCharacter>& layers() const { return layers_; }

    void add(std::int64_t n, const Weight& w, std::int64_t c) {
        if (n < 0 || n > cutoff()) return;
        layer(n).add(w, c);
    }
    [[nodiscard]] std::int64_t multiplicity(const Weight& w, std::int64_t n) const {
        return n < 0 || n > cutoff() ? 0 : layer(n).at(w);
    }

    friend bool operator==(const GradedCharacter& a, const GradedCharacter& b) { return a.layers_ == b.layers_; }
    friend bool operator!=(const GradedCharacter& a, const GradedCharacter& b) { return !(a == b); }

    /// Truncated product; the cutoff is the smaller of the two.
    friend GradedCharacter operator*(const GradedCharacter& a, const GradedCharacter& b) {
        const std::int64_t n = std::min(a.cutoff(), b.cutoff());
        GradedCharacter out(n);
        for (std::int64_t i = 0; i <= n; ++i) {
            if (a.layer(i).empty()) continue;
            for (std::int64_t j = 0; i + j <= n; ++j)
                if (!b.layer(j).empty()) out.layer(i + j) += a.layer(i) * b.layer(j);
        }
        return out;
    }

private:
    std::vector<FormalCharacter> layers_;
};

/// Per-target truncated series: coefficient of q^n for each highest weight.
class BranchingSeries {
public:
    BranchingSeries() = default;
    explicit BranchingSeries(std::int64_t cutoff) : cutoff_(cutoff) {}

    [[nodiscard]] std::int64_t cutoff() const { return cutoff_; }
    [[nodiscard]] const std::map<Weight, std::vector<std::int64_t>>& series() const { return series_; }

    void add(const Weight& nu, std::int64_t n, std::int64_t c) {
        if (c == 0 || n < 0 || n > cutoff_) return;
        auto& s = series_.try_emplace(nu, std::vector<std::int64_t>(static_cast<std::size_t>(cutoff_ + 1), 0))
                      .first->second;
        s[static_cast<std::size_t>(n)] += c;
        if (std::all_of(s.begin(), s.end(), [](std::int64_t x) { return x == 0; })) series_.erase(nu);
    }
    [[nodiscard]] std::int64_t at(const Weight& nu, std::int64_t n) const {
        auto it = series_.find(nu);
        if (it == series_.end() || n < 0 || n > cutoff_) return 0;
        return it->second[static_cast<std::size_t>(n)];
    }
    [[nodiscard]] std::vector<std::int64_t> of(const Weight& nu) const {
        auto it = series_.find(nu);
        return it == series_.end() ? std::vector<std::int64_t>(static_cast<std::size_t>(cutoff_ + 1), 0) : it->second;
    }
    [[nodiscard]] bool nonnegative() const {
        for (const auto& [nu, s] : series_)
            for (auto c : s)
                if (c < 0) return false;
        return true;
    }

    friend bool operator==(const BranchingSeries& a, const BranchingSeries& b) {
        return a.cutoff_ == b.cutoff_ && a.series_ == b.series_;
    }
    friend bool operator!=(const BranchingSeries& a, const BranchingSeries& b) { return !(a == b); }

private:
    std::int64_t cutoff_ = 0;
    std::map<Weight, std::vector<std::int64_t>> series_;
};

namespace detail {

inline std::size_t factor_of(const RootSystem& rs, std::size_t simple_index) {
    for (std::size_t f = 0; f < rs.factors().size(); ++f)
        for (auto i : rs.factors()[f].simple_indices)
            if (i == simple_index) return f;
    throw ConsistencyError("simple root without factor");
}

inline Weight coroot(const RootSystem& rs, std::size_t i) {
    return (Rational(2) / rs.norm2(rs.simple_roots()[i])) * rs.simple_roots()[i];
}

}  // namespace detail

/// Enumerates xi in (coroot lattice + sum_f lambda_f / k_f) with
/// Q(xi) = sum_f k_f |xi_f|^2 / 2 <= bound, calling f(xi, Q(xi), sum_f k_f xi_f).
/// `levels` holds one positive level per simple factor; lambda must lie in the
/// span of the roots.
template <class F>
void for_each_theta_point(const RootSystem& rs, const Weight& lambda, const std::vector<std::int64_t>& levels,
                          const Rational& bound, F&& f) {
    const std::size_t r = rs.rank();
    if (levels.size() != rs.factors().size()) throw InvalidInput("need one level per simple factor of " + rs.name());
    for (auto k : levels)
        if (k < 1) throw InvalidInput("theta level must be positive");
    std::vector<std::int64_t> lv(r);
    std::vector<Weight> cor(r);
    for (std::size_t i = 0; i < r; ++i) {
        lv[i] = levels[detail::factor_of(rs, i)];
        cor[i] = detail::coroot(rs, i);
    }
    // lambda' = sum_i (m_i / k_i) omega_i, written in the coroot basis
    const auto labels = rs.dynkin_labels(lambda);
    Weight shift(rs.dimension());
    for (std::size_t i = 0; i < r; ++i) shift += (labels[i] / Rational(lv[i])) * rs.fundamental_weights()[i];
    const auto root_coords = rs.simple_root_coordinates(shift);
    std::vector<Rational> c0(r);
    for (std::size_t i = 0; i < r; ++i) c0[i] = -root_coords[i] * rs.norm2(rs.simple_roots()[i]) / 2;
    RationalMatrix G(r, std::vector<Rational>(r, Rational(0)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            if (detail::factor_of(rs, i) == detail::factor_of(rs, j))
                G[i][j] = Rational(lv[i], 2) * rs.inner(cor[i], cor[j]);
    for_each_in_ellipsoid(G, c0, bound, [&](const std::vector<std::int64_t>& c) {
        Weight xi = shift;
        Weight scaled(rs.dimension());
        for (std::size_t i = 0; i < r; ++i)
            if (c[i] != 0) xi += Rational(c[i]) * cor[i];
        Rational q(0);
        for (std::size_t fi = 0; fi < rs.factors().size(); ++fi) {
            Weight part(rs.dimension());
            for (auto i : rs.factors()[fi].simple_indices)
                part += (labels[i] / Rational(lv[i])) * rs.fundamental_weights()[i] + Rational(c[i]) * cor[i];
            q += Rational(levels[fi], 2) * rs.norm2(part);
            scaled += Rational(levels[fi]) * part;
        }
        f(xi, q, scaled);
    });
}

namespace detail {

inline void require_affine_highest_weight(const RootSystem& rs, const AffineWeight& mu, std::int64_t cutoff) {
    if (!rs.is_simple()) throw InvalidInput("affine extension needs a simple algebra, got " + rs.name());
    require_dominant_integral(rs, mu.finite, "affine highest weight");
    if (mu.level < 0) throw InvalidInput("level must be nonnegative");
    if (mu.grade != 0) throw InvalidInput("highest weight must sit at grade 0");
    if (cutoff < 0) throw InvalidInput("grade cutoff must be nonnegative");
    const Rational theta_pairing = rs.inner(mu.finite, rs.highest_roots().front());
    if (theta_pairing > mu.level)
        throw InvalidInput("weight " + mu.finite.str() + " exceeds level " + std::to_string(mu.level) +
                           " ((mu, theta) = " + to_string(theta_pairing) + ")");
}

/// Regular dominant points v of the shifted lattice rho+mu + K*M with grade
/// (|v|^2 - |mu+rho|^2) / 2K <= cutoff, reported as (grade, dominant rep).
template <class F>
void for_each_numerator_point(const RootSystem& rs, const Weight& mu, std::int64_t level, std::int64_t cutoff, F&& f) {
    const std::int64_t K = level + rs.dual_coxeter_number();
    const Weight lambda = mu + rs.rho();
    const Rational base = rs.norm2(lambda) / (2 * K);
    for_each_theta_point(rs, lambda, {K}, base + Rational(cutoff), [&](const Weight&, const Rational& q, const Weight& v) {
        const Rational g = q - base;
        if (!is_integer(g)) throw ConsistencyError("non-integral grade " + to_string(g) + " in affine numerator");
        const DominantRep d = dominant_representative(rs, v);
        if (d.regular) f(g.numerator(), d);
    });
}

}  // namespace detail

/// Truncated affine singular element sum_{w in affine W} eps(w) e^{w(mu^+rho^)-rho^}
/// at level k; with mu = 0, k = 0 this is the affine Weyl denominator.
inline GradedCharacter affine_numerator(const RootSystem& rs, const Weight& mu, std::int64_t level, std::int64_t cutoff) {
    if (!rs.is_simple()) throw InvalidInput("affine extension needs a simple algebra, got " + rs.name());
    if (cutoff < 0) throw InvalidInput("grade cutoff must be nonnegative");
    GradedCharacter out(cutoff);
    detail::for_each_numerator_point(rs, mu, level, cutoff, [&](std::int64_t g, const DominantRep& d) {
        for (const auto& [x, s] : weyl_orbit(rs, d.weight)) out.add(g, x - rs.rho(), d.sign * s);
    });
    return out;
}

/// prod_{n=1..cutoff} (1-q^n)^rank prod_{alpha in Delta} (1 - q^n e^alpha), truncated.
inline GradedCharacter affine_denominator_tail(const RootSystem& rs, std::int64_t cutoff) {
    GradedCharacter out(cutoff);
    out.add(0, Weight(rs.dimension()), 1);
    auto times = [&](std::int64_t n, const Weight& w) {
        for (std::int64_t g = cutoff; g >= n; --g) out.layer(g) -= out.layer(g - n).shifted(w);
    };
    const Weight zero(rs.dimension());
    for (std::int64_t n = 1; n <= cutoff; ++n) {
        for (std::size_t i = 0; i < rs.rank(); ++i) times(n, zero);
        for (const auto& a : rs.all_roots()) times(n, a);
    }
    return out;
}

/// Weight multiplicities of L(mu^) for grades 0..cutoff (Weyl-Kac formula).
inline GradedCharacter affine_character(const RootSystem& rs, const AffineWeight& mu, std::int64_t cutoff) {
    detail::require_affine_highest_weight(rs, mu, cutoff);
    // numerator / (finite denominator): alternating sums of finite characters
    GradedCharacter num(cutoff);
    detail::for_each_numerator_point(rs, mu.finite, mu.level, cutoff, [&](std::int64_t g, const DominantRep& d) {
        const FormalCharacter ch = freudenthal_character(rs, d.weight - rs.rho());
        num.layer(g) += d.sign * ch;
    });
    // divide by the grade >= 1 part of the denominator, layer by layer
    const GradedCharacter tail = affine_denominator_tail(rs, cutoff);
    GradedCharacter out(cutoff);
    for (std::int64_t n = 0; n <= cutoff; ++n) {
        FormalCharacter x = num.layer(n);
        for (std::int64_t m = 1; m <= n; ++m)
            if (!tail.layer(m).empty()) x -= tail.layer(m) * out.layer(n - m);
        for (const auto& [w, c] : x.terms())
            if (c < 0)
                throw ConsistencyError("negative multiplicity " + std::to_string(c) + " at " + w.str() + ", grade " +
                                       std::to_string(n));
        out.layer(n) = std::move(x);
    }
    if (out.layer(0).at(mu.finite) != 1) throw ConsistencyError("highest weight multiplicity is not 1");
    return out;
}

/// Decomposes each grade layer of L(mu^) into irreducible g-modules.
inline BranchingSeries graded_branch_to_g(const RootSystem& rs, const GradedCharacter& ch) {
    BranchingSeries out(ch.cutoff());
    for (std::int64_t n = 0; n <= ch.cutoff(); ++n) {
        const BranchingTable t = decompose(ch.layer(n), rs);
        for (const auto& [nu, b] : t.terms()) out.add(nu, n, b);
    }
    return out;
}

inline BranchingSeries graded_branch_to_g(const RootSystem& rs, const AffineWeight& mu, std::int64_t cutoff) {
    return graded_branch_to_g(rs, affine_character(rs, mu, cutoff));
}

/// sigma(n) = multiplicity of (nu, k, n), n = 0..cutoff.
inline std::vector<std::int64_t> string_function(const GradedCharacter& ch, const Weight& nu) {
    std::vector<std::int64_t> s;
    for (std::int64_t n = 0; n <= ch.cutoff(); ++n) s.push_back(ch.multiplicity(nu, n));
    return s;
}

inline std::vector<std::int64_t> string_function(const RootSystem& rs, const AffineWeight& mu, const Weight& nu,
                                                 std::int64_t cutoff) {
    return string_function(affine_character(rs, mu, cutoff), nu);
}

/// Rows and columns indexed by dominant weights sorted by (rho, xi) then Dynkin
/// labels; entries[row][col] = multiplicity of basis[row] in L(basis[col]).
/// Nonzero entries satisfy row <= col.
struct MultiplicityMatrix {
    std::vector<Weight> basis;
    IntMatrix entries;

    [[nodiscard]] std::size_t size() const { return basis.size(); }
    [[nodiscard]] std::optional<std::size_t> index_of(const Weight& w) const {
        auto it = std::find(basis.begin(), basis.end(), w);
        if (it == basis.end()) return std::nullopt;
        return static_cast<std::size_t>(it - basis.begin());
    }
};

inline MultiplicityMatrix multiplicity_matrix(const RootSystem& rs, const Rational& bound) {
    MultiplicityMatrix m;
    m.basis = dominant_weights_up_to(rs, bound);
    const std::size_t n = m.basis.size();
    m.entries.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t c = 0; c < n; ++c) {
        const FormalCharacter ch = freudenthal_character(rs, m.basis[c]);
        for (std::size_t r = 0; r < n; ++r) m.entries[r][c] = ch.at(m.basis[r]);
    }
    return m;
}

/// Exact inverse of a unitriangular integer matrix (ones on the diagonal,
/// zeros below it).
inline IntMatrix invert_multiplicity_matrix(const IntMatrix& m) {
    const std::size_t n = m.size();
    for (std::size_t r = 0; r < n; ++r) {
        if (m[r].size() != n) throw InvalidInput("matrix is not square");
        if (m[r][r] != 1) throw InvalidInput("diagonal entry " + std::to_string(r) + " is not 1");
        for (std::size_t c = 0; c < r; ++c)
            if (m[r][c] != 0) throw InvalidInput("matrix is not unitriangular");
    }
    IntMatrix inv(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t c = 0; c < n; ++c) {
        inv[c][c] = 1;
        for (std::size_t r = c; r-- > 0;) {
            std::int64_t s = 0;
            for (std::size_t j = r + 1; j <= c; ++j) s += m[r][j] * inv[j][c];
            inv[r][c] = -s;
        }
    }
    return inv;
}

inline IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    const std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b.front().size();
    IntMatrix out(n, std::vector<std::int64_t>(p, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            if (a[i][j] != 0)
                for (std::size_t l = 0; l < p; ++l) out[i][l] += a[i][j] * b[j][l];
    return out;
}

/// Everything needed to check sigma = M b and b = M^{-1} sigma for one module.
struct MatrixRelation {
    MultiplicityMatrix matrix;
    IntMatrix inverse;
    IntMatrix sigma;           // [basis index][grade]
    IntMatrix b;               // graded decomposition, [basis index][grade]
    IntMatrix b_from_sigma;    // inverse * sigma
    bool sigma_matches = false;
    bool inverse_ok = false;
    bool b_matches = false;

    [[nodiscard]] bool consistent() const { return sigma_matches && inverse_ok && b_matches; }
};

inline MatrixRelation matrix_relation(const RootSystem& rs, const GradedCharacter& ch) {
    const std::int64_t cutoff = ch.cutoff();
    const BranchingSeries br = graded_branch_to_g(rs, ch);
    Rational bound(0);
    for (const auto& [nu, s] : br.series()) bound = std::max(bound, rs.inner(rs.rho(), nu));
    MatrixRelation out;
    out.matrix = multiplicity_matrix(rs, bound);
    const std::size_t n = out.matrix.size();
    const auto cols = static_cast<std::size_t>(cutoff + 1);
    out.sigma.assign(n, std::vector<std::int64_t>(cols, 0));
    out.b.assign(n, std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < n; ++i) {
        out.sigma[i] = string_function(ch, out.matrix.basis[i]);
        out.b[i] = br.of(out.matrix.basis[i]);
    }
    out.inverse = invert_multiplicity_matrix(out.matrix.entries);
    out.sigma_matches = multiply(out.matrix.entries, out.b) == out.sigma;
    IntMatrix id(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) id[i][i] = 1;
    out.inverse_ok = multiply(out.inverse, out.matrix.entries) == id;
    out.b_from_sigma = multiply(out.inverse, out.sigma);
    out.b_matches = out.b_from_sigma == out.b;
    return out;
}

inline MatrixRelation matrix_relation(const RootSystem& rs, const AffineWeight& mu, std::int64_t cutoff) {
    return matrix_relation(rs, affine_character(rs, mu, cutoff));
}

/// Graded dimension: coefficient n is sum_nu b(n) dim L(nu).
inline std::vector<std::int64_t> q_dimension(const RootSystem& rs, const BranchingSeries& br) {
    std::vector<std::int64_t> d(static_cast<std::size_t>(br.cutoff() + 1), 0);
    for (const auto& [nu, s] : br.series()) {
        const std::int64_t dim = weyl_dimension(rs, nu);
        for (std::size_t n = 0; n < s.size(); ++n) d[n] += s[n] * dim;
    }
    return d;
}

inline std::vector<std::int64_t> q_dimension(const RootSystem& rs, const AffineWeight& mu, std::int64_t cutoff) {
    return q_dimension(rs, graded_branch_to_g(rs, mu, cutoff));
}

struct SubalgebraBranching {
    BranchingSeries composed;  // through the stem multiplicities
    BranchingSeries direct;    // layer-wise subtraction of subalgebra characters
    [[nodiscard]] bool match() const { return composed == direct; }
};

/// Branching of L(mu^) to the subalgebra of a splint, by both routes.
inline SubalgebraBranching branch_affine_to_subalgebra(const Splint& s, const GradedCharacter& ch) {
    const RootSystem& rs = s.ambient;
    const std::int64_t cutoff = ch.cutoff();
    const RootSubsystem sub = subalgebra_of(s);
    SubalgebraBranching out{BranchingSeries(cutoff), BranchingSeries(cutoff)};
    for (std::int64_t n = 0; n <= cutoff; ++n) {
        const BranchingTable to_g = decompose(ch.layer(n), rs);
        for (const auto& [nu, b] : to_g.terms()) {
            const BranchingTable t = branch_via_splint(s, nu);
            for (const auto& [xi, c] : t.terms()) out.composed.add(xi, n, b * c);
        }
        const BranchingTable to_a = decompose(ch.layer(n), sub.realized);
        for (const auto& [xi, c] : to_a.terms()) out.direct.add(xi, n, c);
    }
    return out;
}

inline SubalgebraBranching branch_affine_to_subalgebra(const Splint& s, const AffineWeight& mu, std::int64_t cutoff) {
    return branch_affine_to_subalgebra(s, affine_character(s.ambient, mu, cutoff));
}

}  // namespace splinter
