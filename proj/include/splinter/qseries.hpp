#pragma once

// Truncated q-series with rational exponents, eta and theta functions, and
// exact checks of the affine denominator regrouping and the theta relations
// it induces.

#include "splinter/affine.hpp"

namespace splinter {

namespace detail {

inline bool coef_is_zero(const Rational& c) { return c == 0; }
inline bool coef_is_zero(const FormalCharacter& c) { return c.empty(); }
inline std::string coef_str(const Rational& c) { return to_string(c); }
inline std::string coef_str(const FormalCharacter& c) { return c.str(); }

inline std::int64_t lcm_denominator(std::int64_t a, const Rational& r) { return std::lcm(a, r.denominator()); }

}  // namespace detail

/// Series sum_e c_e q^e known exactly for all exponents e <= cutoff. The
/// coefficient ring C is Rational (scalar series) or FormalCharacter
/// (lattice sums; z is kept formal).
template <class C>
class QSeries {
public:
    using Map = std::map<Rational, C>;

    QSeries() = default;
    explicit QSeries(Rational cutoff) : cutoff_(cutoff) {}

    static QSeries monomial(const Rational& e, C c, const Rational& cutoff) {
        QSeries s(cutoff);
        s.add(e, std::move(c));
        return s;
    }

    void add(const Rational& e, const C& c) {
        if (e > cutoff_ || detail::coef_is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (detail::coef_is_zero(it->second)) terms_.erase(it);
        }
    }

    [[nodiscard]] const Rational& cutoff() const { return cutoff_; }
    [[nodiscard]] const Map& terms() const { return terms_; }
    [[nodiscard]] bool empty() const { return terms_.empty(); }
    [[nodiscard]] std::optional<Rational> valuation() const {
        if (terms_.empty()) return std::nullopt;
        return terms_.begin()->first;
    }
    [[nodiscard]] C at(const Rational& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? C{} : it->second;
    }
    /// Smallest d with every exponent (and the cutoff) in (1/d) Z.
    [[nodiscard]] std::int64_t exponent_denominator() const {
        std::int64_t d = cutoff_.denominator();
        for (const auto& [e, c] : terms_) d = detail::lcm_denominator(d, e);
        return d;
    }

    [[nodiscard]] QSeries truncated(const Rational& n) const {
        QSeries out(std::min(n, cutoff_));
        for (const auto& [e, c] : terms_)
            if (e <= out.cutoff_) out.terms_.emplace_hint(out.terms_.end(), e, c);
        return out;
    }
    /// Multiplication by q^s (the cutoff moves with the terms).
    [[nodiscard]] QSeries shifted(const Rational& s) const {
        QSeries out(cutoff_ + s);
        for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + s, c);
        return out;
    }
    template <class F>
    [[nodiscard]] QSeries mapped_coefficients(F&& f) const {
        QSeries out(cutoff_);
        for (const auto& [e, c] : terms_) out.add(e, f(c));
        return out;
    }

    QSeries& operator+=(const QSeries& o) {
        const Rational n = std::min(cutoff_, o.cutoff_);
        *this = truncated(n);
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    QSeries& operator-=(const QSeries& o) {
        const Rational n = std::min(cutoff_, o.cutoff_);
        *this = truncated(n);
        for (const auto& [e, c] : o.terms_) add(e, -1 * c);
        return *this;
    }
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }

    /// Truncated product. Known range: min(N_a + min(v_b, 0), N_b + min(v_a, 0)),
    /// i.e. the smaller cutoff when no negative powers of q occur.
    friend QSeries operator*(const QSeries& a, const QSeries& b) {
        const Rational va = a.valuation().value_or(Rational(0)), vb = b.valuation().value_or(Rational(0));
        const Rational n = std::min(a.cutoff_ + std::min(vb, Rational(0)), b.cutoff_ + std::min(va, Rational(0)));
        QSeries out(n);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                if (ea + eb > n) break;
                out.add(ea + eb, ca * cb);
            }
        return out;
    }

    [[nodiscard]] QSeries pow(std::uint64_t k, const C& one) const {
        QSeries out = monomial(Rational(0), one, cutoff_);
        for (std::uint64_t i = 0; i < k; ++i) out = out * *this;
        return out;
    }

    friend bool operator==(const QSeries& a, const QSeries& b) { return a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_; }
    friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

    [[nodiscard]] std::string str() const {
        std::string s;
        for (const auto& [e, c] : terms_) s += (s.empty() ? "" : " + ") + ("[" + detail::coef_str(c) + "] q^" + to_string(e));
        return (s.empty() ? std::string("0") : s) + " + O(q^>" + to_string(cutoff_) + ")";
    }

private:
    Rational cutoff_{0};
    Map terms_;
};

using ScalarSeries = QSeries<Rational>;
using LatticeSeries = QSeries<FormalCharacter>;

/// Scalar series as a lattice series supported at the zero weight.
inline LatticeSeries lift(const ScalarSeries& s, std::size_t dimension) {
    LatticeSeries out(s.cutoff());
    for (const auto& [e, c] : s.terms()) {
        if (!is_integer(c)) throw InvalidInput("lift: non-integral coefficient " + to_string(c));
        out.add(e, FormalCharacter::monomial(Weight(dimension), c.numerator()));
    }
    return out;
}

/// Applies a linear map to every weight of every coefficient.
template <class F>
LatticeSeries map_weights(const LatticeSeries& s, F&& f) {
    return s.mapped_coefficients([&](const FormalCharacter& c) { return c.mapped(f); });
}

/// prod_{n>=1} (1 - q^n)^k truncated at `cutoff` (k may be zero).
inline ScalarSeries euler_power(std::int64_t k, const Rational& cutoff) {
    if (k < 0) throw InvalidInput("euler_power: negative exponent");
    const auto top = static_cast<std::int64_t>(std::floor(boost::rational_cast<double>(cutoff)));
    std::vector<std::int64_t> p(static_cast<std::size_t>(std::max<std::int64_t>(top, 0) + 1), 0);
    p[0] = 1;
    for (std::int64_t n = 1; n <= top; ++n)
        for (std::int64_t rep = 0; rep < k; ++rep)
            for (std::int64_t g = top; g >= n; --g) p[static_cast<std::size_t>(g)] -= p[static_cast<std::size_t>(g - n)];
    ScalarSeries out(cutoff);
    for (std::size_t g = 0; g < p.size(); ++g)
        if (Rational(static_cast<std::int64_t>(g)) <= cutoff) out.add(Rational(static_cast<std::int64_t>(g)), Rational(p[g]));
    return out;
}

/// eta^k = q^{k/24} prod (1 - q^n)^k, exact for exponents <= cutoff.
inline ScalarSeries eta_power(std::int64_t k, const Rational& cutoff) {
    const Rational lead(k, 24);
    return euler_power(k, cutoff - lead).shifted(lead);
}

inline ScalarSeries eta(const Rational& cutoff) { return eta_power(1, cutoff); }

/// sum over xi in M + lambda/k of q^{k|xi|^2/2} e^{k xi} with exponent <= cutoff
/// (M the coroot lattice). Semisimple systems take one level per factor.
inline LatticeSeries theta(const RootSystem& rs, const Weight& lambda, const std::vector<std::int64_t>& levels,
                           const Rational& cutoff) {
    if (!rs.is_integral(lambda)) throw InvalidInput("theta: weight " + lambda.str() + " is not integral");
    LatticeSeries out(cutoff);
    for_each_theta_point(rs, lambda, levels, cutoff, [&](const Weight&, const Rational& q, const Weight& kxi) {
        out.add(q, FormalCharacter::monomial(kxi));
    });
    return out;
}

inline LatticeSeries theta(const RootSystem& rs, const Weight& lambda, std::int64_t level, const Rational& cutoff) {
    return theta(rs, lambda, std::vector<std::int64_t>(rs.factors().size(), level), cutoff);
}

/// prod_{alpha in roots} (1 - e^{-alpha}) prod_{n>=1} (1 - q^n)^rank (1 - q^n e^{-alpha})(1 - q^n e^{alpha}),
/// for an explicit list of positive roots in a space of the given dimension.
inline LatticeSeries affine_root_product(const std::vector<Weight>& positive, std::size_t rank, std::size_t dimension,
                                         std::int64_t cutoff) {
    const Rational N(cutoff);
    const Weight zero(dimension);
    LatticeSeries p = LatticeSeries::monomial(Rational(0), FormalCharacter::monomial(zero), N);
    auto times = [&](std::int64_t n, const Weight& w) {
        p -= p * LatticeSeries::monomial(Rational(n), FormalCharacter::monomial(w), N);
    };
    for (const auto& a : positive) times(0, -a);
    for (std::int64_t n = 1; n <= cutoff; ++n) {
        for (std::size_t i = 0; i < rank; ++i) times(n, zero);
        for (const auto& a : positive) {
            times(n, -a);
            times(n, a);
        }
    }
    return p;
}

inline LatticeSeries denominator_product(const RootSystem& rs, std::int64_t cutoff) {
    return affine_root_product(rs.positive_roots(), rs.rank(), rs.dimension(), cutoff);
}

struct Discrepancy {
    Rational exponent;   // relative to the common lowest order
    Weight weight;
    std::int64_t lhs = 0;
    std::int64_t rhs = 0;
};

struct IdentityReport {
    std::string identity;
    bool pass = false;
    Rational checked_to;               // relative grade compared
    Rational normalization{0};         // q-shift applied to the right side
    std::optional<Discrepancy> first;  // lowest mismatching term
    std::vector<std::string> notes;
};

namespace detail {

/// Compares two lattice series on all exponents up to the common cutoff.
inline std::optional<Discrepancy> first_difference(const LatticeSeries& a, const LatticeSeries& b,
                                                   const Rational& origin) {
    const Rational n = std::min(a.cutoff(), b.cutoff());
    std::set<Rational> exps;
    for (const auto& [e, c] : a.terms())
        if (e <= n) exps.insert(e);
    for (const auto& [e, c] : b.terms())
        if (e <= n) exps.insert(e);
    for (const auto& e : exps) {
        const FormalCharacter ca = a.at(e), cb = b.at(e);
        if (ca == cb) continue;
        std::set<Weight> ws;
        for (const auto& [w, c] : ca.terms()) ws.insert(w);
        for (const auto& [w, c] : cb.terms()) ws.insert(w);
        for (const auto& w : ws)
            if (ca.at(w) != cb.at(w)) return Discrepancy{e - origin, w, ca.at(w), cb.at(w)};
    }
    return std::nullopt;
}

/// Shifts rhs so both sides start at the same power of q, then compares.
inline void compare_normalized(IdentityReport& rep, const LatticeSeries& lhs, const LatticeSeries& rhs) {
    const auto vl = lhs.valuation(), vr = rhs.valuation();
    if (!vl || !vr) {
        rep.pass = !vl && !vr;
        if (!rep.pass) rep.notes.push_back("one side vanishes identically");
        return;
    }
    rep.normalization = *vl - *vr;
    const LatticeSeries r = rhs.shifted(rep.normalization);
    rep.checked_to = std::min(lhs.cutoff(), r.cutoff()) - *vl;
    rep.first = first_difference(lhs, r, *vl);
    rep.pass = !rep.first;
}

inline void require_splint_shape(const Splint& s) {
    if (s.phi1.images().empty() || s.phi2.images().empty())
        throw InvalidInput("splint " + s.qualified_name() + " has an empty stem");
    if (s.phi1.target().dimension() != s.ambient.dimension() || s.phi2.target().dimension() != s.ambient.dimension())
        throw InvalidInput("splint stems do not map into the ambient space of " + s.ambient.name());
}

inline std::int64_t eta_excess(const Splint& s) {
    return static_cast<std::int64_t>(s.phi1.source().rank() + s.phi2.source().rank()) -
           static_cast<std::int64_t>(s.ambient.rank());
}

/// sum_{w in W} eps(w) Theta_{w rho, h} with h the dual Coxeter number of
/// each factor, mapped through f into the target space.
template <class F>
LatticeSeries alternating_theta(const RootSystem& rs, const Rational& cutoff, std::optional<std::size_t> drop, F&& f) {
    LatticeSeries out(cutoff);
    const auto orbit = weyl_orbit(rs, rs.rho());
    for (std::size_t i = 0; i < orbit.size(); ++i) {
        if (drop && *drop == i) continue;
        const LatticeSeries t = theta(rs, orbit[i].weight, rs.dual_coxeter(), cutoff);
        for (const auto& [e, c] : t.terms()) out.add(e, orbit[i].sign * c.mapped(f));
    }
    return out;
}

/// Lowest exponent of the alternating theta sum: sum_f |rho_f|^2 / (2 h_f).
inline Rational alternating_theta_valuation(const RootSystem& rs) {
    Rational v(0);
    for (std::size_t f = 0; f < rs.factors().size(); ++f) {
        Weight rho_f(rs.dimension());
        for (auto i : rs.factors()[f].simple_indices) rho_f += rs.fundamental_weights()[i];
        v += rs.norm2(rho_f) / (2 * rs.dual_coxeter()[f]);
    }
    return v;
}

/// Theta_{rho,2} - Theta_{-rho,2} of A1, with the A1 root sent to gamma.
inline LatticeSeries a1_denominator_theta(const Weight& gamma, const Rational& cutoff) {
    static const RootSystem a1 = build_root_system("A1");
    const Weight& rho = a1.rho();
    LatticeSeries t = theta(a1, rho, 2, cutoff) - theta(a1, -rho, 2, cutoff);
    return map_weights(t, [&](const Weight& w) { return a1.simple_root_coordinates(w)[0] * gamma; });
}

}  // namespace detail

/// Affine denominator of the ambient algebra regrouped along the splint:
/// both stems affinized (imaginary multiplicities rank a and rank s) against
/// the ambient denominator times prod (1-q^n)^{rank a + rank s - rank g}.
inline IdentityReport verify_denominator_splint(const Splint& s, std::int64_t cutoff) {
    detail::require_splint_shape(s);
    IdentityReport rep;
    rep.identity = "denominator";
    const std::size_t dim = s.ambient.dimension();
    LatticeSeries lhs = affine_root_product(s.phi1.images(), s.phi1.source().rank(), dim, cutoff) *
                        affine_root_product(s.phi2.images(), s.phi2.source().rank(), dim, cutoff);
    LatticeSeries rhs = denominator_product(s.ambient, cutoff);
    const std::int64_t excess = detail::eta_excess(s);
    const LatticeSeries extra = lift(euler_power(std::abs(excess), Rational(cutoff)), dim);
    if (excess >= 0)
        rhs = rhs * extra;
    else
        lhs = lhs * extra;
    rep.notes.push_back("imaginary-root excess " + std::to_string(excess));
    rep.checked_to = Rational(cutoff);
    rep.first = detail::first_difference(lhs, rhs, Rational(0));
    rep.pass = !rep.first;
    return rep;
}

/// Per-root theta form of the denominator regrouping:
///   eta^{dim a} prod_{Delta1+} T/eta * eta^{dim s} prod_{Delta2+} T/eta
///     = eta^{rank a + rank s - rank g} eta^{dim g} prod_{Delta+} T/eta,
/// with T_gamma the A1 level-2 alternating theta sum along gamma. The eta
/// divisions are cleared before expanding, so only nonnegative powers occur.
inline IdentityReport verify_theta_eq5(const Splint& s, std::int64_t cutoff) {
    detail::require_splint_shape(s);
    IdentityReport rep;
    rep.identity = "eq5";
    const std::size_t dim = s.ambient.dimension();
    const auto n1 = static_cast<std::int64_t>(s.phi1.images().size());
    const auto n2 = static_cast<std::int64_t>(s.phi2.images().size());
    const auto ng = static_cast<std::int64_t>(s.ambient.positive_roots().size());
    const auto da = static_cast<std::int64_t>(s.phi1.source().algebra_dimension());
    const auto ds = static_cast<std::int64_t>(s.phi2.source().algebra_dimension());
    const auto dg = static_cast<std::int64_t>(s.ambient.algebra_dimension());
    const std::int64_t eta_l = (da - n1) + (ds - n2);
    const std::int64_t eta_r = detail::eta_excess(s) + dg - ng;
    if (eta_r < 0) throw InvalidInput("eq5: negative eta power on the right side");
    const Rational t_lead(1, 8);
    const Rational lead_l = Rational(eta_l, 24) + Rational(n1 + n2) * t_lead;
    const Rational lead_r = Rational(eta_r, 24) + Rational(ng) * t_lead;
    const Rational top_l = lead_l + cutoff, top_r = lead_r + cutoff;

    LatticeSeries lhs = lift(eta_power(eta_l, top_l), dim);
    for (const auto& a : s.phi1.images()) lhs = lhs * detail::a1_denominator_theta(a, top_l);
    for (const auto& b : s.phi2.images()) lhs = lhs * detail::a1_denominator_theta(b, top_l);
    LatticeSeries rhs = lift(eta_power(eta_r, top_r), dim);
    for (const auto& g : s.ambient.positive_roots()) rhs = rhs * detail::a1_denominator_theta(g, top_r);
    rep.notes.push_back("eta powers " + std::to_string(eta_l) + " | " + std::to_string(eta_r));
    detail::compare_normalized(rep, lhs, rhs);
    return rep;
}

struct Eq6Options {
    /// Multiply the ambient side by eta^{rank a + rank s - rank g}, the factor
    /// carried over from the denominator regrouping. Off: the bare relation.
    bool eta_factor = true;
    /// Negative control: omit this term of the ambient alternating sum.
    std::optional<std::size_t> drop_ambient_term;
};

/// Product of the alternating theta sums of both stems (each at its dual
/// Coxeter level, mapped through its embedding) against the ambient one.
inline IdentityReport verify_theta_eq6(const Splint& s, std::int64_t cutoff, const Eq6Options& opt = {}) {
    detail::require_splint_shape(s);
    IdentityReport rep;
    rep.identity = opt.eta_factor ? "eq6" : "eq6-bare";
    const std::size_t dim = s.ambient.dimension();
    const RootSystem& A = s.phi1.source();
    const RootSystem& S = s.phi2.source();
    const Rational va = detail::alternating_theta_valuation(A), vs = detail::alternating_theta_valuation(S);
    const Rational vg = detail::alternating_theta_valuation(s.ambient);
    const std::int64_t excess = detail::eta_excess(s);
    const Rational top_l = va + vs + cutoff;
    const Rational top_r = vg + (opt.eta_factor ? Rational(excess, 24) : Rational(0)) + cutoff;

    const LatticeSeries ta = detail::alternating_theta(A, top_l, std::nullopt, [&](const Weight& w) { return s.phi1.apply(w); });
    const LatticeSeries ts = detail::alternating_theta(S, top_l, std::nullopt, [&](const Weight& w) { return s.phi2.apply(w); });
    LatticeSeries lhs = ta * ts;
    LatticeSeries rhs =
        detail::alternating_theta(s.ambient, top_r, opt.drop_ambient_term, [](const Weight& w) { return w; });
    if (opt.eta_factor) {
        if (excess < 0) throw InvalidInput("eq6: stems have smaller total rank than the ambient algebra");
        rhs = rhs * lift(eta_power(excess, top_r), dim);
    }
    rep.notes.push_back("theta levels " + join_ints(A.dual_coxeter()) + " | " + join_ints(S.dual_coxeter()) + " | " +
                        join_ints(s.ambient.dual_coxeter()));
    if (opt.eta_factor) rep.notes.push_back("ambient side times eta^" + std::to_string(excess));
    detail::compare_normalized(rep, lhs, rhs);
    return rep;
}

}  // namespace splinter
