#pragma once

// Root systems of simple and semisimple Lie algebras in Bourbaki orthogonal
// coordinates, their Weyl group action, and closed root subsystems.
//
// Realization per simple family (e_i the standard basis, form = scale * dot):
//   A_n  R^{n+1}  a_i = e_i - e_{i+1}                                 scale 1
//   B_n  R^n      a_i = e_i - e_{i+1} (i<n), a_n = e_n                 scale 1
//   C_n  R^n      a_i = e_i - e_{i+1} (i<n), a_n = 2 e_n               scale 1/2
//   D_n  R^n      a_i = e_i - e_{i+1} (i<n), a_n = e_{n-1} + e_n       scale 1
//   E_n  R^8      a_1 = (e1+e8-e2-...-e7)/2, a_2 = e1+e2,
//                 a_k = e_{k-1} - e_{k-2} (k>=3)                       scale 1
//   F_4  R^4      e2-e3, e3-e4, e4, (e1-e2-e3-e4)/2                    scale 1
//   G_2  R^3      a_1 = e1-e2 (short), a_2 = -2e1+e2+e3 (long)         scale 1/3
// The scale makes long roots have squared length 2. A semisimple system is the
// orthogonal direct sum of its factors (coordinates concatenated).

#include "splinter/weight.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <set>

namespace splinter {

enum class Family { A, B, C, D, E, F, G };

struct SimpleType {
    Family family = Family::A;
    int rank = 1;

    [[nodiscard]] std::string name() const {
        static constexpr char letters[] = "ABCDEFG";
        return std::string(1, letters[static_cast<int>(family)]) + std::to_string(rank);
    }
    friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

inline bool valid_type(const SimpleType& t) {
    switch (t.family) {
        case Family::A: return t.rank >= 1;
        case Family::B: return t.rank >= 2;
        case Family::C: return t.rank >= 2;
        case Family::D: return t.rank >= 3;
        case Family::E: return t.rank >= 6 && t.rank <= 8;
        case Family::F: return t.rank == 4;
        case Family::G: return t.rank == 2;
    }
    return false;
}

/// Parses "G2", "A1+A1", "A1xB2". Throws InvalidInput naming the bad piece.
inline std::vector<SimpleType> parse_algebra(const std::string& text) {
    std::vector<SimpleType> out;
    std::string piece;
    auto flush = [&] {
        if (piece.empty()) throw InvalidInput("empty factor in algebra '" + text + "'");
        const char f = static_cast<char>(std::toupper(static_cast<unsigned char>(piece[0])));
        if (f < 'A' || f > 'G') throw InvalidInput("unknown family '" + piece + "'");
        const std::string digits = piece.substr(1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw InvalidInput("bad rank in '" + piece + "'");
        SimpleType t{static_cast<Family>(f - 'A'), std::stoi(digits)};
        if (!valid_type(t)) throw InvalidInput("invalid simple type '" + piece + "'");
        out.push_back(t);
        piece.clear();
    };
    for (char c : text) {
        if (c == '+' || c == 'x' || c == '*') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            piece += c;
        }
    }
    flush();
    return out;
}

inline std::string algebra_name(const std::vector<SimpleType>& types) {
    std::string s;
    for (std::size_t i = 0; i < types.size(); ++i) s += (i ? "+" : "") + types[i].name();
    return s;
}

/// Standard Cartan matrix A_ij = 2(a_i,a_j)/(a_j,a_j) read off the Dynkin
/// diagram, Bourbaki numbering.
inline IntMatrix standard_cartan_matrix(const SimpleType& t) {
    const int n = t.rank;
    IntMatrix a(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < n; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    switch (t.family) {
        case Family::A:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            break;
        case Family::B:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 2][n - 1] = -2;
            break;
        case Family::C:
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            a[n - 1][n - 2] = -2;
            break;
        case Family::D:
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            break;
        case Family::E:
            link(0, 2);
            link(1, 3);
            for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
            break;
        case Family::F:
            link(0, 1);
            link(1, 2);
            link(2, 3);
            a[1][2] = -2;
            break;
        case Family::G:
            a[0][1] = -1;
            a[1][0] = -3;
            break;
    }
    return a;
}

inline std::uint64_t weyl_group_order(const SimpleType& t) {
    auto fact = [](int n) {
        std::uint64_t f = 1;
        for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
        return f;
    };
    switch (t.family) {
        case Family::A: return fact(t.rank + 1);
        case Family::B:
        case Family::C: return (std::uint64_t{1} << t.rank) * fact(t.rank);
        case Family::D: return (std::uint64_t{1} << (t.rank - 1)) * fact(t.rank);
        case Family::E: return t.rank == 6 ? 51840ULL : t.rank == 7 ? 2903040ULL : 696729600ULL;
        case Family::F: return 1152;
        case Family::G: return 12;
    }
    return 0;
}

/// Largest Weyl group the orbit routines will enumerate.
inline constexpr std::uint64_t kMaxWeylOrder = 51840;
inline constexpr int kMaxRank = 8;

namespace detail {

struct Realization {
    std::size_t dim = 0;
    Rational scale = 1;
    std::vector<Weight> simple_roots;
};

inline Realization bourbaki(const SimpleType& t) {
    const int n = t.rank;
    Realization r;
    auto unit = [](std::size_t dim, std::initializer_list<std::pair<std::size_t, Rational>> entries) {
        Weight w(dim);
        for (const auto& [i, v] : entries) w[i] += v;
        return w;
    };
    const Rational half(1, 2);
    switch (t.family) {
        case Family::A:
            r.dim = n + 1;
            for (int i = 0; i < n; ++i) r.simple_roots.push_back(unit(r.dim, {{i, 1}, {i + 1, -1}}));
            break;
        case Family::B:
        case Family::C:
        case Family::D:
            r.dim = n;
            for (int i = 0; i + 1 < n; ++i) r.simple_roots.push_back(unit(r.dim, {{i, 1}, {i + 1, -1}}));
            if (t.family == Family::B) r.simple_roots.push_back(unit(r.dim, {{n - 1, 1}}));
            if (t.family == Family::C) {
                r.simple_roots.push_back(unit(r.dim, {{n - 1, 2}}));
                r.scale = half;
            }
            if (t.family == Family::D) r.simple_roots.push_back(unit(r.dim, {{n - 2, 1}, {n - 1, 1}}));
            break;
        case Family::E: {
            r.dim = 8;
            Weight a1(8);
            for (std::size_t i = 0; i < 8; ++i) a1[i] = (i == 0 || i == 7) ? half : -half;
            r.simple_roots.push_back(a1);
            r.simple_roots.push_back(unit(8, {{0, 1}, {1, 1}}));
            for (int k = 3; k <= n; ++k)
                r.simple_roots.push_back(unit(8, {{static_cast<std::size_t>(k - 2), 1},
                                                  {static_cast<std::size_t>(k - 3), -1}}));
            break;
        }
        case Family::F:
            r.dim = 4;
            r.simple_roots = {unit(4, {{1, 1}, {2, -1}}), unit(4, {{2, 1}, {3, -1}}), unit(4, {{3, 1}}),
                              Weight{half, -half, -half, -half}};
            break;
        case Family::G:
            r.dim = 3;
            r.simple_roots = {unit(3, {{0, 1}, {1, -1}}), unit(3, {{0, -2}, {1, 1}, {2, 1}})};
            r.scale = Rational(1, 3);
            break;
    }
    return r;
}

}  // namespace detail

/// A finite (semisimple) root system realized in an ambient space with a
/// diagonal positive-definite form. Immutable after construction.
class RootSystem {
public:
    struct Factor {
        SimpleType type;
        std::vector<std::size_t> simple_indices;  // into simple_roots()
    };

    RootSystem() = default;

    /// Realized root system: explicit simple roots inside an ambient space with
    /// the given diagonal metric. `types` lists the simple factors in order and
    /// must match the Cartan matrix of the simple roots (factor blocks
    /// consecutive).
    RootSystem(std::vector<SimpleType> types, std::vector<Weight> simple_roots, std::vector<Rational> metric)
        : types_(std::move(types)), simple_roots_(std::move(simple_roots)), metric_(std::move(metric)) {
        init();
    }

    [[nodiscard]] const std::vector<SimpleType>& types() const { return types_; }
    [[nodiscard]] std::string name() const { return algebra_name(types_); }
    [[nodiscard]] std::size_t rank() const { return simple_roots_.size(); }
    [[nodiscard]] std::size_t dimension() const { return metric_.size(); }
    [[nodiscard]] const std::vector<Rational>& metric() const { return metric_; }
    [[nodiscard]] const std::vector<Weight>& simple_roots() const { return simple_roots_; }
    [[nodiscard]] const IntMatrix& cartan_matrix() const { return cartan_; }
    [[nodiscard]] const std::vector<Weight>& positive_roots() const { return positive_roots_; }
    /// Positive roots in simple-root coordinates, same order as positive_roots().
    [[nodiscard]] const std::vector<std::vector<std::int64_t>>& positive_root_coordinates() const {
        return positive_coords_;
    }
    [[nodiscard]] const std::vector<Weight>& fundamental_weights() const { return fundamental_; }
    [[nodiscard]] const Weight& rho() const { return rho_; }
    [[nodiscard]] const std::vector<Factor>& factors() const { return factors_; }
    [[nodiscard]] bool is_simple() const { return factors_.size() == 1; }
    /// Lie algebra dimension: rank + number of roots.
    [[nodiscard]] std::size_t algebra_dimension() const { return rank() + 2 * positive_roots_.size(); }

    /// h-dual per simple factor, computed as 1 + 2(rho_f, theta_f)/(theta_f, theta_f).
    [[nodiscard]] const std::vector<std::int64_t>& dual_coxeter() const { return dual_coxeter_; }
    [[nodiscard]] std::int64_t dual_coxeter_number() const {
        if (!is_simple()) throw InvalidInput("dual Coxeter number requested for non-simple " + name());
        return dual_coxeter_.front();
    }
    /// Highest root of each simple factor.
    [[nodiscard]] const std::vector<Weight>& highest_roots() const { return highest_roots_; }

    [[nodiscard]] std::uint64_t weyl_order() const {
        std::uint64_t o = 1;
        for (const auto& t : types_) o *= weyl_group_order(t);
        return o;
    }

    [[nodiscard]] Rational inner(const Weight& x, const Weight& y) const {
        if (x.size() != dimension() || y.size() != dimension())
            throw InvalidInput("inner product: dimension mismatch with ambient space of " + name());
        Rational s = 0;
        for (std::size_t i = 0; i < metric_.size(); ++i)
            if (x[i] != 0 && y[i] != 0) s += metric_[i] * x[i] * y[i];
        return s;
    }
    [[nodiscard]] Rational norm2(const Weight& x) const { return inner(x, x); }

    /// <x, a_i^vee> = 2(x,a_i)/(a_i,a_i).
    [[nodiscard]] Rational coroot_pairing(const Weight& x, std::size_t i) const {
        return 2 * inner(x, simple_roots_[i]) / simple_norms_[i];
    }

    [[nodiscard]] std::vector<Rational> dynkin_labels(const Weight& x) const {
        std::vector<Rational> m(rank());
        for (std::size_t i = 0; i < rank(); ++i) m[i] = coroot_pairing(x, i);
        return m;
    }

    /// Integer Dynkin labels; throws for a non-integral weight.
    [[nodiscard]] std::vector<std::int64_t> integral_labels(const Weight& x) const {
        std::vector<std::int64_t> out;
        for (const auto& r : dynkin_labels(x)) {
            if (!is_integer(r)) throw InvalidInput("weight " + x.str() + " is not integral for " + name());
            out.push_back(r.numerator());
        }
        return out;
    }

    [[nodiscard]] bool is_integral(const Weight& x) const {
        const auto m = dynkin_labels(x);
        return std::all_of(m.begin(), m.end(), [](const Rational& r) { return is_integer(r); });
    }
    [[nodiscard]] bool is_dominant(const Weight& x) const {
        const auto m = dynkin_labels(x);
        return std::all_of(m.begin(), m.end(), [](const Rational& r) { return r >= 0; });
    }

    [[nodiscard]] Weight from_dynkin(const std::vector<std::int64_t>& labels) const {
        if (labels.size() != rank())
            throw InvalidInput("expected " + std::to_string(rank()) + " Dynkin labels for " + name() + ", got " +
                               std::to_string(labels.size()));
        Weight w(dimension());
        for (std::size_t i = 0; i < rank(); ++i) w += Rational(labels[i]) * fundamental_[i];
        return w;
    }

    /// Coordinates in the basis of simple roots (for x in their span).
    [[nodiscard]] std::vector<Rational> simple_root_coordinates(const Weight& x) const {
        std::vector<Rational> rhs(rank());
        for (std::size_t j = 0; j < rank(); ++j) rhs[j] = inner(x, simple_roots_[j]);
        std::vector<Rational> c(rank(), Rational(0));
        for (std::size_t i = 0; i < rank(); ++i)
            for (std::size_t j = 0; j < rank(); ++j) c[i] += gram_inverse_[i][j] * rhs[j];
        return c;
    }

    [[nodiscard]] Weight from_simple_coordinates(const std::vector<Rational>& c) const {
        Weight w(dimension());
        for (std::size_t i = 0; i < rank(); ++i)
            if (c[i] != 0) w += c[i] * simple_roots_[i];
        return w;
    }
    [[nodiscard]] Weight from_simple_coordinates(const std::vector<std::int64_t>& c) const {
        Weight w(dimension());
        for (std::size_t i = 0; i < rank(); ++i)
            if (c[i] != 0) w += Rational(c[i]) * simple_roots_[i];
        return w;
    }

    [[nodiscard]] Weight reflect(const Weight& x, std::size_t i) const {
        const Rational p = coroot_pairing(x, i);
        if (p == 0) return x;
        return x - p * simple_roots_[i];
    }

    [[nodiscard]] bool is_root(const Weight& x) const { return root_set_.count(x) > 0; }
    [[nodiscard]] bool is_positive_root(const Weight& x) const { return positive_set_.count(x) > 0; }
    /// All roots: positives followed by their negatives.
    [[nodiscard]] std::vector<Weight> all_roots() const {
        std::vector<Weight> r = positive_roots_;
        for (const auto& a : positive_roots_) r.push_back(-a);
        return r;
    }

    /// Height in the simple-root basis (only meaningful on the root lattice).
    [[nodiscard]] Rational height(const Weight& x) const {
        Rational h = 0;
        for (const auto& c : simple_root_coordinates(x)) h += c;
        return h;
    }

    /// Canonical descriptor used for cache keys: type plus realized simple roots.
    [[nodiscard]] std::string descriptor() const {
        std::string s = name() + "|";
        for (const auto& a : simple_roots_) s += a.str();
        s += "|";
        for (const auto& m : metric_) s += to_string(m) + ",";
        return s;
    }

private:
    void init();

    std::vector<SimpleType> types_;
    std::vector<Weight> simple_roots_;
    std::vector<Rational> metric_;
    std::vector<Rational> simple_norms_;
    RationalMatrix gram_inverse_;
    IntMatrix cartan_;
    std::vector<Weight> positive_roots_;
    std::vector<std::vector<std::int64_t>> positive_coords_;
    std::vector<Weight> fundamental_;
    Weight rho_;
    std::vector<Factor> factors_;
    std::vector<std::int64_t> dual_coxeter_;
    std::vector<Weight> highest_roots_;
    std::set<Weight> root_set_;
    std::set<Weight> positive_set_;
};

inline void RootSystem::init() {
    const std::size_t n = simple_roots_.size();
    if (n == 0) throw InvalidInput("root system needs at least one simple root");
    for (const auto& a : simple_roots_)
        if (a.size() != metric_.size()) throw InvalidInput("simple root outside ambient space");

    simple_norms_.resize(n);
    RationalMatrix gram(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) gram[i][j] = inner(simple_roots_[i], simple_roots_[j]);
    for (std::size_t i = 0; i < n; ++i) {
        simple_norms_[i] = gram[i][i];
        if (simple_norms_[i] <= 0) throw InvalidInput("simple root of non-positive length");
    }
    auto gi = invert(gram);
    if (!gi) throw InvalidInput("simple roots are linearly dependent");
    gram_inverse_ = std::move(*gi);

    cartan_.assign(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational a = 2 * gram[i][j] / gram[j][j];
            if (!is_integer(a)) throw InvalidInput("simple roots do not form a crystallographic system");
            cartan_[i][j] = a.numerator();
        }

    // Factors: consecutive blocks declared by types_, checked against the diagram.
    std::size_t offset = 0;
    for (const auto& t : types_) {
        if (!valid_type(t)) throw InvalidInput("invalid simple type " + t.name());
        Factor f{t, {}};
        for (int k = 0; k < t.rank; ++k) f.simple_indices.push_back(offset + static_cast<std::size_t>(k));
        const IntMatrix std_cartan = standard_cartan_matrix(t);
        for (int a = 0; a < t.rank; ++a)
            for (int b = 0; b < t.rank; ++b)
                if (cartan_[offset + a][offset + b] != std_cartan[a][b])
                    throw InvalidInput("Cartan matrix does not match declared type " + t.name());
        offset += static_cast<std::size_t>(t.rank);
        factors_.push_back(std::move(f));
    }
    if (offset != n) throw InvalidInput("declared types do not cover all simple roots");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool same = false;
            for (const auto& f : factors_)
                same |= std::count(f.simple_indices.begin(), f.simple_indices.end(), i) &&
                        std::count(f.simple_indices.begin(), f.simple_indices.end(), j);
            if (!same && cartan_[i][j] != 0) throw InvalidInput("factors of " + name() + " are not orthogonal");
        }

    // Positive roots by the root-string criterion, level by level.
    std::set<std::vector<std::int64_t>> known;
    std::vector<std::vector<std::int64_t>> level;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::int64_t> c(n, 0);
        c[i] = 1;
        level.push_back(c);
        known.insert(c);
    }
    std::vector<std::vector<std::int64_t>> all = level;
    while (!level.empty()) {
        std::set<std::vector<std::int64_t>> next;
        for (const auto& beta : level) {
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t pairing = 0;
                for (std::size_t j = 0; j < n; ++j) pairing += beta[j] * cartan_[j][i];
                std::int64_t p = 0;
                auto down = beta;
                while (true) {
                    down[i] -= 1;
                    if (!known.count(down)) break;
                    ++p;
                }
                if (p - pairing > 0) {
                    auto up = beta;
                    up[i] += 1;
                    if (!known.count(up)) next.insert(up);
                }
            }
        }
        level.assign(next.begin(), next.end());
        for (const auto& c : level) {
            known.insert(c);
            all.push_back(c);
        }
    }
    std::stable_sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
        const auto ha = std::accumulate(a.begin(), a.end(), std::int64_t{0});
        const auto hb = std::accumulate(b.begin(), b.end(), std::int64_t{0});
        if (ha != hb) return ha < hb;
        return a > b;
    });
    positive_coords_ = all;
    for (const auto& c : all) positive_roots_.push_back(from_simple_coordinates(c));
    for (const auto& a : positive_roots_) {
        positive_set_.insert(a);
        root_set_.insert(a);
        root_set_.insert(-a);
    }

    // Fundamental weights: omega_i = sum_k (A^{-1})_{ik} a_k.
    RationalMatrix cart(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) cart[i][j] = cartan_[i][j];
    const auto cinv = invert(cart);
    if (!cinv) throw InvalidInput("singular Cartan matrix");
    for (std::size_t i = 0; i < n; ++i) {
        Weight w(dimension());
        for (std::size_t k = 0; k < n; ++k)
            if ((*cinv)[i][k] != 0) w += (*cinv)[i][k] * simple_roots_[k];
        fundamental_.push_back(std::move(w));
    }
    rho_ = Weight(dimension());
    for (const auto& w : fundamental_) rho_ += w;

    // Highest root and h-dual per factor.
    for (const auto& f : factors_) {
        const Weight* best = nullptr;
        Rational best_h = -1;
        for (std::size_t r = 0; r < positive_roots_.size(); ++r) {
            const auto& c = positive_coords_[r];
            bool inside = true;
            Rational h = 0;
            for (std::size_t k = 0; k < n; ++k) {
                const bool mine = std::count(f.simple_indices.begin(), f.simple_indices.end(), k) > 0;
                if (!mine && c[k] != 0) inside = false;
                h += c[k];
            }
            if (inside && h > best_h) {
                best_h = h;
                best = &positive_roots_[r];
            }
        }
        highest_roots_.push_back(*best);
        Weight rho_f(dimension());
        for (auto k : f.simple_indices) rho_f += fundamental_[k];
        // fundamental weights of other factors are orthogonal to this factor's roots
        const Rational hv = 1 + 2 * inner(rho_f, *best) / norm2(*best);
        if (!is_integer(hv)) throw ConsistencyError("non-integral dual Coxeter number");
        dual_coxeter_.push_back(hv.numerator());
    }
}

/// Builds a (semi)simple root system in the documented Bourbaki realization.
inline RootSystem build_root_system(const std::vector<SimpleType>& types) {
    if (types.empty()) throw InvalidInput("empty algebra specification");
    int total = 0;
    for (const auto& t : types) {
        if (!valid_type(t)) throw InvalidInput("invalid simple type " + t.name());
        total += t.rank;
    }
    if (total > kMaxRank)
        throw InvalidInput("total rank " + std::to_string(total) + " exceeds supported maximum " +
                           std::to_string(kMaxRank));
    std::vector<detail::Realization> parts;
    std::size_t dim = 0;
    for (const auto& t : types) {
        parts.push_back(detail::bourbaki(t));
        dim += parts.back().dim;
    }
    std::vector<Rational> metric;
    std::vector<Weight> simple;
    std::size_t offset = 0;
    for (const auto& p : parts) {
        for (std::size_t i = 0; i < p.dim; ++i) metric.push_back(p.scale);
        for (const auto& a : p.simple_roots) {
            Weight w(dim);
            for (std::size_t i = 0; i < p.dim; ++i) w[offset + i] = a[i];
            simple.push_back(std::move(w));
        }
        offset += p.dim;
    }
    return RootSystem(types, std::move(simple), std::move(metric));
}

inline RootSystem build_root_system(const std::string& text) { return build_root_system(parse_algebra(text)); }

inline Rational inner_product(const RootSystem& rs, const Weight& x, const Weight& y) { return rs.inner(x, y); }

struct DominantRep {
    Weight weight;
    int sign = 1;          // parity of the reflection word used
    bool regular = true;   // false iff fixed by some reflection
};

/// Reflects into the dominant chamber through simple reflections.
inline DominantRep dominant_representative(const RootSystem& rs, const Weight& w) {
    DominantRep out{w, 1, true};
    while (true) {
        bool moved = false;
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            const Rational p = rs.coroot_pairing(out.weight, i);
            if (p < 0) {
                out.weight -= p * rs.simple_roots()[i];
                out.sign = -out.sign;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    for (std::size_t i = 0; i < rs.rank(); ++i)
        if (rs.coroot_pairing(out.weight, i) == 0) out.regular = false;
    return out;
}

struct SignedWeight {
    Weight weight;
    int sign = 1;
};

/// Full Weyl orbit. Signs are eps(w) for the shortest w carrying the dominant
/// representative to each element; meaningful as an alternating sum only for
/// regular weights. Deterministic breadth-first order starting at the dominant
/// representative.
inline std::vector<SignedWeight> weyl_orbit(const RootSystem& rs, const Weight& w) {
    if (rs.weyl_order() > kMaxWeylOrder)
        throw InvalidInput("Weyl group of " + rs.name() + " exceeds supported order " +
                           std::to_string(kMaxWeylOrder));
    const auto dom = dominant_representative(rs, w);
    std::vector<SignedWeight> orbit{{dom.weight, 1}};
    std::set<Weight> seen{dom.weight};
    for (std::size_t head = 0; head < orbit.size(); ++head) {
        const SignedWeight cur = orbit[head];
        for (std::size_t i = 0; i < rs.rank(); ++i) {
            const Rational p = rs.coroot_pairing(cur.weight, i);
            if (p <= 0) continue;
            Weight next = cur.weight - p * rs.simple_roots()[i];
            if (seen.insert(next).second) orbit.push_back({std::move(next), -cur.sign});
        }
    }
    return orbit;
}

/// A closed root subsystem: its abstract type (Bourbaki realization), the same
/// system realized inside the ambient space with the ambient form, and the
/// images of the abstract simple roots.
struct RootSubsystem {
    RootSystem abstract;
    RootSystem realized;
    std::vector<Weight> simple_root_images;  // image of abstract simple root k
};

namespace detail {

/// Identifies the simple type of a connected Cartan matrix, returning the
/// permutation perm with A[perm[i]][perm[j]] == standard(type)[i][j].
inline std::optional<std::pair<SimpleType, std::vector<std::size_t>>> identify_component(
    const IntMatrix& cartan, const std::vector<std::size_t>& nodes) {
    const int r = static_cast<int>(nodes.size());
    for (int f = 0; f < 7; ++f) {
        SimpleType t{static_cast<Family>(f), r};
        if (!valid_type(t)) continue;
        const IntMatrix std_cartan = standard_cartan_matrix(t);
        std::vector<std::size_t> perm = nodes;
        std::sort(perm.begin(), perm.end());
        do {
            bool ok = true;
            for (int i = 0; i < r && ok; ++i)
                for (int j = 0; j < r && ok; ++j) ok = cartan[perm[i]][perm[j]] == std_cartan[i][j];
            if (ok) return std::make_pair(t, perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

}  // namespace detail

/// Identifies the root system spanned by a closed, negation-stable subset of
/// roots. Throws InvalidInput naming a violating pair when the subset is not
/// closed.
inline RootSubsystem root_subsystem(const RootSystem& rs, const std::vector<Weight>& roots) {
    std::set<Weight> subset(roots.begin(), roots.end());
    if (subset.empty()) throw InvalidInput("empty root subset");
    for (const auto& a : subset) {
        if (!rs.is_root(a)) throw InvalidInput(a.str() + " is not a root of " + rs.name());
        if (!subset.count(-a)) throw InvalidInput("subset not closed under negation: missing -" + a.str());
    }
    for (const auto& a : subset)
        for (const auto& b : subset) {
            const Weight s = a + b;
            if (rs.is_root(s) && !subset.count(s))
                throw InvalidInput("subset not closed: " + a.str() + " + " + b.str() + " = " + s.str() +
                                   " is a root outside the subset");
        }
    std::vector<Weight> positive;
    for (const auto& a : subset)
        if (rs.is_positive_root(a)) positive.push_back(a);
    std::set<Weight> pos_set(positive.begin(), positive.end());
    std::vector<Weight> simple;
    for (const auto& a : rs.positive_roots()) {  // ambient order keeps results deterministic
        if (!pos_set.count(a)) continue;
        bool decomposable = false;
        for (const auto& b : positive)
            if (pos_set.count(a - b)) decomposable = true;
        if (!decomposable) simple.push_back(a);
    }
    const std::size_t n = simple.size();
    IntMatrix cartan(n, std::vector<std::int64_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational v = 2 * rs.inner(simple[i], simple[j]) / rs.norm2(simple[j]);
            cartan[i][j] = v.numerator();
        }
    // connected components in index order
    std::vector<int> comp(n, -1);
    std::vector<std::vector<std::size_t>> components;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> nodes{s};
        comp[s] = static_cast<int>(components.size());
        for (std::size_t h = 0; h < nodes.size(); ++h)
            for (std::size_t j = 0; j < n; ++j)
                if (comp[j] < 0 && cartan[nodes[h]][j] != 0) {
                    comp[j] = comp[s];
                    nodes.push_back(j);
                }
        components.push_back(nodes);
    }
    std::vector<SimpleType> types;
    std::vector<Weight> ordered;
    for (const auto& nodes : components) {
        auto id = detail::identify_component(cartan, nodes);
        if (!id) throw ConsistencyError("could not identify root subsystem component");
        types.push_back(id->first);
        for (auto k : id->second) ordered.push_back(simple[k]);
    }
    RootSubsystem out{build_root_system(types), RootSystem(types, ordered, rs.metric()), ordered};
    if (out.realized.positive_roots().size() != positive.size())
        throw ConsistencyError("root subsystem size mismatch");
    return out;
}

/// Calls f(c) for every integer vector c with (c - c0)^T G (c - c0) <= bound,
/// G symmetric positive definite. Coordinate ranges come from completing the
/// square exactly; every candidate is checked in exact arithmetic.
template <class F>
void for_each_in_ellipsoid(const RationalMatrix& G, const std::vector<Rational>& c0, const Rational& bound, F&& f) {
    const std::size_t n = G.size();
    // Q(x) = sum_i d[i] (x_i + sum_{j>i} u[i][j] x_j)^2
    RationalMatrix a = G;
    std::vector<Rational> d(n);
    RationalMatrix u(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        d[i] = a[i][i];
        if (d[i] <= 0) throw InvalidInput("quadratic form is not positive definite");
        for (std::size_t j = i + 1; j < n; ++j) u[i][j] = a[i][j] / d[i];
        for (std::size_t j = i + 1; j < n; ++j)
            for (std::size_t l = i + 1; l < n; ++l) a[j][l] -= d[i] * u[i][j] * u[i][l];
    }
    std::vector<std::int64_t> c(n, 0);
    std::vector<Rational> x(n);
    auto rec = [&](auto&& self, std::size_t level, const Rational& budget) -> void {
        const std::size_t i = level - 1;
        Rational shift = -c0[i];
        for (std::size_t j = i + 1; j < n; ++j) shift += u[i][j] * x[j];
        // d (c - c0 + shift)^2 <= budget
        const double radius = std::sqrt(boost::rational_cast<double>(budget / d[i]));
        const double centre = -boost::rational_cast<double>(shift);
        const auto lo = static_cast<std::int64_t>(std::floor(centre - radius)) - 1;
        const auto hi = static_cast<std::int64_t>(std::ceil(centre + radius)) + 1;
        for (std::int64_t v = lo; v <= hi; ++v) {
            const Rational y = Rational(v) + shift;
            const Rational used = d[i] * y * y;
            if (used > budget) continue;
            c[i] = v;
            x[i] = Rational(v) - c0[i];
            if (i == 0)
                f(static_cast<const std::vector<std::int64_t>&>(c));
            else
                self(self, i, budget - used);
        }
    };
    if (n == 0) {
        f(static_cast<const std::vector<std::int64_t>&>(c));
        return;
    }
    if (bound >= 0) rec(rec, n, bound);
}

}  // namespace splinter
