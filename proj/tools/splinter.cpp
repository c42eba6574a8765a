// splinter: command-line front end for splint-based branching, affine string
// functions and the theta/denominator identity checks.

#include "job.hpp"

#include "splinter/qseries.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <iomanip>
#include <iostream>

using nlohmann::json;
using namespace splinter;
using namespace splinter::cli;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

json labels_of(const RootSystem& rs, const Weight& w) { return rs.integral_labels(w); }

std::string paren(const std::vector<std::int64_t>& v) { return "(" + join_ints(v) + ")"; }

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) {
        if (is_integer(r))
            a.push_back(r.numerator());
        else
            a.push_back(to_string(r));
    }
    return a;
}

std::string series_str(const std::vector<std::int64_t>& s) {
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << std::setw(4) << s[i];
    return os.str();
}

/// (rho, w) ascending, then Dynkin labels.
std::vector<Weight> ordered(const RootSystem& rs, std::vector<Weight> ws) {
    std::sort(ws.begin(), ws.end(), [&](const Weight& a, const Weight& b) {
        const Rational ra = rs.inner(rs.rho(), a), rb = rs.inner(rs.rho(), b);
        if (ra != rb) return ra < rb;
        const auto la = rs.dynkin_labels(a), lb = rs.dynkin_labels(b);
        if (la != lb) return la < lb;
        return a < b;
    });
    return ws;
}

template <class Map>
std::vector<Weight> keys(const Map& m) {
    std::vector<Weight> out;
    for (const auto& kv : m) out.push_back(kv.first);
    return out;
}

/// Subalgebra weights carry the subalgebra labels and the ambient labels (the
/// latter also fix the central part when the subalgebra has smaller rank).
json sub_weight(const RootSystem& sub, const RootSystem& rs, const Weight& w) {
    return json{{"labels", sub.integral_labels(w)}, {"ambient_labels", labels_of(rs, w)}};
}

std::string sub_weight_str(const RootSystem& sub, const RootSystem& rs, const Weight& w) {
    std::string s = paren(sub.integral_labels(w));
    if (sub.rank() < rs.rank()) s += " @ " + paren(rs.integral_labels(w));
    return s;
}

void emit(const Job& job, const json& record, const std::string& text) {
    if (job.cfg.format == "json")
        std::cout << record.dump() << "\n";
    else
        std::cout << text;
}

json splint_json(const CatalogEntry& e) {
    const Splint& s = e.splint;
    return json{{"name", s.name},
                {"qualified_name", s.qualified_name()},
                {"ambient", s.ambient.name()},
                {"stem1", s.phi1.source().name()},
                {"stem2", s.phi2.source().name()},
                {"correspondence", s.correspondence},
                {"check", e.check.report.pass},
                {"positive_compatible", e.check.positive_compatible},
                {"violations", e.check.report.violations}};
}

int cmd_roots(const Job& job) {
    const RootSystem& rs = *job.rs;
    json roots = json::array();
    std::ostringstream t;
    t << "algebra      " << rs.name() << "\nrank         " << rs.rank() << "\ndimension    " << rs.algebra_dimension()
      << "\nWeyl order   " << rs.weyl_order() << "\ndual Coxeter " << join_ints(rs.dual_coxeter(), " ")
      << "\nrho          " << paren(rs.integral_labels(rs.rho())) << "  ambient " << rs.rho().str()
      << "\ncartan matrix\n";
    for (const auto& row : rs.cartan_matrix()) {
        for (auto v : row) t << std::setw(4) << v;
        t << "\n";
    }
    t << "positive roots (" << rs.positive_roots().size() << "): simple-root coordinates | Dynkin labels | ambient\n";
    for (std::size_t i = 0; i < rs.positive_roots().size(); ++i) {
        const Weight& a = rs.positive_roots()[i];
        const auto& c = rs.positive_root_coordinates()[i];
        roots.push_back(json{{"simple_coordinates", c}, {"labels", labels_of(rs, a)}, {"ambient", rationals(a.coords())}});
        t << "  " << std::left << std::setw(14) << paren(c) << std::setw(14) << paren(rs.integral_labels(a)) << a.str()
          << std::right << "\n";
    }
    json rec{{"command", "roots"},
             {"algebra", rs.name()},
             {"rank", rs.rank()},
             {"dimension", rs.algebra_dimension()},
             {"weyl_order", rs.weyl_order()},
             {"dual_coxeter", rs.dual_coxeter()},
             {"cartan_matrix", rs.cartan_matrix()},
             {"rho", json{{"labels", labels_of(rs, rs.rho())}, {"ambient", rationals(rs.rho().coords())}}},
             {"positive_roots", roots}};
    emit(job, rec, t.str());
    return kOk;
}

int cmd_splint(const Job& job) {
    std::vector<const CatalogEntry*> entries;
    if (job.cfg.action == "check") {
        entries.push_back(job.entry);
    } else {
        for (const auto& e : job.catalog)
            if (!job.rs || e.splint.ambient.name() == job.rs->name()) entries.push_back(&e);
    }
    bool all_pass = true;
    json list = json::array();
    std::ostringstream t;
    for (const auto* e : entries) {
        json j = splint_json(*e);
        std::string eq9 = "not probed";
        if (e->check.report.pass) {
            try {
                const Eq9Probe p = probe_eq9(e->splint, job.cfg.probe_max);
                j["eq9"] = json{{"applicable", p.applicable}, {"probes", p.probes}, {"max_label", job.cfg.probe_max}};
                if (!p.applicable) j["eq9"]["first_failure"] = p.first_failure;
                eq9 = p.applicable ? "holds (" + std::to_string(p.probes) + " weights)"
                                   : "not applicable, fails at " + paren(p.first_failure);
            } catch (const InvalidInput& ex) {
                j["eq9"] = json{{"applicable", false}, {"reason", ex.what()}};
                eq9 = std::string("not applicable: ") + ex.what();
            }
        }
        all_pass &= e->check.report.pass;
        t << e->splint.qualified_name() << "  ~ (" << e->splint.phi1.source().name() << ", "
          << e->splint.phi2.source().name() << ")  check " << (e->check.report.pass ? "pass" : "FAIL")
          << "  positive " << (e->check.positive_compatible ? "yes" : "no") << "  eq9 " << eq9 << "\n";
        for (const auto& v : e->check.report.violations) t << "    " << v << "\n";
        list.push_back(j);
    }
    if (entries.empty()) t << "no splints known for " << (job.rs ? job.rs->name() : std::string("this catalog")) << "\n";
    emit(job, json{{"command", "splint"}, {"action", job.cfg.action}, {"splints", list}}, t.str());
    return job.cfg.action == "check" && !all_pass ? kMismatch : kOk;
}

int cmd_fan(const Job& job) {
    const Splint& s = job.entry->splint;
    const Fan f = fan_coefficients(s);
    const bool ok = f.reconstruct() == stem_product(s);
    std::vector<Weight> gs = ordered(s.ambient, keys(f.coefficients));
    json coeffs = json::array();
    std::ostringstream t;
    t << "injection fan of " << s.qualified_name() << " (gamma in simple-root coordinates: s(gamma))\n";
    for (const auto& g : gs) {
        const auto c = s.ambient.simple_root_coordinates(g);
        coeffs.push_back(json{{"gamma", rationals(c)}, {"s", f.at(g)}});
        std::vector<std::int64_t> ci;
        for (const auto& r : c) ci.push_back(r.numerator());
        t << "  " << std::left << std::setw(12) << paren(ci) << std::right << std::setw(4) << f.at(g) << "\n";
    }
    t << "reconstruction " << (ok ? "ok" : "FAILED") << "\n";
    emit(job, json{{"command", "fan"}, {"splint", s.qualified_name()}, {"coefficients", coeffs}, {"reconstruction", ok}},
         t.str());
    return ok ? kOk : kMismatch;
}

int cmd_branch(const Job& job) {
    const Splint& s = job.entry->splint;
    const RootSystem& rs = s.ambient;
    const RootSubsystem sub = subalgebra_of(s);
    const BranchingTable via = branch_via_splint(s, job.weight);
    json rec{{"command", "branch"},
             {"splint", s.qualified_name()},
             {"weight", labels_of(rs, job.weight)},
             {"dimension", weyl_dimension(rs, job.weight)}};
    auto table_json = [&](const BranchingTable& t) {
        json a = json::array();
        for (const auto& nu : ordered(sub.realized, keys(t.terms()))) {
            json e = sub_weight(sub.realized, rs, nu);
            e["b"] = t.at(nu);
            e["dimension"] = weyl_dimension(sub.realized, nu);
            a.push_back(e);
        }
        return a;
    };
    std::ostringstream t;
    t << "L" << paren(rs.integral_labels(job.weight)) << " of " << rs.name() << " (dim " << weyl_dimension(rs, job.weight)
      << ") restricted to " << sub.realized.name() << " via " << s.qualified_name() << "\n";
    for (const auto& nu : ordered(sub.realized, keys(via.terms())))
        t << "  " << std::left << std::setw(18) << sub_weight_str(sub.realized, rs, nu) << std::right << " b = " << via.at(nu)
          << "  dim " << weyl_dimension(sub.realized, nu) << "\n";
    t << "total dimension " << table_dimension(via, sub.realized) << "\n";
    rec["table"] = table_json(via);
    rec["total_dimension"] = table_dimension(via, sub.realized);
    int code = kOk;
    if (job.cfg.oracle) {
        const BranchingTable direct = branch_direct(rs, sub, job.weight);
        const bool match = direct == via;
        rec["oracle"] = table_json(direct);
        rec["match"] = match;
        t << "oracle (character subtraction): " << (match ? "match" : "MISMATCH") << "\n";
        if (!match) code = kMismatch;
    }
    emit(job, rec, t.str());
    return code;
}

GradedCharacter character_for(const Job& job) {
    const AffineWeight mu{job.weight, *job.cfg.level, 0};
    return cached_affine_character(job.cache, *job.rs, mu, job.grade_max);
}

json series_table(const RootSystem& sub, const RootSystem& rs, const BranchingSeries& br) {
    json a = json::array();
    for (const auto& nu : ordered(sub, keys(br.series()))) {
        json e = sub_weight(sub, rs, nu);
        e["series"] = br.of(nu);
        a.push_back(e);
    }
    return a;
}

int cmd_affine_branch(const Job& job) {
    const Splint& s = job.entry->splint;
    const RootSystem& rs = s.ambient;
    const RootSubsystem sub = subalgebra_of(s);
    const SubalgebraBranching r = branch_affine_to_subalgebra(s, character_for(job));
    std::ostringstream t;
    t << "branching functions of L(" << join_ints(rs.integral_labels(job.weight)) << "; level " << *job.cfg.level
      << ") of affine " << rs.name() << " to " << sub.realized.name() << ", grades 0.." << job.grade_max << "\n";
    for (const auto& nu : ordered(sub.realized, keys(r.composed.series())))
        t << "  " << std::left << std::setw(18) << sub_weight_str(sub.realized, rs, nu) << std::right
          << series_str(r.composed.of(nu)) << "\n";
    t << "direct route: " << (r.match() ? "match" : "MISMATCH") << "\n";
    json rec{{"command", "affine-branch"},
             {"splint", s.qualified_name()},
             {"weight", labels_of(rs, job.weight)},
             {"level", *job.cfg.level},
             {"grade_max", job.grade_max},
             {"composed", series_table(sub.realized, rs, r.composed)},
             {"match", r.match()}};
    if (!r.match()) rec["direct"] = series_table(sub.realized, rs, r.direct);
    emit(job, rec, t.str());
    return r.match() ? kOk : kMismatch;
}

int cmd_strings(const Job& job) {
    const RootSystem& rs = *job.rs;
    const GradedCharacter ch = character_for(job);
    json rec{{"command", "strings"},
             {"algebra", rs.name()},
             {"weight", labels_of(rs, job.weight)},
             {"level", *job.cfg.level},
             {"grade_max", job.grade_max}};
    std::ostringstream t;
    t << "string functions of L(" << join_ints(rs.integral_labels(job.weight)) << "; level " << *job.cfg.level
      << ") of affine " << rs.name() << ", grades 0.." << job.grade_max << "\n";
    std::set<Weight> dominant;
    for (const auto& layer : ch.layers())
        for (const auto& [w, m] : layer.terms())
            if (rs.is_dominant(w)) dominant.insert(w);
    json strings = json::array();
    for (const auto& nu : ordered(rs, std::vector<Weight>(dominant.begin(), dominant.end()))) {
        const auto sigma = string_function(ch, nu);
        strings.push_back(json{{"weight", labels_of(rs, nu)}, {"sigma", sigma}});
        t << "  " << std::left << std::setw(14) << paren(rs.integral_labels(nu)) << std::right << series_str(sigma) << "\n";
    }
    rec["strings"] = strings;
    int code = kOk;
    if (job.cfg.emit == "matrix") {
        const MatrixRelation m = matrix_relation(rs, ch);
        json basis = json::array();
        for (const auto& w : m.matrix.basis) basis.push_back(labels_of(rs, w));
        rec["matrix"] = json{{"basis", basis},
                             {"M", m.matrix.entries},
                             {"M_inverse", m.inverse},
                             {"sigma", m.sigma},
                             {"b", m.b},
                             {"b_from_sigma", m.b_from_sigma},
                             {"sigma_equals_M_b", m.sigma_matches},
                             {"inverse_ok", m.inverse_ok},
                             {"consistent", m.consistent()}};
        auto block = [&](const char* title, const IntMatrix& a) {
            t << title << "\n";
            for (std::size_t i = 0; i < a.size(); ++i) {
                t << "  " << std::left << std::setw(12) << paren(rs.integral_labels(m.matrix.basis[i])) << std::right;
                for (auto v : a[i]) t << std::setw(4) << v;
                t << "\n";
            }
        };
        block("M (row nu, column xi: multiplicity of nu in L(xi))", m.matrix.entries);
        block("M^-1", m.inverse);
        block("b (graded decomposition)", m.b);
        block("M^-1 sigma", m.b_from_sigma);
        t << "sigma = M b: " << (m.sigma_matches ? "yes" : "NO") << "  M^-1 M = I: " << (m.inverse_ok ? "yes" : "NO")
          << "  b = M^-1 sigma: " << (m.b_matches ? "yes" : "NO") << "\n";
        if (!m.consistent()) code = kMismatch;
    }
    emit(job, rec, t.str());
    return code;
}

int cmd_qdim(const Job& job) {
    const RootSystem& rs = *job.rs;
    const GradedCharacter ch = character_for(job);
    const BranchingSeries br = graded_branch_to_g(rs, ch);
    const auto qd = q_dimension(rs, br);
    std::vector<std::int64_t> totals;
    for (const auto& layer : ch.layers()) totals.push_back(layer.total());
    const bool ok = totals == qd && qd.front() == weyl_dimension(rs, job.weight);
    std::ostringstream t;
    t << "q-dimension of L(" << join_ints(rs.integral_labels(job.weight)) << "; level " << *job.cfg.level << ") of affine "
      << rs.name() << "\n  " << series_str(qd) << "\nbranching to " << rs.name() << ":\n";
    for (const auto& nu : ordered(rs, keys(br.series())))
        t << "  " << std::left << std::setw(14) << paren(rs.integral_labels(nu)) << std::right << series_str(br.of(nu))
          << "   dim " << weyl_dimension(rs, nu) << "\n";
    t << "layer totals agree: " << (ok ? "yes" : "NO") << "\n";
    json rec{{"command", "qdim"},
             {"algebra", rs.name()},
             {"weight", labels_of(rs, job.weight)},
             {"level", *job.cfg.level},
             {"grade_max", job.grade_max},
             {"qdim", qd},
             {"branching", series_table(rs, rs, br)},
             {"consistent", ok}};
    emit(job, rec, t.str());
    return ok ? kOk : kMismatch;
}

int cmd_verify(const Job& job) {
    const Splint& s = job.entry->splint;
    bool all = job.entry->check.report.pass;
    json reports = json::array();
    std::ostringstream t;
    if (!all) t << "splint check failed for " << s.qualified_name() << " (" << job.entry->check.report.violations.size()
                << " violations); identities evaluated anyway\n";
    for (const auto& id : job.identities) {
        IdentityReport r;
        if (id == "denominator")
            r = verify_denominator_splint(s, job.grade_max);
        else if (id == "eq5")
            r = verify_theta_eq5(s, job.grade_max);
        else if (id == "eq6")
            r = verify_theta_eq6(s, job.grade_max);
        else
            r = verify_theta_eq6(s, job.grade_max, Eq6Options{false, std::nullopt});
        all &= r.pass;
        json j{{"identity", r.identity},
               {"pass", r.pass},
               {"checked_to", to_string(r.checked_to)},
               {"normalization", to_string(r.normalization)},
               {"notes", r.notes}};
        t << std::left << std::setw(12) << r.identity << std::right << (r.pass ? "pass" : "FAIL") << "  to relative grade "
          << to_string(r.checked_to) << "  q-shift " << to_string(r.normalization);
        for (const auto& n : r.notes) t << "  [" << n << "]";
        t << "\n";
        if (r.first) {
            j["first_mismatch"] = json{{"grade", to_string(r.first->exponent)},
                                       {"labels", rationals(s.ambient.dynkin_labels(r.first->weight))},
                                       {"ambient", rationals(r.first->weight.coords())},
                                       {"lhs", r.first->lhs},
                                       {"rhs", r.first->rhs}};
            t << "    first mismatch at grade " << to_string(r.first->exponent) << ", e^" << r.first->weight.str()
              << " (labels " << rationals(s.ambient.dynkin_labels(r.first->weight)).dump() << ")" << ": "
              << r.first->lhs << " vs " << r.first->rhs << "\n";
        }
        reports.push_back(j);
    }
    emit(job, json{{"command", "verify"}, {"splint", s.qualified_name()}, {"grade_max", job.grade_max}, {"splint_check", job.entry->check.report.pass}, {"reports", reports}, {"pass", all}},
         t.str());
    return all ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"splinter: branching rules through splints of root systems"};
    app.require_subcommand(1);
    app.fallthrough();
    JobConfig cfg;
    app.add_option("--algebra", cfg.algebra, "algebra, e.g. G2 or A1+A1");
    app.add_option("--splint", cfg.splint, "catalog splint, e.g. G2:A2A2");
    app.add_option("--weight", cfg.weight, "highest weight as Dynkin labels, e.g. 0,1");
    app.add_option("--level", cfg.level, "affine level");
    app.add_option("--grade-max", cfg.grade_max, "grade cutoff N");
    app.add_option("--format", cfg.format, "text or json")->capture_default_str();
    app.add_option("--cache-dir", cfg.cache_dir, "result cache directory (default $SPLINTER_CACHE_DIR)");
    app.add_flag("--no-cache", cfg.no_cache, "bypass the result cache");
    app.add_flag("--oracle", cfg.oracle, "also run the brute-force branching oracle");
    app.add_option("--catalog", cfg.catalog, "splint catalog file (default: built-in)");
    app.add_flag("-v,--verbose", cfg.verbosity, "more diagnostics on stderr");

    app.add_subcommand("roots", "Cartan matrix, positive roots, rho, dual Coxeter number");
    auto* sp = app.add_subcommand("splint", "list or check catalog splints");
    sp->add_option("action", cfg.action, "list | check")->required();
    sp->add_option("--probe-max", cfg.probe_max, "largest Dynkin label probed for the stem branching rule");
    app.add_subcommand("fan", "injection fan coefficients of a splint");
    app.add_subcommand("branch", "branching of a finite-dimensional module through a splint");
    app.add_subcommand("qdim", "q-dimension and graded branching of an affine module to the finite algebra");
    app.add_subcommand("affine-branch", "branching functions of an affine module to the splint subalgebra");
    auto* st = app.add_subcommand("strings", "string functions of an affine module");
    st->add_option("--emit", cfg.emit, "matrix: also print M, M^-1 and b = M^-1 sigma");
    auto* ve = app.add_subcommand("verify", "check denominator / theta identities for a splint");
    ve->add_option("--identity", cfg.identity, "denominator | eq5 | eq6 | eq6-bare | all")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    auto validated = validate(cfg);
    if (auto* errs = std::get_if<std::vector<std::string>>(&validated)) {
        std::cerr << "splinter " << cfg.command << ": invalid configuration\n";
        for (const auto& e : *errs) std::cerr << "  - " << e << "\n";
        return kUsage;
    }
    const Job& job = std::get<Job>(validated);
    if (cfg.verbosity > 0 && job.cache.enabled()) std::cerr << "cache enabled\n";
    try {
        if (cfg.command == "roots") return cmd_roots(job);
        if (cfg.command == "splint") return cmd_splint(job);
        if (cfg.command == "fan") return cmd_fan(job);
        if (cfg.command == "branch") return cmd_branch(job);
        if (cfg.command == "affine-branch") return cmd_affine_branch(job);
        if (cfg.command == "strings") return cmd_strings(job);
        if (cfg.command == "qdim") return cmd_qdim(job);
        if (cfg.command == "verify") return cmd_verify(job);
    } catch (const InvalidInput& ex) {
        std::cerr << "splinter " << cfg.command << ": " << ex.what() << "\n";
        return kUsage;
    } catch (const std::exception& ex) {
        std::cerr << "splinter " << cfg.command << ": internal error: " << ex.what() << "\n";
        return 3;
    }
    return kUsage;
}
