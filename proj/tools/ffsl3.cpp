// ffsl3: command-line driver for the verification suites.
//
// Exit status: 0 when every reported item passes, 1 when some item fails,
// 2 on bad configuration or an engine error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "ffsl3/charflow.hpp"
#include "ffsl3/realize.hpp"
#include "ffsl3/relaxed.hpp"
#include "ffsl3/sectors.hpp"
#include "ffsl3/suites.hpp"

using namespace ffsl3;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "ffsl3 0.1.0";

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// parameters; anything not given, or given as "symbolic", is a formal variable
struct Params {
    Context ctx{"k", "x", "y", "lambda1", "lambda2", "w", "Delta", "lambda"};
    std::map<std::string, std::string> raw;

    static std::string canonical(const std::string& key) {
        static const std::map<std::string, std::string> alias{{"l1", "lambda1"}, {"l2", "lambda2"}, {"delta", "Delta"}};
        auto it = alias.find(key);
        return it == alias.end() ? key : it->second;
    }
    bool has(const std::string& key) const { return raw.count(canonical(key)) > 0; }
    std::string str(const std::string& key, const std::string& dflt) const {
        auto it = raw.find(canonical(key));
        return it == raw.end() ? dflt : it->second;
    }
    Scalar scalar(const std::string& key) const {
        std::string name = canonical(key), v = str(name, "symbolic");
        if (v == "symbolic") {
            if (!ctx.declared(name)) throw ConfigError("parameter " + key + " needs a value");
            return ctx.var(name);
        }
        try {
            return Scalar(Rational::parse(v));
        } catch (const std::exception&) {
            throw ConfigError("parameter " + key + "=" + v + " is not a rational");
        }
    }
    long integer(const std::string& key, long dflt) const {
        if (!has(key)) return dflt;
        Scalar s = scalar(key);
        if (!s.is_integer_constant()) throw ConfigError("parameter " + key + " must be an integer");
        return s.constant_value().to_long();
    }
};

struct Options {
    std::string k = "symbolic";
    long window = -1;
    int order = -1;
    std::vector<std::string> params;
    std::string json_path;
};

Params make_params(const Options& o) {
    Params p;
    p.raw["k"] = o.k;
    for (auto& kv : o.params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ConfigError("--params expects key=value, got " + kv);
        p.raw[Params::canonical(kv.substr(0, eq))] = kv.substr(eq + 1);
    }
    return p;
}

long window_or(const Options& o, long dflt) {
    if (o.window < -1) throw ConfigError("--window must be >= 0");
    return o.window < 0 ? dflt : o.window;
}

// ---- output

struct Output {
    std::vector<Report> reports;
    json extra = json::object();
    std::ostringstream text;

    bool pass() const {
        for (auto& r : reports)
            if (!r.pass()) return false;
        return true;
    }
};

void print_report(std::ostream& os, const Report& r) {
    os << r.check << (r.pass() ? "  PASS" : "  FAIL") << "\n";
    for (auto& [key, val] : r.conventions) os << "  " << key << ": " << val << "\n";
    size_t width = 0;
    for (auto& i : r.items) width = std::max(width, i.name.size());
    for (auto& i : r.items) {
        os << "  [" << (i.pass ? "ok" : "FAIL") << "] " << std::left << std::setw(int(width)) << i.name;
        if (!i.detail.empty()) os << "  " << i.detail;
        os << "\n";
    }
}

json report_json(const Report& r) {
    json j;
    j["check"] = r.check;
    j["conventions"] = r.conventions;
    j["pass"] = r.pass();
    json items = json::array();
    for (auto& i : r.items) items.push_back({{"pair", i.name}, {"residual", i.detail}, {"pass", i.pass}});
    j["items"] = items;
    return j;
}

std::string aligned_matrix(const Matrix& m) {
    std::vector<size_t> width(m.empty() ? 0 : m[0].size(), 0);
    for (auto& row : m)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].str().size());
    std::ostringstream os;
    for (auto& row : m) {
        os << "  [";
        for (size_t c = 0; c < row.size(); ++c) os << (c ? "  " : " ") << std::setw(int(width[c])) << row[c].str();
        os << " ]\n";
    }
    return os.str();
}

json matrix_json(const Matrix& m) {
    json j = json::array();
    for (auto& row : m) {
        json r = json::array();
        for (auto& x : row) r.push_back(x.str());
        j.push_back(r);
    }
    return j;
}

std::string series_table(const QSeries& s, long max_n) {
    std::ostringstream os;
    os << "prefactor q^(" << s.offset.str() << ") z1^(" << s.z1.str() << ") z2^(" << s.z2.str() << "), grading "
       << s.grading << "\n";
    os << "  " << std::setw(4) << "n" << std::setw(6) << "i" << std::setw(6) << "j" << "  coefficient\n";
    for (auto& [t, c] : s.terms)
        if (t[0] <= max_n)
            os << "  " << std::setw(4) << t[0] << std::setw(6) << t[1] << std::setw(6) << t[2] << "  " << c.str() << "\n";
    return os.str();
}

json series_json(const QSeries& s, long max_n) {
    json terms = json::array();
    for (auto& [t, c] : s.terms)
        if (t[0] <= max_n) terms.push_back({{"n", t[0]}, {"i", t[1]}, {"j", t[2]}, {"coeff", c.str()}});
    return {{"offset", s.offset.str()}, {"z1", s.z1.str()}, {"z2", s.z2.str()}, {"grading", s.grading}, {"terms", terms}};
}

// ---- checks

SuiteSpec suite_spec(const Options& o, const Params& p, long window, int level) {
    SuiteSpec s;
    s.k = p.scalar("k");
    s.window = window_or(o, window);
    s.level = int(p.integer("level", level));
    if (s.level < 0) throw ConfigError("level must be >= 0");
    return s;
}

void run_verify(const std::string& which, const Options& o, Output& out) {
    Params p = make_params(o);
    if (which == "affine") {
        std::string dict = p.str("dict", "rho0");
        SuiteSpec s = suite_spec(o, p, 2, dict == "phi1" ? 0 : 1);
        std::string sector = p.str("sector", "vacuum");
        if (sector != "vacuum" && sector != "twisted") throw ConfigError("sector must be vacuum or twisted");
        s.twisted = sector == "twisted";
        s.l1 = p.scalar("lambda1");
        s.l2 = p.scalar("lambda2");
        out.reports.push_back(suite_affine(dict, s));
    } else if (which == "bp-ope") {
        out.reports.push_back(suite_bp_ope(suite_spec(o, p, 2, 1)));
    } else if (which == "sugawara") {
        out.reports.push_back(suite_sugawara(p.str("field", "rho0"), suite_spec(o, p, 2, 1)));
    } else if (which == "screening") {
        out.reports.push_back(suite_screening(suite_spec(o, p, 2, 1)));
    } else if (which == "factorization") {
        out.reports.push_back(suite_factorization(p.str("map", "phi0"), suite_spec(o, p, 2, 1)));
    }
}

void run_singular(const Options& o, Output& out) {
    Params p = make_params(o);
    Scalar k = p.scalar("k");
    long a = p.integer("a", 1), b = p.integer("b", 0);
    if (a < 0 || b < 0) throw ConfigError("a and b must be >= 0");
    KLWeights w = singular_weights(a, b, k);
    Report r;
    r.check = "singular vectors a=" + std::to_string(a) + " b=" + std::to_string(b);
    r.conventions["x"] = w.x.str();
    r.conventions["y"] = w.y.str();
    r.conventions["m1"] = w.m1.str();
    r.conventions["m2"] = w.m2.str();
    for (auto [name, m] : {std::pair{"m1", w.m1}, std::pair{"m2", w.m2}}) {
        Scalar res = singular_residual(k, w.x, w.y, m);
        r.add(std::string("residual at ") + name, res.is_zero(), res.str());
    }
    auto [h1, h2] = singular_sl3_weight(k, w.x, w.y, w.m1);
    r.add("weight at m1", h1 == Scalar(a) && h2 == Scalar(b), "(" + h1.str() + ", " + h2.str() + ")");
    auto [g1, g2] = singular_sl3_weight(k, w.x, w.y, w.m2);
    r.add("weight at m2", g1 == k + 1 - Scalar(b) && g2 == k + 1 - Scalar(a), "(" + g1.str() + ", " + g2.str() + ")");
    out.reports.push_back(r);
    long window = window_or(o, 2);
    out.reports.push_back(verify_singular(k, w.x, w.y, w.m1, int(window)));
    out.reports.push_back(verify_singular(k, w.x, w.y, w.m2, int(window)));
}

void run_reduce(const Options& o, Output& out) {
    Params p = make_params(o);
    Scalar k = p.scalar("k");
    PiModuleDesc desc{int(p.integer("r1", 0)), int(p.integer("r2", 0)), p.scalar("lambda1"), p.scalar("lambda2")};
    int level = int(p.integer("level", 1));
    Space sp = pi_space();
    Fock f(sp);
    Engine e(f);
    BHatBasis bh = bhat_basis(sp, k);
    Report r;
    r.check = "reduction to top, r=(" + std::to_string(desc.r1) + "," + std::to_string(desc.r2) + ")";
    r.conventions["level"] = std::to_string(level);
    json words = json::array();
    for (uint32_t id : f.enumerate_basis(desc.sector(sp), level)) {
        FockState s = f.basis_state(id);
        Reduction red = reduce_to_top(e, bh, s, desc);
        bool ok = is_top(f, red.top) && replay(e, bh, red.word, s) == red.top;
        r.add(f.basis_str(id), ok, word_str(red.word));
        words.push_back({{"state", f.basis_str(id)}, {"word", word_str(red.word)}, {"top", f.state_str(red.top)}});
    }
    out.extra["reductions"] = words;
    out.reports.push_back(r);
}

InfiniteTopParams infinite_params(const Params& p) {
    return {p.scalar("k"), p.scalar("w"), p.scalar("Delta"), p.scalar("lambda"), p.scalar("lambda1"),
            p.scalar("lambda2")};
}

FiniteTopParams finite_params(const Params& p) {
    FiniteTopParams P;
    P.k = p.scalar("k");
    P.x = p.scalar("x");
    P.N = int(p.integer("N", 2));
    if (P.N < 1) throw ConfigError("N must be >= 1");
    P.y = p.has("y") ? p.scalar("y") : finite_top_y(P.k, P.x, P.N);
    P.l1 = p.scalar("lambda1");
    P.l2 = p.scalar("lambda2");
    return P;
}

FiniteConvention finite_convention(const Params& p) {
    std::string c = p.str("table-convention", "derived");
    if (c == "derived") return FiniteConvention::Derived;
    if (c == "printed") return FiniteConvention::Printed;
    throw ConfigError("table-convention must be derived or printed");
}

void run_relaxed(const std::string& which, const Options& o, Output& out) {
    Params p = make_params(o);
    std::string table = p.str("table", "finite");
    if (table != "finite" && table != "infinite") throw ConfigError("table must be finite or infinite");
    if (which == "check-rep") {
        long hw = window_or(o, 2);
        out.reports.push_back(table == "infinite" ? check_representation(infinite_params(p), hw)
                                                  : check_representation(finite_params(p), hw, finite_convention(p)));
        return;
    }
    if (which == "hypotheses") {
        HypothesisResult h;
        if (table == "infinite") {
            h = hypothesis_check(infinite_params(p));
        } else {
            std::string set = p.str("set", "cent");
            Hypotheses hs = set == "conj1" ? Hypotheses::Conj1 : set == "n1" ? Hypotheses::ThmN1 : Hypotheses::LemmaCent;
            if (set != "conj1" && set != "n1" && set != "cent") throw ConfigError("set must be conj1, n1 or cent");
            h = hypothesis_check(finite_params(p), hs);
        }
        Report r;
        r.check = "hypotheses (" + table + " top)";
        r.add("verdict", h.verdict == Verdict::True, verdict_str(h.verdict) + (h.clause.empty() ? "" : ": " + h.clause));
        out.reports.push_back(r);
        return;
    }
    // irrcert
    FiniteTopParams P = finite_params(p);
    long m = p.integer("m", 0), q = p.integer("p", 0);
    CentralizerPair U = centralizer_matrices(P, m, q);
    Certificate c = irreducibility_certificate(P, m, q);
    Report r;
    r.check = "irreducibility certificate N=" + std::to_string(P.N);
    r.conventions["algebra dimension"] = std::to_string(c.algebra_dim);
    r.add("verdict", c.verdict == Verdict::True, verdict_str(c.verdict) + (c.witness.empty() ? "" : ": " + c.witness));
    out.text << "U1 =\n" << aligned_matrix(U.U1) << "U2 =\n" << aligned_matrix(U.U2);
    out.extra["U1"] = matrix_json(U.U1);
    out.extra["U2"] = matrix_json(U.U2);
    out.reports.push_back(r);
}

void run_char(const Options& o, Output& out) {
    Params p = make_params(o);
    Scalar k = p.scalar("k");
    int order = o.order < 0 ? 3 : o.order;
    long window = window_or(o, 1);
    PiModuleDesc desc{int(p.integer("r1", -1)), int(p.integer("r2", -1)), p.scalar("lambda1"), p.scalar("lambda2")};
    QSeries eta = eta_inv_pow4(order);
    out.text << "eta^-4\n" << series_table(eta, order);
    out.extra["eta"] = series_json(eta, order);
    QSeries brute = char_bruteforce(desc, k, order, window);
    out.text << "trace over the sectors\n" << series_table(brute, order);
    out.extra["trace"] = series_json(brute, order);
    Report r;
    r.check = "character of Pi(" + std::to_string(desc.r1) + "," + std::to_string(desc.r2) + ")";
    r.conventions["order"] = std::to_string(order);
    if (desc.r1 == -1 && desc.r2 == -1) {
        QSeries closed = expand(char_pi(desc, k), order + 8, 2 * window + 4);
        std::string why;
        size_t n = compare_on_common(brute, closed, order + 1, &why);
        r.add("closed form vs trace", why.empty() && n == size_t((2 * window + 1) * (2 * window + 1)),
              why.empty() ? std::to_string(n) + " z-monomials" : why);
    }
    long a = p.integer("a", 0), b = p.integer("b", 0);
    if (a || b) {
        FlowParams fp{a, b, 0};
        QSeries predicted = sf_char(fp, brute, k);
        QSeries target = char_bruteforce(sf_module(fp, desc, k), k, order, window);
        std::string why;
        size_t n = compare_on_common(predicted, target, order + 1, &why);
        r.add("flowed character vs trace", why.empty() && n > 0,
              why.empty() ? std::to_string(n) + " z-monomials" : why);
        out.extra["flowed"] = series_json(predicted, order);
    }
    out.reports.push_back(r);
}

void run_flow(const Options& o, Output& out) {
    Params p = make_params(o);
    Scalar k = p.scalar("k");
    std::string kind = p.str("kind", "gamma");
    FlowParams fp{p.integer("a", 1), p.integer("b", 0), p.integer("l", 1)};
    std::string c = p.str("table-convention", "derived");
    if (c != "derived" && c != "printed") throw ConfigError("table-convention must be derived or printed");
    TableConvention conv = c == "derived" ? TableConvention::Derived : TableConvention::Printed;
    if (kind == "factor") {
        out.reports.push_back(verify_flow_factorization(fp, k));
        return;
    }
    Flow w = kind == "lambda" ? Flow::Lambda : kind == "sigma" ? Flow::Sigma : Flow::Gamma;
    if (kind != "lambda" && kind != "sigma" && kind != "gamma") throw ConfigError("kind must be lambda, sigma, gamma or factor");
    json laws = json::object();
    for (auto& g : flow_fields(w)) {
        std::string s = law_str(sf_field(fp, w, g, k, conv));
        out.text << "  " << std::left << std::setw(4) << g << " -> " << s << "\n";
        laws[g] = s;
    }
    out.extra["laws"] = laws;
    out.reports.push_back(verify_flow_table(w, fp, k, conv));
    if (w == Flow::Lambda) {
        PiModuleDesc desc{int(p.integer("r1", -1)), int(p.integer("r2", -1)), p.scalar("lambda1"),
                          p.scalar("lambda2")};
        out.reports.push_back(verify_lambda_modes(fp, desc, k, int(p.integer("level", 1)), window_or(o, 2)));
    }
}

void run_zk(const Options& o, Output& out) {
    Params p = make_params(o);
    Scalar k = p.scalar("k");
    auto [t, w] = zk_screening_eigen(k);
    Report r;
    r.check = "Z^k screening eigenvalues";
    Scalar te = (4 * k + 9) / 3, we = -(k + 3) * (4 * k + 9) * (5 * k + 12) / 27;
    r.add("T_0", t == te, t.str());
    r.add("W_0", w == we, w.str());
    out.reports.push_back(r);
}

struct Entry {
    std::string name, params, anchor;
};

const std::vector<Entry>& catalog() {
    static const std::vector<Entry> c{
        {"verify-affine", "dict=rho0|rho0-bosonized|phi0|phi1 level sector=vacuum|twisted lambda1 lambda2 --window",
         "Wakimoto realization; realization of sl3 in W^k (x) Pi(0)^2"},
        {"verify-bp-ope", "level --window", "Bershadsky-Polyakov operator products"},
        {"verify-sugawara", "field=rho0|pi level --window", "Sugawara vector; Virasoro field on Pi(0)^2"},
        {"verify-screening", "level --window", "screening operator of the bosonized Wakimoto realization"},
        {"verify-factorization", "map=phi0|phi0-sugawara|phi1-sugawara level --window",
         "rho0 = Phi0 o rho1; Sugawara images"},
        {"singular", "a b --window", "singular vectors in the relaxed Pi modules"},
        {"reduce", "r1 r2 lambda1 lambda2 level", "top-level reduction inside Pi modules"},
        {"relaxed check-rep", "table=infinite|finite N table-convention --window",
         "sl3 action on the relaxed top spaces"},
        {"relaxed irrcert", "N m p x lambda1 lambda2", "irreducibility of the finite top spaces"},
        {"relaxed hypotheses", "table set=conj1|n1|cent", "nonvanishing conditions on the parameters"},
        {"char", "r1 r2 lambda1 lambda2 a b --order --window", "character of Pi(-1,-1) and its spectral flow"},
        {"flow", "kind=lambda|sigma|gamma|factor a b l table-convention", "spectral flow tables via Li's Delta"},
        {"zk-eigen", "", "screening eigenvalues of Z^k"},
    };
    return c;
}

void run_list(Output& out) {
    json j = json::array();
    size_t width = 0;
    for (auto& e : catalog()) width = std::max(width, e.name.size());
    for (auto& e : catalog()) {
        out.text << std::left << std::setw(int(width)) << e.name << "  " << e.anchor << "\n"
                 << std::string(width + 2, ' ') << "params: " << (e.params.empty() ? "-" : e.params) << "\n";
        j.push_back({{"name", e.name}, {"params", e.params}, {"anchor", e.anchor}});
    }
    out.extra["checks"] = j;
}

int emit(const Output& out, const std::string& path) {
    std::cout << out.text.str();
    for (auto& r : out.reports) print_report(std::cout, r);
    bool ok = out.pass();
    if (!path.empty()) {
        json j;
        j["engine"] = kVersion;
        j["pass"] = ok;
        json reps = json::array();
        for (auto& r : out.reports) reps.push_back(report_json(r));
        j["reports"] = reps;
        for (auto& [key, val] : out.extra.items()) j[key] = val;
        if (path == "-") {
            std::cout << j.dump(2) << "\n";
        } else {
            std::ofstream f(path);
            if (!f) throw ConfigError("cannot write " + path);
            f << j.dump(2) << "\n";
        }
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact checks for free-field realizations of affine sl3 and the Bershadsky-Polyakov algebra"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);
    Options opt;
    auto common = [&](CLI::App* c) {
        c->add_option("--k", opt.k, "level: a rational or 'symbolic'");
        c->add_option("--window", opt.window, "mode window or half width");
        c->add_option("--order", opt.order, "q-series order");
        c->add_option("--params", opt.params, "key=value assignments")->expected(0, -1);
        c->add_option("--json", opt.json_path, "write the JSON report here ('-' for stdout)");
    };
    std::function<void(Output&)> action;

    auto* verify = app.add_subcommand("verify", "commutator and OPE suites");
    verify->require_subcommand(1);
    for (std::string s : {"affine", "bp-ope", "sugawara", "screening", "factorization"}) {
        auto* c = verify->add_subcommand(s);
        common(c);
        c->callback([&, s] { action = [&, s](Output& o) { run_verify(s, opt, o); }; });
    }
    auto* relaxed = app.add_subcommand("relaxed", "relaxed top spaces");
    relaxed->require_subcommand(1);
    for (std::string s : {"check-rep", "irrcert", "hypotheses"}) {
        auto* c = relaxed->add_subcommand(s);
        common(c);
        c->callback([&, s] { action = [&, s](Output& o) { run_relaxed(s, opt, o); }; });
    }
    auto simple = [&](const char* name, const char* help, std::function<void(Output&)> f) {
        auto* c = app.add_subcommand(name, help);
        common(c);
        c->callback([&, f] { action = f; });
    };
    simple("singular", "singular vectors at (a, b)", [&](Output& o) { run_singular(opt, o); });
    simple("reduce", "reduction words to the top level", [&](Output& o) { run_reduce(opt, o); });
    simple("char", "characters of Pi modules", [&](Output& o) { run_char(opt, o); });
    simple("flow", "spectral flow tables", [&](Output& o) { run_flow(opt, o); });
    simple("zk-eigen", "Z^k screening eigenvalues", [&](Output& o) { run_zk(opt, o); });
    simple("list", "list the checks", [&](Output& o) { run_list(o); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        Output out;
        action(out);
        return emit(out, opt.json_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
