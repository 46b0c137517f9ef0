#include "ffsl3/suites.hpp"

#include <stdexcept>

#include "ffsl3/realize.hpp"

namespace ffsl3 {

namespace {

struct Model {
    Fock f;
    Engine e;
    explicit Model(Space sp) : f(std::move(sp)), e(f) {}
    const Space& sp() const { return f.space(); }
    std::vector<FockState> probes(int level, const Exponent& sec = {}) { return vacuum_probes(f, sec, level).states; }
};

Report labelled(Report r, const SuiteSpec& s, const std::string& probe) {
    r.conventions["k"] = s.k.str();
    r.conventions["window"] = std::to_string(s.window);
    r.conventions["probes"] = probe;
    return r;
}

}  // namespace

const std::vector<std::string>& affine_dicts() {
    static const std::vector<std::string> d{"rho0", "rho0-bosonized", "phi0", "phi1"};
    return d;
}

Report suite_affine(const std::string& dict, const SuiteSpec& s) {
    auto modes = mode_box(-s.window, s.window);
    if (dict == "rho0") {
        Model m(wakimoto_space(s.k));
        auto d = wakimoto(s.k, wakimoto_atoms(m.sp()));
        auto p = vacuum_probes(m.f, {}, s.level);
        return labelled(verify_affine(m.e, d, s.k, p.states, modes), s, p.label);
    }
    if (dict == "rho0-bosonized" || dict == "phi0") {
        Model m(bosonized_space(s.k));
        auto d = dict == "phi0" ? phi0(s.k, phi0_bosonized_atoms(m.sp(), s.k)) : wakimoto(s.k, bosonized_atoms(m.sp()));
        auto p = vacuum_probes(m.f, {}, s.level);
        return labelled(verify_affine(m.e, d, s.k, p.states, modes), s, p.label);
    }
    if (dict == "phi1") {
        Model m(free_pi_space(s.k));
        auto d = phi1(s.k, phi1_free_atoms(m.sp(), s.k));
        Exponent sec;
        if (s.twisted)
            sec = m.sp().exponent(
                {{"d1", Scalar::frac(-1, 2)}, {"d2", Scalar::frac(-1, 2)}, {"c1", s.l1}, {"c2", s.l2}});
        auto p = vacuum_probes(m.f, sec, s.level);
        return labelled(verify_affine(m.e, d, s.k, p.states, modes), s, p.label);
    }
    throw std::invalid_argument("unknown dictionary " + dict);
}

Report suite_bp_ope(const SuiteSpec& s) {
    Model m(free_pi_space(s.k));
    BPFields b = rho1(s.k, beta(m.sp(), "bt"), gamma(m.sp(), "gt"), current(m.sp(), "at1"), current(m.sp(), "at2"));
    auto p = vacuum_probes(m.f, {}, s.level);
    return labelled(verify_bp_ope(m.e, b, s.k, p.states, mode_box(-1, s.window)), s, p.label);
}

Report suite_sugawara(const std::string& which, const SuiteSpec& s) {
    auto modes = mode_box(-1, s.window);
    if (which == "rho0") {
        Model m(wakimoto_space(s.k));
        auto d = wakimoto(s.k, wakimoto_atoms(m.sp()));
        auto p = vacuum_probes(m.f, {}, s.level);
        return labelled(verify_sugawara(m.e, sugawara_from_currents(s.k, d), 8 * s.k / (s.k + 3), d, p.states, modes),
                        s, p.label);
    }
    if (which == "pi") {
        Model m(free_pi_space(s.k));
        auto p = vacuum_probes(m.f, {}, s.level);
        return labelled(verify_sugawara(m.e, pi_virasoro(s.k, phi1_free_atoms(m.sp(), s.k)), 4 + 8 * s.k, Dictionary{},
                                        p.states, modes),
                        s, p.label);
    }
    throw std::invalid_argument("unknown Virasoro field " + which);
}

Report suite_screening(const SuiteSpec& s) {
    Model m(bosonized_space(s.k));
    auto d = wakimoto(s.k, bosonized_atoms(m.sp()));
    auto p = vacuum_probes(m.f, {}, s.level);
    return labelled(verify_screening(m.e, d, vertex(m.sp().gen("x")), p.states, -s.window, s.window), s, p.label);
}

Report suite_factorization(const std::string& which, const SuiteSpec& s) {
    if (which == "phi0" || which == "phi0-sugawara") {
        Model m(bosonized_space(s.k));
        auto a = phi0_bosonized_atoms(m.sp(), s.k);
        auto p = vacuum_probes(m.f, {}, s.level);
        if (which == "phi0")
            return labelled(verify_factorization(m.e, wakimoto(s.k, bosonized_atoms(m.sp())), phi0(s.k, a), p.states,
                                                 -s.window, s.window),
                            s, p.label);
        Dictionary lhs, rhs;
        lhs.set("L", sugawara_from_currents(s.k, phi0(s.k, a)));
        rhs.set("L", sugawara_phi0(s.k, a));
        return labelled(verify_factorization(m.e, lhs, rhs, p.states, -1, s.window), s, p.label);
    }
    if (which == "phi1-sugawara") {
        Model m(free_pi_space(s.k));
        auto a = phi1_free_atoms(m.sp(), s.k);
        auto p = vacuum_probes(m.f, {}, s.level);
        Dictionary lhs, rhs;
        lhs.set("L", sugawara_from_currents(s.k, phi1(s.k, a)));
        rhs.set("L", sugawara_phi1(s.k, a));
        return labelled(verify_factorization(m.e, lhs, rhs, p.states, -1, s.window), s, p.label);
    }
    throw std::invalid_argument("unknown factorization " + which);
}

}  // namespace ffsl3
