#include "ffsl3/fields.hpp"

#include <map>

#include <atomic>
#include <stdexcept>

namespace ffsl3 {

namespace {

constexpr int kNever = -1'000'000;
const char* kBPNames[4] = {"J", "G+", "G-", "L"};
const int kBPShift[4] = {0, 0, 1, 1};

uint32_t next_id() {
    static std::atomic<uint32_t> counter{0};
    return counter++;
}

void add_shift(std::vector<Exponent>& out, const Exponent& e) {
    for (auto& x : out)
        if (x == e) return;
    out.push_back(e);
}

Field make(FieldKind kind, int index = -1, Exponent mu = {}, Scalar s = {}, std::vector<Field> kids = {}) {
    auto n = std::make_shared<FieldNode>();
    n->kind = kind;
    n->id = next_id();
    n->index = index;
    n->mu = std::move(mu);
    n->s = std::move(s);
    n->kids = std::move(kids);
    switch (kind) {
        case FieldKind::Vertex:
            n->shifts.push_back(n->mu);
            break;
        case FieldKind::Deriv:
        case FieldKind::Scale:
            n->shifts = n->kids[0]->shifts;
            break;
        case FieldKind::Sum:
            for (auto& k : n->kids)
                for (auto& e : k->shifts) add_shift(n->shifts, e);
            break;
        case FieldKind::NormOrd:
            for (auto& a : n->kids[0]->shifts)
                for (auto& b : n->kids[1]->shifts) add_shift(n->shifts, a + b);
            break;
        default:
            n->shifts.push_back(Exponent{});
    }
    return n;
}

}  // namespace

// ---------------------------------------------------------------- builders

Field zero_field() {
    static Field z = make(FieldKind::Sum);
    return z;
}

bool is_zero_field(const Field& f) { return f->kind == FieldKind::Sum && f->kids.empty(); }

Field identity() {
    static Field one = make(FieldKind::Identity);
    return one;
}

Field current(const Exponent& h) {
    if (h.is_zero()) return zero_field();
    return make(FieldKind::Current, -1, h);
}

Field current(const Space& sp, const std::string& name) { return current(sp.gen(name)); }

Field beta(int pair) { return make(FieldKind::Beta, pair); }
Field gamma(int pair) { return make(FieldKind::Gamma, pair); }

Field beta(const Space& sp, const std::string& name) {
    int i = sp.beta_index(name);
    if (i < 0) throw std::invalid_argument("unknown generator: " + name);
    return beta(i);
}

Field gamma(const Space& sp, const std::string& name) {
    int i = sp.gamma_index(name);
    if (i < 0) throw std::invalid_argument("unknown generator: " + name);
    return gamma(i);
}

Field bp(BPGen g) {
    static Field atoms[4] = {make(FieldKind::BP, 0), make(FieldKind::BP, 1), make(FieldKind::BP, 2),
                             make(FieldKind::BP, 3)};
    return atoms[(int)g];
}

Field vertex(const Exponent& mu) { return make(FieldKind::Vertex, -1, mu); }

Field deriv(const Field& f, int times) {
    Field r = f;
    for (int i = 0; i < times; ++i) {
        if (is_zero_field(r)) return r;
        if (r->kind == FieldKind::Identity) return zero_field();
        r = make(FieldKind::Deriv, -1, {}, {}, {r});
    }
    return r;
}

Field nord(const Field& a, const Field& b) {
    if (is_zero_field(a) || is_zero_field(b)) return zero_field();
    if (a->kind == FieldKind::Identity) return b;
    if (b->kind == FieldKind::Identity) return a;
    return make(FieldKind::NormOrd, -1, {}, {}, {a, b});
}

Field nord(std::initializer_list<Field> fs) {
    std::vector<Field> v(fs);
    if (v.empty()) return identity();
    Field r = v.back();
    for (size_t i = v.size() - 1; i-- > 0;) r = nord(v[i], r);
    return r;
}

Field scale(const Scalar& s, const Field& f) {
    if (s.is_zero() || is_zero_field(f)) return zero_field();
    if (s == Scalar(1)) return f;
    if (f->kind == FieldKind::Current) return current(s * f->mu);
    if (f->kind == FieldKind::Scale) return scale(s * f->s, f->kids[0]);
    if (f->kind == FieldKind::Sum) {
        std::vector<Field> parts;
        for (auto& k : f->kids) parts.push_back(scale(s, k));
        return sum(parts);
    }
    return make(FieldKind::Scale, -1, {}, s, {f});
}

Field sum(const std::vector<Field>& fs) {
    std::vector<Field> flat;
    Exponent cur;
    bool have_cur = false;
    std::function<void(const Field&)> push = [&](const Field& f) {
        if (f->kind == FieldKind::Sum) {
            for (auto& k : f->kids) push(k);
        } else if (f->kind == FieldKind::Current) {
            cur = cur + f->mu;
            have_cur = true;
        } else {
            flat.push_back(f);
        }
    };
    for (auto& f : fs) push(f);
    if (have_cur && !cur.is_zero()) flat.insert(flat.begin(), current(cur));
    if (flat.empty()) return zero_field();
    if (flat.size() == 1) return flat[0];
    return make(FieldKind::Sum, -1, {}, {}, flat);
}

Field operator+(const Field& a, const Field& b) { return sum({a, b}); }
Field operator-(const Field& a) { return scale(Scalar(-1), a); }
Field operator-(const Field& a, const Field& b) { return sum({a, -b}); }
Field operator*(const Scalar& s, const Field& f) { return scale(s, f); }
Field operator*(long long s, const Field& f) { return scale(Scalar(s), f); }

std::string field_str(const Field& f, const Space& sp) {
    auto wrap = [&](const Field& g) {
        std::string s = field_str(g, sp);
        return g->kind == FieldKind::Sum || (g->kind == FieldKind::Current && s.find(" + ") != std::string::npos)
                   ? "(" + s + ")"
                   : s;
    };
    switch (f->kind) {
        case FieldKind::Identity:
            return "1";
        case FieldKind::Current:
            return sp.exponent_str(f->mu);
        case FieldKind::Beta:
            return sp.bg.at(f->index).first;
        case FieldKind::Gamma:
            return sp.bg.at(f->index).second;
        case FieldKind::BP:
            return kBPNames[f->index];
        case FieldKind::Vertex:
            return "V[" + sp.exponent_str(f->mu) + "]";
        case FieldKind::Deriv:
            return "d(" + field_str(f->kids[0], sp) + ")";
        case FieldKind::NormOrd:
            return ":" + wrap(f->kids[0]) + " " + wrap(f->kids[1]) + ":";
        case FieldKind::Scale:
            return "(" + f->s.str() + ")*" + wrap(f->kids[0]);
        case FieldKind::Sum: {
            if (f->kids.empty()) return "0";
            std::string out;
            for (auto& k : f->kids) out += (out.empty() ? "" : " + ") + field_str(k, sp);
            return out;
        }
    }
    return "?";
}

Field substitute(const Field& f, const std::function<Field(const FieldNode&)>& atom) {
    switch (f->kind) {
        case FieldKind::Identity:
            return f;
        case FieldKind::Deriv:
            return deriv(substitute(f->kids[0], atom));
        case FieldKind::NormOrd:
            return nord(substitute(f->kids[0], atom), substitute(f->kids[1], atom));
        case FieldKind::Scale:
            return scale(f->s, substitute(f->kids[0], atom));
        case FieldKind::Sum: {
            std::vector<Field> parts;
            for (auto& k : f->kids) parts.push_back(substitute(k, atom));
            return sum(parts);
        }
        default:
            return atom(*f);
    }
}

// ---------------------------------------------------------------- OPE tables

void OPETable::add_field(const std::string& name, Field f) {
    if (!fields_.count(name)) order_.push_back(name);
    fields_[name] = std::move(f);
}

Field OPETable::field(const std::string& name) const {
    auto it = fields_.find(name);
    if (it == fields_.end()) throw std::invalid_argument("unknown field: " + name);
    return it->second;
}

void OPETable::set(const std::string& a, const std::string& b, std::vector<Field> coeffs) {
    ope_[{a, b}] = std::move(coeffs);
}

const std::vector<Field>* OPETable::find(const std::string& a, const std::string& b) const {
    auto it = ope_.find({a, b});
    return it == ope_.end() ? nullptr : &it->second;
}

void OPETable::complete_by_skew_symmetry() {
    std::vector<std::pair<std::pair<std::string, std::string>, std::vector<Field>>> add;
    for (auto& [key, cs] : ope_) {
        std::pair<std::string, std::string> rev{key.second, key.first};
        if (ope_.count(rev)) continue;
        // B_(p-1) A = sum_i (-1)^{p+i} d^i/i! (A_(p-1+i) B)
        std::vector<Field> out(cs.size());
        for (size_t p = 1; p <= cs.size(); ++p) {
            std::vector<Field> parts;
            Rational fact(1);
            for (size_t i = 0; p + i <= cs.size(); ++i) {
                if (i) fact *= Rational((long long)i);
                Scalar c = Scalar(((p + i) % 2 ? Rational(-1) : Rational(1)) / fact);
                parts.push_back(scale(c, deriv(cs[p + i - 1], (int)i)));
            }
            out[p - 1] = sum(parts);
        }
        add.push_back({rev, out});
    }
    for (auto& [k, v] : add) ope_[k] = v;
}

std::vector<ModeTerm> bracket_modes(const std::string& a, const std::string& b, long m, long n, const OPETable& t) {
    auto cs = t.find(a, b);
    if (!cs) throw std::invalid_argument("missing OPE pair (" + a + ", " + b + ")");
    std::vector<ModeTerm> out;
    for (size_t j = 0; j < cs->size(); ++j) {
        if (is_zero_field((*cs)[j])) continue;
        Rational c = binomial(Rational((long long)m), (long)j);
        if (c.is_zero()) continue;
        out.push_back({(*cs)[j], m + n - (long)j, Scalar(c)});
    }
    return out;
}

OPETable bp_ope_table(const Scalar& k) {
    OPETable t;
    Field J = bp(BPGen::J), Gp = bp(BPGen::Gp), Gm = bp(BPGen::Gm), L = bp(BPGen::L);
    t.add_field("J", J);
    t.add_field("G+", Gp);
    t.add_field("G-", Gm);
    t.add_field("L", L);
    Field one = identity();
    Scalar c = -(2 * k + 3) * (3 * k + 1) / (k + 3);
    t.set("J", "J", {zero_field(), ((2 * k + 3) / 3) * one});
    t.set("J", "G+", {Gp});
    t.set("J", "G-", {-Gm});
    t.set("L", "J", {deriv(J), J});
    t.set("L", "G+", {deriv(Gp), Scalar::frac(3, 2) * Gp});
    t.set("L", "G-", {deriv(Gm), Scalar::frac(3, 2) * Gm});
    t.set("L", "L", {deriv(L), 2 * L, zero_field(), (c / 2) * one});
    t.set("G+", "G-", {sum({3 * nord(J, J), (3 * (k + 1) / 2) * deriv(J), (-(k + 3)) * L}),
                       (3 * (k + 1)) * J, ((k + 1) * (2 * k + 3)) * one});
    t.set("G+", "G+", {});
    t.set("G-", "G-", {});
    t.complete_by_skew_symmetry();
    return t;
}

// ---------------------------------------------------------------- Engine

Engine::Engine(Fock& fock, std::optional<OPETable> bp_table) : fock_(fock), bp_(std::move(bp_table)) {
    for (int g = 0; g < 4; ++g) bp_atoms_.push_back(bp((BPGen)g));
}

void Engine::clear_cache() {
    memo_.clear();
    cache_terms_ = 0;
}

void Engine::remember(const Key& k, const FockState& v) {
    if (cache_terms_ + v.size() + 1 > cache_limit_) clear_cache();
    cache_terms_ += v.size() + 1;
    memo_.emplace(k, v);
}

int Engine::max_shift(const Field& f, int sector) {
    uint64_t key = (uint64_t)f->id << 32 | (uint32_t)sector;
    auto it = shift_memo_.find(key);
    if (it != shift_memo_.end()) return it->second;
    int r = kNever;
    switch (f->kind) {
        case FieldKind::Identity:
        case FieldKind::Gamma:
            r = -1;
            break;
        case FieldKind::Current:
        case FieldKind::Beta:
            r = 0;
            break;
        case FieldKind::BP:
            r = kBPShift[f->index];
            break;
        case FieldKind::Vertex:
            r = -1 - (int)fock_.integral_pairing(f->mu, sector);
            break;
        case FieldKind::Deriv: {
            int c = max_shift(f->kids[0], sector);
            r = c == kNever ? kNever : c + 1;
            break;
        }
        case FieldKind::Scale:
            r = max_shift(f->kids[0], sector);
            break;
        case FieldKind::Sum:
            for (auto& k : f->kids) r = std::max(r, max_shift(k, sector));
            break;
        case FieldKind::NormOrd: {
            int b = max_shift(f->kids[1], sector);
            if (b == kNever) break;
            for (auto& mu : f->kids[1]->shifts) {
                int a = max_shift(f->kids[0], fock_.sector_id(fock_.sector(sector) + mu));
                if (a != kNever) r = std::max(r, a + b + 1);
            }
            break;
        }
    }
    shift_memo_[key] = r;
    return r;
}

FockState Engine::apply(const Field& f, long n, const FockState& s, std::optional<int> window) {
    StateBuilder acc;
    for (auto& [id, c] : s.terms) acc.add(apply_basis(f, n, id), c);
    FockState r = acc.finish();
    return window ? fock_.truncate(r, *window) : r;
}

FockState Engine::apply_terms(const std::vector<ModeTerm>& terms, const FockState& s) {
    StateBuilder acc;
    for (auto& t : terms) acc.add(apply(t.field, t.mode, s), t.coeff);
    return acc.finish();
}

FockState Engine::apply_basis(const Field& f, long n, uint32_t id) {
    if (is_zero_field(f)) return {};
    int sec = fock_.basis(id).sector;
    int ms = max_shift(f, sec);
    if (ms == kNever || n > fock_.weight(id) + ms) return {};
    bool cached = f->kind == FieldKind::NormOrd || f->kind == FieldKind::Vertex || f->kind == FieldKind::BP ||
                  f->kind == FieldKind::Sum;
    if (!cached) return compute(*f, n, id);
    Key key{f->id, (int32_t)n, id};
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    FockState r = compute(*f, n, id);
    remember(key, r);
    return r;
}

FockState Engine::compute(const FieldNode& f, long n, uint32_t id) {
    switch (f.kind) {
        case FieldKind::Identity:
            return n == -1 ? fock_.basis_state(id) : FockState{};
        case FieldKind::Current:
            return fock_.heis_mode(f.mu, n, id);
        case FieldKind::Beta:
            return fock_.beta_mode(f.index, n, id);
        case FieldKind::Gamma:
            return fock_.gamma_mode(f.index, n, id);
        case FieldKind::BP:
            return bp_letter(f.index, n, id);
        case FieldKind::Vertex:
            return fock_.vertex_mode(f.mu, n, id);
        case FieldKind::Deriv:
            if (n == 0) return {};
            return Scalar((long long)-n) * apply_basis(f.kids[0], n - 1, id);
        case FieldKind::Scale:
            return f.s * apply_basis(f.kids[0], n, id);
        case FieldKind::Sum: {
            StateBuilder acc;
            for (auto& k : f.kids) acc.add(apply_basis(k, n, id));
            return acc.finish();
        }
        case FieldKind::NormOrd: {
            const Field& A = f.kids[0];
            const Field& B = f.kids[1];
            int sec = fock_.basis(id).sector;
            long w = fock_.weight(id);
            StateBuilder acc;
            int msB = max_shift(B, sec);
            if (msB != kNever)
                for (long j = n - 1 - w - msB; j <= -1; ++j) {
                    FockState x = apply_basis(B, n - 1 - j, id);
                    if (!x.is_zero()) acc.add(apply(A, j, x));
                }
            int msA = max_shift(A, sec);
            if (msA != kNever)
                for (long j = 0; j <= w + msA; ++j) {
                    FockState x = apply_basis(A, j, id);
                    if (!x.is_zero()) acc.add(apply(B, n - 1 - j, x));
                }
            return acc.finish();
        }
    }
    return {};
}

FockState Engine::bp_letter(int gen, long n, uint32_t id) {
    if (!fock_.space().bp) throw std::logic_error("space has no BP factor");
    if (!bp_) throw std::logic_error("engine has no BP OPE table");
    BasisVector b = fock_.basis(id);
    int degree = 0;
    for (auto& l : b.bp) degree += bp_letter_degree(l.gen, l.mode);
    if (degree + bp_letter_degree(gen, (int)n) < 0) return {};
    BPLetter letter{gen, (int)n};
    bool creation = bp_is_creation(gen, (int)n);
    if (b.bp.empty() && !creation) {
        const Space& sp = fock_.space();
        if (gen == (int)BPGen::J && n == 0) return sp.bp_x * fock_.basis_state(id);
        if (gen == (int)BPGen::L && n == 1) return (sp.bp_y + sp.bp_x / 2) * fock_.basis_state(id);
        return {};
    }
    if (creation && (b.bp.empty() || !(b.bp.front() < letter))) {
        b.bp.insert(b.bp.begin(), letter);
        return fock_.basis_state(fock_.intern(b));
    }
    BPLetter first = b.bp.front();
    b.bp.erase(b.bp.begin());
    uint32_t rest = fock_.intern(b);
    FockState inner = apply_basis(bp_atoms_[gen], n, rest);
    StateBuilder acc;
    acc.add(apply(bp_atoms_[first.gen], first.mode, inner));
    acc.add(apply_terms(bracket_modes(kBPNames[gen], kBPNames[first.gen], n, first.mode, *bp_),
                        fock_.basis_state(rest)));
    return acc.finish();
}

FockState Engine::hw_evaluate(const std::vector<BPLetter>& word, const FockState& v) {
    FockState s = v;
    for (size_t i = word.size(); i-- > 0;) s = apply(bp_atoms_[word[i].gen], word[i].mode, s);
    return s;
}

CommutatorReport check_commutator(Engine& e, const Field& x, const Field& y,
                                  const std::function<std::vector<ModeTerm>(long, long)>& expected,
                                  const std::vector<std::pair<long, long>>& modes,
                                  const std::vector<FockState>& probes, std::optional<int> window) {
    CommutatorReport rep;
    // single-mode images are shared between mode pairs
    std::map<long, std::vector<FockState>> xv, yv;
    auto image = [&](std::map<long, std::vector<FockState>>& memo, const Field& f, long k) -> std::vector<FockState>& {
        auto it = memo.find(k);
        if (it != memo.end()) return it->second;
        std::vector<FockState> out;
        for (auto& v : probes) out.push_back(e.apply(f, k, v));
        return memo.emplace(k, std::move(out)).first->second;
    };
    for (auto [m, n] : modes) {
        auto exp = expected(m, n);
        auto& yn = image(yv, y, n);
        auto& xm = image(xv, x, m);
        for (size_t p = 0; p < probes.size(); ++p) {
            const FockState& v = probes[p];
            FockState r = e.apply(x, m, yn[p]) - e.apply(y, n, xm[p]) - e.apply_terms(exp, v);
            if (window) r = e.fock().truncate(r, *window);
            ++rep.checked;
            if (!r.is_zero()) {
                rep.pass = false;
                if (rep.failures.size() < 16) rep.failures.push_back({m, n, p, r});
            }
        }
    }
    return rep;
}

}  // namespace ffsl3
