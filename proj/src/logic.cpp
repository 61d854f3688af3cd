#include "rcr/logic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace rcr {

using std::size_t;
using std::string;
using std::uint64_t;
using std::vector;

namespace {

vector<Var> sorted_unique(vector<Var> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

vector<Var> set_union(const vector<Var> &a, const vector<Var> &b)
{
    vector<Var> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

vector<Var> set_minus(const vector<Var> &a, const vector<Var> &b)
{
    vector<Var> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace

FormulaPtr make_atom(SymbolId r, vector<Var> args)
{
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Atom;
    f->rel = r;
    f->free = sorted_unique(args);
    f->args = std::move(args);
    return f;
}

FormulaPtr make_eq(Var x, Var y)
{
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Eq;
    f->args = {x, y};
    f->free = sorted_unique({x, y});
    return f;
}

FormulaPtr make_not(FormulaPtr g)
{
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Not;
    f->free = g->free;
    f->gd = g->gd;
    f->subs = {std::move(g)};
    return f;
}

FormulaPtr make_and(vector<FormulaPtr> fs)
{
    if (fs.size() == 1)
        return fs[0];
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::And;
    for (const auto &g : fs) {
        f->free = set_union(f->free, g->free);
        f->gd = std::max(f->gd, g->gd);
    }
    f->subs = std::move(fs);
    return f;
}

FormulaPtr make_geq(uint64_t n, vector<Var> bound, SymbolId guard, vector<Var> guard_args, FormulaPtr body)
{
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Geq;
    f->n = n;
    f->rel = guard;
    f->free = set_minus(set_union(sorted_unique(guard_args), body->free), sorted_unique(bound));
    f->gd = body->gd + 1;
    f->bound = std::move(bound);
    f->args = std::move(guard_args);
    f->subs = {std::move(body)};
    return f;
}

FormulaPtr make_exactly(uint64_t n, vector<Var> bound, SymbolId guard, vector<Var> guard_args, FormulaPtr body)
{
    FormulaPtr more = make_geq(n + 1, bound, guard, guard_args, body);
    if (n == 0)
        return make_not(more);
    return make_and({make_geq(n, std::move(bound), guard, std::move(guard_args), std::move(body)), make_not(more)});
}

namespace {

string var_name(Var v) { return "v" + std::to_string(v); }

WfInfo check_rec(const Formula *f, const Signature &sig, std::unordered_map<const Formula *, WfInfo> &seen)
{
    auto it = seen.find(f);
    if (it != seen.end())
        return it->second;
    WfInfo info{{}, 0};
    auto check_vars = [](const vector<Var> &vs) {
        for (Var v : vs)
            if (v == 0)
                throw WfError("variable index 0 is not allowed");
    };
    switch (f->kind) {
    case Formula::Kind::Atom:
        if (f->rel >= sig.size())
            throw WfError("unknown relation id");
        if (static_cast<int>(f->args.size()) != sig.arity(f->rel))
            throw WfError("atom " + sig[f->rel].name + " has wrong arity");
        check_vars(f->args);
        info.free = sorted_unique(f->args);
        break;
    case Formula::Kind::Eq:
        if (f->args.size() != 2)
            throw WfError("equality needs two variables");
        check_vars(f->args);
        info.free = sorted_unique(f->args);
        break;
    case Formula::Kind::Not:
        if (f->subs.size() != 1)
            throw WfError("negation needs one operand");
        info = check_rec(f->subs[0].get(), sig, seen);
        break;
    case Formula::Kind::And:
        for (const auto &g : f->subs) {
            WfInfo gi = check_rec(g.get(), sig, seen);
            info.free = set_union(info.free, gi.free);
            info.gd = std::max(info.gd, gi.gd);
        }
        break;
    case Formula::Kind::Geq: {
        if (f->n < 1)
            throw WfError("counting quantifier needs n >= 1");
        if (f->subs.size() != 1)
            throw WfError("counting quantifier needs one body");
        if (f->rel >= sig.size() || static_cast<int>(f->args.size()) != sig.arity(f->rel))
            throw WfError("guard atom has wrong arity");
        check_vars(f->args);
        check_vars(f->bound);
        vector<Var> b = sorted_unique(f->bound);
        if (b.size() != f->bound.size())
            throw WfError("quantified variable tuple repeats a variable");
        vector<Var> guard_free = sorted_unique(f->args);
        if (!std::includes(guard_free.begin(), guard_free.end(), b.begin(), b.end()))
            throw WfError("quantified variable not in the guard " + sig[f->rel].name);
        WfInfo body = check_rec(f->subs[0].get(), sig, seen);
        if (!std::includes(guard_free.begin(), guard_free.end(), body.free.begin(), body.free.end())) {
            vector<Var> loose = set_minus(body.free, guard_free);
            throw WfError("unguarded quantifier: body variable " + var_name(loose[0]) + " is not in the guard " +
                          sig[f->rel].name);
        }
        info.free = set_minus(guard_free, b);
        info.gd = body.gd + 1;
        break;
    }
    }
    seen.emplace(f, info);
    return info;
}

} // namespace

WfInfo check_wf(const FormulaPtr &f, const Signature &sig)
{
    std::unordered_map<const Formula *, WfInfo> seen;
    return check_rec(f.get(), sig, seen);
}

size_t tree_size(const FormulaPtr &f, size_t cap)
{
    std::unordered_map<const Formula *, size_t> memo;
    auto rec = [&](auto &&self, const Formula *g) -> size_t {
        auto it = memo.find(g);
        if (it != memo.end())
            return it->second;
        size_t s = 1;
        for (const auto &h : g->subs) {
            s += self(self, h.get());
            if (s >= cap)
                s = cap;
        }
        memo.emplace(g, s);
        return s;
    };
    return rec(rec, f.get());
}

size_t dag_size(const FormulaPtr &f)
{
    std::set<const Formula *> seen;
    vector<const Formula *> st{f.get()};
    while (!st.empty()) {
        const Formula *g = st.back();
        st.pop_back();
        if (!seen.insert(g).second)
            continue;
        for (const auto &h : g->subs)
            st.push_back(h.get());
    }
    return seen.size();
}

bool Evaluator::eval(const FormulaPtr &fp, vector<Element> &asg)
{
    const Formula *f = fp.get();
    auto value = [&](Var v) -> Element {
        if (v >= asg.size() || asg[v] == UNSET)
            throw Error("variable " + var_name(v) + " is unassigned");
        return asg[v];
    };
    switch (f->kind) {
    case Formula::Kind::Atom: {
        Tuple t;
        for (Var v : f->args)
            t.push_back(value(v));
        return S_.holds(f->rel, t);
    }
    case Formula::Kind::Eq:
        return value(f->args[0]) == value(f->args[1]);
    default:
        break;
    }
    Key key{f, {}};
    for (Var v : f->free)
        key.vals.push_back(value(v));
    auto it = memo_.find(key);
    if (it != memo_.end())
        return it->second;
    bool result = false;
    switch (f->kind) {
    case Formula::Kind::Not:
        result = !eval(f->subs[0], asg);
        break;
    case Formula::Kind::And:
        result = true;
        for (const auto &g : f->subs)
            if (!eval(g, asg)) {
                result = false;
                break;
            }
        break;
    case Formula::Kind::Geq: {
        Var top = 0;
        for (Var v : f->args)
            top = std::max(top, v);
        for (Var v : f->bound)
            top = std::max(top, v);
        if (asg.size() <= top)
            asg.resize(top + 1, UNSET);
        vector<Element> saved;
        for (Var v : f->bound)
            saved.push_back(asg[v]);
        vector<char> is_bound(top + 1, 0);
        for (Var v : f->bound)
            is_bound[v] = 1;
        uint64_t count = 0;
        for (const Tuple &t : S_.relation(f->rel)) {
            for (Var v : f->bound)
                asg[v] = UNSET;
            bool ok = true;
            for (size_t p = 0; p < t.size() && ok; ++p) {
                Var v = f->args[p];
                if (is_bound[v]) {
                    if (asg[v] == UNSET)
                        asg[v] = t[p];
                    else if (asg[v] != t[p])
                        ok = false;
                } else if (value(v) != t[p]) {
                    ok = false;
                }
            }
            if (ok && eval(f->subs[0], asg) && ++count >= f->n)
                break;
        }
        for (size_t i = 0; i < f->bound.size(); ++i)
            asg[f->bound[i]] = saved[i];
        result = count >= f->n;
        break;
    }
    default:
        break;
    }
    memo_.emplace(std::move(key), result);
    return result;
}

bool Evaluator::holds(const FormulaPtr &sentence)
{
    vector<Element> asg;
    return eval(sentence, asg);
}

bool evaluate(const FormulaPtr &f, const Structure &S, vector<Element> assignment)
{
    Evaluator ev(S);
    return ev.eval(f, assignment);
}

namespace {

void print_rec(const Formula *f, const Signature &sig, string &out)
{
    auto vars = [&](const vector<Var> &vs) {
        for (Var v : vs)
            out += " " + var_name(v);
    };
    switch (f->kind) {
    case Formula::Kind::Atom:
        out += "(atom " + sig[f->rel].name;
        vars(f->args);
        out += ")";
        break;
    case Formula::Kind::Eq:
        out += "(eq";
        vars(f->args);
        out += ")";
        break;
    case Formula::Kind::Not:
        out += "(not ";
        print_rec(f->subs[0].get(), sig, out);
        out += ")";
        break;
    case Formula::Kind::And:
        out += "(and";
        for (const auto &g : f->subs) {
            out += " ";
            print_rec(g.get(), sig, out);
        }
        out += ")";
        break;
    case Formula::Kind::Geq:
        out += "(geq " + std::to_string(f->n) + " (vars";
        vars(f->bound);
        out += ") (guard " + sig[f->rel].name;
        vars(f->args);
        out += ") ";
        print_rec(f->subs[0].get(), sig, out);
        out += ")";
        break;
    }
}

struct SexpParser {
    const string &s;
    const Signature &sig;
    size_t pos = 0;
    int line = 1, col = 1;

    [[noreturn]] void fail(const string &msg)
    {
        throw Error("formula " + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
    }
    void advance()
    {
        if (s[pos] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++pos;
    }
    void skip()
    {
        while (pos < s.size()) {
            if (s[pos] == ';' || s[pos] == '#') {
                while (pos < s.size() && s[pos] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(s[pos]))) {
                advance();
            } else {
                break;
            }
        }
    }
    void open()
    {
        skip();
        if (pos >= s.size() || s[pos] != '(')
            fail("expected '('");
        advance();
    }
    void close()
    {
        skip();
        if (pos >= s.size() || s[pos] != ')')
            fail("expected ')'");
        advance();
    }
    bool peek_close()
    {
        skip();
        return pos < s.size() && s[pos] == ')';
    }
    string word()
    {
        skip();
        size_t start = pos;
        while (pos < s.size() && s[pos] != '(' && s[pos] != ')' && !std::isspace(static_cast<unsigned char>(s[pos])))
            advance();
        if (start == pos)
            fail("expected a word");
        return s.substr(start, pos - start);
    }
    Var var()
    {
        string w = word();
        if (w.size() < 2 || w[0] != 'v' || !std::all_of(w.begin() + 1, w.end(), ::isdigit))
            fail("expected a variable v<n>, got " + w);
        unsigned long v = std::stoul(w.substr(1));
        if (v == 0 || v > 100000)
            fail("variable index out of range: " + w);
        return static_cast<Var>(v);
    }
    SymbolId rel()
    {
        string w = word();
        auto r = sig.find(w);
        if (!r)
            fail("unknown symbol " + w);
        return *r;
    }
    vector<Var> var_list()
    {
        vector<Var> vs;
        while (!peek_close())
            vs.push_back(var());
        return vs;
    }
    FormulaPtr formula()
    {
        open();
        string head = word();
        FormulaPtr f;
        if (head == "atom") {
            SymbolId r = rel();
            f = make_atom(r, var_list());
        } else if (head == "eq") {
            Var x = var(), y = var();
            f = make_eq(x, y);
        } else if (head == "not") {
            f = make_not(formula());
        } else if (head == "and") {
            vector<FormulaPtr> fs;
            while (!peek_close())
                fs.push_back(formula());
            if (fs.size() == 1) {
                // keep a unary conjunction as written
                auto g = std::make_shared<Formula>();
                g->kind = Formula::Kind::And;
                g->free = fs[0]->free;
                g->gd = fs[0]->gd;
                g->subs = std::move(fs);
                f = g;
            } else {
                f = make_and(std::move(fs));
            }
        } else if (head == "geq") {
            string n = word();
            if (!std::all_of(n.begin(), n.end(), ::isdigit))
                fail("expected a count, got " + n);
            open();
            if (word() != "vars")
                fail("expected (vars ...)");
            vector<Var> bound = var_list();
            close();
            open();
            if (word() != "guard")
                fail("expected (guard R ...)");
            SymbolId r = rel();
            vector<Var> gargs = var_list();
            close();
            FormulaPtr body = formula();
            f = make_geq(std::stoull(n), std::move(bound), r, std::move(gargs), std::move(body));
        } else {
            fail("unknown form " + head);
        }
        close();
        return f;
    }
};

} // namespace

string to_sexp(const FormulaPtr &f, const Signature &sig, size_t max_nodes)
{
    size_t n = tree_size(f, max_nodes + 1);
    if (n > max_nodes)
        throw BudgetExceeded("formula has more than " + std::to_string(max_nodes) + " nodes when written out");
    string out;
    print_rec(f.get(), sig, out);
    return out;
}

FormulaPtr parse_sexp(const string &text, const Signature &sig)
{
    SexpParser p{text, sig};
    FormulaPtr f = p.formula();
    p.skip();
    if (p.pos != text.size())
        p.fail("trailing input");
    return f;
}

Synthesizer::Synthesizer(const Structure &joint, const RefinementTrace &trace, size_t budget)
    : joint_(joint), trace_(trace), budget_(budget), m_(joint.signature().max_arity())
{
    for (const auto &round : trace.colors) {
        vector<ColorId> cs = round;
        std::sort(cs.begin(), cs.end());
        cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
        colors_at_.push_back(std::move(cs));
    }
}

void Synthesizer::charge(size_t k)
{
    created_ += k;
    if (created_ > budget_)
        throw BudgetExceeded("synthesis exceeded the budget of " + std::to_string(budget_) + " nodes");
}

FormulaPtr Synthesizer::base(ColorId c, const vector<Var> &x)
{
    const ColorInfo &ci = trace_.interner.info(c);
    const Signature &sig = joint_.signature();
    vector<FormulaPtr> parts;
    for (SymbolId r = 0; r < sig.size(); ++r) {
        if (sig.arity(r) != ci.arity)
            continue;
        FormulaPtr a = make_atom(r, x);
        bool in = std::binary_search(ci.atp.begin(), ci.atp.end(), r);
        parts.push_back(in ? a : make_not(a));
        charge(in ? 1 : 2);
    }
    for (int i = 0; i < ci.arity; ++i)
        for (int j = i + 1; j < ci.arity; ++j) {
            FormulaPtr e = make_eq(x[i], x[j]);
            bool in = ci.self.contains(i, j);
            parts.push_back(in ? e : make_not(e));
            charge(in ? 1 : 2);
        }
    charge(1);
    return make_and(std::move(parts));
}

FormulaPtr Synthesizer::color_formula(size_t i, ColorId c)
{
    const ColorInfo &ci = trace_.interner.info(c);
    vector<Var> x;
    for (int j = 1; j <= ci.arity; ++j)
        x.push_back(static_cast<Var>(j));
    return color_formula(i, c, x);
}

namespace {

vector<int> reps_of(const vector<int> &cls)
{
    vector<int> r;
    for (int j = 0; j < static_cast<int>(cls.size()); ++j)
        if (cls[j] == j)
            r.push_back(j);
    return r;
}

// All non-empty partial injections from left classes to right classes, as pairs of representatives.
void injections(const vector<int> &left, const vector<int> &right, vector<vector<std::pair<int, int>>> &out)
{
    vector<std::pair<int, int>> cur;
    vector<char> used(right.size(), 0);
    auto rec = [&](auto &&self, size_t li) -> void {
        if (li == left.size()) {
            if (!cur.empty())
                out.push_back(cur);
            return;
        }
        self(self, li + 1);
        for (size_t r = 0; r < right.size(); ++r) {
            if (used[r])
                continue;
            used[r] = 1;
            cur.emplace_back(left[li], right[r]);
            self(self, li + 1);
            cur.pop_back();
            used[r] = 0;
        }
    };
    rec(rec, 0);
}

} // namespace

FormulaPtr Synthesizer::color_formula(size_t i, ColorId c, const vector<Var> &x)
{
    if (c >= trace_.interner.size() || i >= colors_at_.size() ||
        !std::binary_search(colors_at_[i].begin(), colors_at_[i].end(), c))
        throw Error("color " + std::to_string(c) + " does not occur in round " + std::to_string(i));
    const ColorInfo &ci = trace_.interner.info(c);
    if (static_cast<int>(x.size()) != ci.arity)
        throw Error("variable tuple arity does not match the color");
    auto key = std::make_tuple(i, c, x);
    auto it = cache_.find(key);
    if (it != cache_.end())
        return it->second;
    if (i == 0) {
        FormulaPtr f = base(c, x);
        cache_.emplace(key, f);
        return f;
    }
    vector<FormulaPtr> parts{color_formula(i - 1, *ci.previous, x)};
    int k = ci.arity;
    vector<int> lcls = position_classes(ci.self);
    vector<int> lreps = reps_of(lcls);
    vector<Var> xs = sorted_unique(x);
    for (ColorId d : colors_at_[i - 1]) {
        const ColorInfo &di = trace_.interner.info(d);
        int l = di.arity;
        vector<int> rcls = position_classes(di.self);
        vector<vector<std::pair<int, int>>> injs;
        injections(lreps, reps_of(rcls), injs);
        for (const auto &inj : injs) {
            vector<SimilarityType::Pair> pairs;
            for (int p = 0; p < k; ++p)
                for (int q = 0; q < l; ++q)
                    for (auto [lr, rr] : inj)
                        if (lcls[p] == lr && rcls[q] == rr)
                            pairs.emplace_back(static_cast<std::uint8_t>(p), static_cast<std::uint8_t>(q));
            SimilarityType tau(k, l, std::move(pairs));
            uint64_t n = 0;
            for (const auto &[t2, d2] : ci.neighbors)
                if (d2 == d && t2.contains_all(tau))
                    ++n;
            // x': class representatives shared with x take x's variable, other positions fresh variables
            vector<Var> xp(l, 0);
            for (auto [lr, rr] : inj)
                xp[rr] = x[lr];
            vector<Var> used = xs;
            for (Var v : xp)
                if (v)
                    used.push_back(v);
            auto taken = [&](Var v) { return std::find(used.begin(), used.end(), v) != used.end(); };
            for (int q = 0; q < l; ++q) {
                if (xp[q])
                    continue;
                Var cand = q < k ? complement(x[q]) : static_cast<Var>(q + 1);
                if (taken(cand)) {
                    cand = 0;
                    for (Var v = 1; v <= static_cast<Var>(2 * m_); ++v)
                        if (!taken(v)) {
                            cand = v;
                            break;
                        }
                    if (!cand)
                        throw Error("variable pool exhausted");
                }
                xp[q] = cand;
                used.push_back(cand);
            }
            vector<Var> hat = set_minus(sorted_unique(xp), xs);
            FormulaPtr body = color_formula(i - 1, d, xp);
            parts.push_back(make_exactly(n, hat, di.atp[0], xp, body));
            charge(n == 0 ? 2 : 4);
        }
    }
    charge(1);
    FormulaPtr f = make_and(std::move(parts));
    cache_.emplace(key, f);
    return f;
}

std::optional<Sentence> distinguishing_sentence(const Structure &A, const Structure &B, size_t budget)
{
    if (!(A.signature() == B.signature()))
        throw Error("signature mismatch");
    const Signature &sig = A.signature();
    for (SymbolId r = 0; r < sig.size(); ++r) {
        size_t na = A.relation(r).size(), nb = B.relation(r).size();
        if (na == nb)
            continue;
        vector<Var> v;
        for (int j = 1; j <= sig.arity(r); ++j)
            v.push_back(static_cast<Var>(j));
        FormulaPtr f = make_geq(std::max(na, nb), v, r, v, make_eq(1, 1));
        return Sentence{f, na > nb};
    }
    JointRun jr = rcr_joint(A, B);
    if (!jr.verdict)
        return std::nullopt;
    Synthesizer syn(jr.u.joint, jr.trace, budget);
    const Verdict &vd = *jr.verdict;
    const ColorInfo &ci = jr.trace.interner.info(vd.color);
    vector<Var> x;
    for (int j = 1; j <= ci.arity; ++j)
        x.push_back(static_cast<Var>(j));
    FormulaPtr body = syn.color_formula(vd.round, vd.color, x);
    FormulaPtr f = make_exactly(vd.count_a, x, ci.atp[0], x, body);
    return Sentence{f, true};
}

} // namespace rcr
