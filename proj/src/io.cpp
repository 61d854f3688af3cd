#include "rcr/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rcr {

using std::string;
using std::vector;

ParseError::ParseError(const string &msg, int line, int column)
    : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg), line_(line), column_(column)
{
}

namespace {

bool is_name_char(char c)
{
    return !(c == ',' || c == '(' || c == ')' || c == '#' || c == ':' || c == '/' ||
             std::isspace(static_cast<unsigned char>(c)));
}

struct LineCursor {
    const string &s;
    int line;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    }
    bool at_end()
    {
        skip_ws();
        return pos >= s.size();
    }
    [[noreturn]] void fail(const string &msg) const { throw ParseError(msg, line, static_cast<int>(pos) + 1); }
    string name()
    {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && is_name_char(s[pos]))
            ++pos;
        if (pos == start)
            fail("expected identifier");
        return s.substr(start, pos - start);
    }
    void expect(char c)
    {
        skip_ws();
        if (pos >= s.size() || s[pos] != c)
            fail(string("expected '") + c + "'");
        ++pos;
    }
    bool accept(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
};

class Builder {
public:
    vector<string> names;
    std::unordered_map<string, Element> ids;

    Element element(const string &n)
    {
        auto [it, fresh] = ids.emplace(n, static_cast<Element>(names.size()));
        if (fresh)
            names.push_back(n);
        return it->second;
    }
};

int parse_int(LineCursor &c)
{
    string n = c.name();
    try {
        size_t used = 0;
        int v = std::stoi(n, &used);
        if (used != n.size())
            c.fail("expected integer");
        return v;
    } catch (const std::logic_error &) {
        c.fail("expected integer");
    }
}

} // namespace

Structure parse_structure(const string &text, bool pad_universe)
{
    std::istringstream in(text);
    string raw;
    int lineno = 0;
    std::optional<Signature> sig;
    Builder b;
    vector<vector<Tuple>> rels;
    vector<std::unordered_map<Tuple, int, TupleHash>> seen;
    bool seen_fact = false;
    while (std::getline(in, raw)) {
        ++lineno;
        string line = raw.substr(0, raw.find('#'));
        LineCursor c{line, lineno};
        if (c.at_end())
            continue;
        size_t save = c.pos;
        string head = c.name();
        if (c.accept(':')) {
            if (head == "signature") {
                if (sig)
                    c.fail("duplicate signature line");
                vector<Symbol> syms;
                do {
                    string n = c.name();
                    c.expect('/');
                    int ar = parse_int(c);
                    syms.push_back({n, ar});
                } while (c.accept(','));
                if (!c.at_end())
                    c.fail("trailing characters");
                try {
                    sig = Signature(syms);
                } catch (const Error &e) {
                    c.fail(e.what());
                }
                rels.assign(sig->size(), {});
                seen.assign(sig->size(), {});
            } else if (head == "universe") {
                if (seen_fact || !b.names.empty())
                    c.fail("universe line must precede facts");
                if (!c.at_end()) {
                    do {
                        string n = c.name();
                        if (b.ids.count(n))
                            c.fail("duplicate universe element " + n);
                        b.element(n);
                    } while (c.accept(','));
                }
                if (!c.at_end())
                    c.fail("trailing characters");
            } else {
                c.pos = save;
                c.fail("unknown header " + head);
            }
            continue;
        }
        if (!sig)
            c.fail("fact before signature line");
        auto r = sig->find(head);
        if (!r) {
            c.pos = save;
            c.fail("unknown symbol " + head);
        }
        c.expect('(');
        Tuple t;
        if (!c.accept(')')) {
            do {
                t.push_back(b.element(c.name()));
            } while (c.accept(','));
            c.expect(')');
        }
        if (!c.at_end())
            c.fail("trailing characters");
        if (static_cast<int>(t.size()) != sig->arity(*r)) {
            c.pos = save;
            c.fail("arity mismatch for " + head + ": expected " + std::to_string(sig->arity(*r)) + ", got " +
                   std::to_string(t.size()));
        }
        if (!seen[*r].emplace(t, 0).second) {
            c.pos = save;
            c.fail("duplicate tuple for " + head);
        }
        rels[*r].push_back(std::move(t));
        seen_fact = true;
    }
    if (!sig)
        throw ParseError("missing signature line", lineno + 1, 1);
    return Structure::build(std::move(*sig), std::move(b.names), std::move(rels), pad_universe);
}

Structure parse_structure_json(const string &text, bool pad_universe)
{
    using nlohmann::json;
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(string("json: ") + e.what());
    }
    try {
        vector<Symbol> syms;
        const json &s = j.at("signature");
        if (s.is_object()) {
            throw Error("json: signature must be an array to keep symbol order");
        }
        for (const json &x : s) {
            if (x.is_string()) {
                string spec = x.get<string>();
                auto slash = spec.find('/');
                if (slash == string::npos)
                    throw Error("json: signature entry must be NAME/ARITY");
                syms.push_back({spec.substr(0, slash), std::stoi(spec.substr(slash + 1))});
            } else {
                syms.push_back({x.at("name").get<string>(), x.at("arity").get<int>()});
            }
        }
        Signature sig(syms);
        Builder b;
        auto elem_name = [](const json &e) { return e.is_string() ? e.get<string>() : e.dump(); };
        if (j.contains("universe"))
            for (const json &e : j["universe"])
                b.element(elem_name(e));
        vector<vector<Tuple>> rels(sig.size());
        for (auto &[name, tuples] : j.at("relations").items()) {
            auto r = sig.find(name);
            if (!r)
                throw Error("json: unknown symbol " + name);
            for (const json &t : tuples) {
                Tuple v;
                for (const json &e : t)
                    v.push_back(b.element(elem_name(e)));
                rels[*r].push_back(std::move(v));
            }
        }
        return Structure::build(std::move(sig), std::move(b.names), std::move(rels), pad_universe);
    } catch (const nlohmann::json::exception &e) {
        throw Error(string("json: ") + e.what());
    }
}

string read_file(const string &path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Structure load_structure(const string &path, bool pad_universe)
{
    string text = read_file(path);
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json")
        return parse_structure_json(text, pad_universe);
    return parse_structure(text, pad_universe);
}

string serialize(const Structure &A)
{
    std::ostringstream out;
    const Signature &sig = A.signature();
    out << "signature: ";
    for (size_t r = 0; r < sig.size(); ++r)
        out << (r ? ", " : "") << sig[r].name << "/" << sig[r].arity;
    out << "\nuniverse: ";
    for (Element e = 0; e < A.universe_size(); ++e)
        out << (e ? ", " : "") << A.name(e);
    out << "\n";
    for (size_t r = 0; r < sig.size(); ++r)
        for (const Tuple &t : A.relation(r)) {
            out << sig[r].name << "(";
            for (size_t i = 0; i < t.size(); ++i)
                out << (i ? ", " : "") << A.name(t[i]);
            out << ")\n";
        }
    return out.str();
}

string to_json(const Structure &A)
{
    using nlohmann::json;
    json j;
    j["signature"] = json::array();
    for (const Symbol &s : A.signature().symbols())
        j["signature"].push_back({{"name", s.name}, {"arity", s.arity}});
    j["universe"] = A.names();
    j["relations"] = json::object();
    for (size_t r = 0; r < A.signature().size(); ++r) {
        json rel = json::array();
        for (const Tuple &t : A.relation(r)) {
            json v = json::array();
            for (Element e : t)
                v.push_back(A.name(e));
            rel.push_back(v);
        }
        j["relations"][A.signature()[r].name] = rel;
    }
    return j.dump(2) + "\n";
}

} // namespace rcr
