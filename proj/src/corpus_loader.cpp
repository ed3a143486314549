#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "qseries/corpus.hpp"

#ifndef QSERIES_CORPUS_DIR
#define QSERIES_CORPUS_DIR "corpus"
#endif

namespace qs {

std::string to_string(IdentityKind k) {
    switch (k) {
    case IdentityKind::chain: return "chain";
    case IdentityKind::interchange: return "interchange";
    case IdentityKind::summation: return "summation";
    }
    return "?";
}

namespace {

struct Loader {
    std::string file;
    int line = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::CorpusLoadError, file + ":" + std::to_string(line) + ": " + msg);
    }

    static std::string trim(const std::string& s) {
        auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return "";
        auto e = s.find_last_not_of(" \t\r");
        return s.substr(b, e - b + 1);
    }

    Expr parse(const std::string& text) const {
        try {
            return parse_expr(text);
        } catch (const Error& e) {
            fail(e.what());
        }
    }

    Monomial parse_monomial(const std::string& text) const {
        Expr e = parse(text);
        if (!e.pochs.empty() || e.series) fail("expected a monomial: " + text);
        return e.prefactor;
    }

    std::map<std::string, std::string> header_attrs(const std::string& body, std::string& id) const {
        // body: identity <id> key=value key="quoted"
        std::map<std::string, std::string> attrs;
        std::size_t i = 0;
        auto skip = [&] {
            while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        };
        auto word = [&] {
            std::size_t b = i;
            while (i < body.size() && !std::isspace(static_cast<unsigned char>(body[i])) && body[i] != '=') ++i;
            return body.substr(b, i - b);
        };
        skip();
        if (word() != "identity") fail("header must start with 'identity'");
        skip();
        id = word();
        if (id.empty()) fail("missing identity id");
        for (;;) {
            skip();
            if (i >= body.size()) break;
            std::string key = word();
            if (i >= body.size() || body[i] != '=') fail("expected key=value in header");
            ++i;
            std::string value;
            if (i < body.size() && body[i] == '"') {
                auto close = body.find('"', i + 1);
                if (close == std::string::npos) fail("unterminated quote in header");
                value = body.substr(i + 1, close - i - 1);
                i = close + 1;
            } else {
                value = word();
            }
            attrs[key] = value;
        }
        return attrs;
    }

    Guard parse_guard(const std::string& raw) const {
        std::string g = trim(raw);
        Guard out;
        out.text = g;
        if (g == "qdisk") {
            out.kind = Guard::Kind::QInsideDisk;
            return out;
        }
        auto open = g.find('(');
        if (open == std::string::npos || g.back() != ')') fail("malformed guard '" + g + "'");
        std::string name = trim(g.substr(0, open));
        std::string inner = g.substr(open + 1, g.size() - open - 2);
        if (name == "notomega") {
            auto semi = inner.rfind(';');
            if (semi == std::string::npos) fail("notomega needs '<monomial>; <length>'");
            out.kind = Guard::Kind::NotOmega;
            out.args.push_back(parse_monomial(inner.substr(0, semi)));
            std::string len = trim(inner.substr(semi + 1));
            Expr probe = parse("poch(1; q; " + len + ")");
            out.length = probe.pochs.front().length;
            return out;
        }
        std::vector<std::string> parts;
        std::stringstream ss(inner);
        std::string part;
        while (std::getline(ss, part, ',')) parts.push_back(part);
        for (const auto& p : parts) out.args.push_back(parse_monomial(p));
        if (name == "ne") {
            if (out.args.size() != 2) fail("ne takes two monomials");
            out.kind = Guard::Kind::NotEqual;
        } else if (name == "nonzero") {
            out.kind = Guard::Kind::NonZero;
        } else {
            fail("unknown guard '" + name + "'");
        }
        return out;
    }
};

void collect_names(const Monomial& m, std::set<std::string>& out) {
    for (const auto& [k, v] : m.powers) out.insert(k);
}

std::set<std::string> all_names(const Expr& e) {
    std::set<std::string> out;
    collect_names(e.prefactor, out);
    for (const auto& f : e.pochs) {
        for (const auto& m : f.args) collect_names(m, out);
    }
    if (e.series) {
        collect_names(e.series->head, out);
        collect_names(e.series->argument, out);
        for (const auto& m : e.series->numerator) collect_names(m, out);
        for (const auto& m : e.series->denominator) collect_names(m, out);
    }
    return out;
}

struct Pending {
    Identity ident;
    std::vector<std::string> role_names;
    std::vector<std::string> role_targets;
    std::vector<Member> raw_members;
};

void expand_roles(Pending& p, const Loader& ld) {
    Identity& id = p.ident;
    id.displayed_members = p.raw_members.size();
    std::set<std::string> seen;
    std::vector<std::string> perm = p.role_targets;
    std::sort(perm.begin(), perm.end());
    for (const Member& m : p.raw_members) {
        std::set<std::string> names = all_names(m.expr);
        std::vector<std::size_t> used;
        for (std::size_t r = 0; r < p.role_names.size(); ++r) {
            if (names.count(p.role_names[r])) used.push_back(r);
        }
        if (used.empty()) {
            if (seen.insert(canonical_key(m.expr)).second) id.members.push_back(m);
            continue;
        }
        std::vector<std::string> order = perm;
        do {
            std::map<std::string, Monomial> map;
            std::string tag;
            for (std::size_t r : used) {
                map[p.role_names[r]] = Monomial::name(order[r]);
                tag += (tag.empty() ? "" : ",") + p.role_names[r] + "=" + order[r];
            }
            Member v = m;
            v.expr = substitute(m.expr, map);
            v.label = m.label + "{" + tag + "}";
            if (seen.insert(canonical_key(v.expr)).second) id.members.push_back(v);
        } while (std::next_permutation(order.begin(), order.end()));
    }
    if (id.members.empty()) ld.fail("identity " + id.id + " has no members");

    std::set<std::string> lets;
    for (const auto& [k, v] : id.lets) lets.insert(k);
    std::optional<std::set<std::string>> common;
    for (const Member& m : id.members) {
        std::set<std::string> fp = free_params(m.expr);
        if (all_names(m.expr).count("z")) id.uses_z = true;
        if (common && *common != fp) {
            ld.fail("identity " + id.id + ": member " + m.label + " has different free parameters");
        }
        common = fp;
    }
    for (const auto& name : *common) {
        if (!lets.count(name)) id.params.push_back(name);
    }
    for (const auto& [k, v] : id.lets) {
        for (const auto& [nm, pw] : v.powers) {
            if (nm != "q" && nm != "z" && lets.count(nm)) ld.fail("let " + k + " refers to another let");
        }
    }
    if (id.closed_form) {
        for (const auto& nm : free_params(*id.closed_form)) {
            if (!common->count(nm)) ld.fail("closed form of " + id.id + " uses unknown parameter " + nm);
        }
        if (all_names(*id.closed_form).count("z")) id.uses_z = true;
    }
    if (id.kind == IdentityKind::summation && !id.closed_form) ld.fail("summation " + id.id + " lacks a closed form");
    if (id.members.size() < 2 && !id.closed_form) ld.fail("identity " + id.id + " needs two members or a closed form");
}

}  // namespace

std::vector<Identity> parse_corpus(const std::string& text, const std::string& filename) {
    Loader ld{filename, 0};
    // Join continuation lines (leading whitespace) onto the previous line.
    std::vector<std::pair<int, std::string>> lines;
    {
        std::stringstream ss(text);
        std::string raw;
        int no = 0;
        while (std::getline(ss, raw)) {
            ++no;
            auto hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            if (Loader::trim(raw).empty()) continue;
            bool cont = std::isspace(static_cast<unsigned char>(raw[0]));
            if (cont && !lines.empty()) {
                lines.back().second += " " + Loader::trim(raw);
            } else {
                lines.emplace_back(no, Loader::trim(raw));
            }
        }
    }
    std::vector<Identity> out;
    std::optional<Pending> cur;
    auto flush = [&] {
        if (!cur) return;
        expand_roles(*cur, ld);
        out.push_back(std::move(cur->ident));
        cur.reset();
    };
    for (const auto& [no, line] : lines) {
        ld.line = no;
        if (line.front() == '[') {
            flush();
            if (line.back() != ']') ld.fail("header must end with ']'");
            Pending p;
            std::string id;
            auto attrs = ld.header_attrs(line.substr(1, line.size() - 2), id);
            p.ident.id = id;
            p.ident.source = filename + ":" + std::to_string(no);
            std::string kind = attrs.count("kind") ? attrs["kind"] : "chain";
            if (kind == "chain") {
                p.ident.kind = IdentityKind::chain;
            } else if (kind == "interchange") {
                p.ident.kind = IdentityKind::interchange;
            } else if (kind == "summation") {
                p.ident.kind = IdentityKind::summation;
            } else {
                ld.fail("unknown kind '" + kind + "'");
            }
            p.ident.ref = attrs["ref"];
            p.ident.quote = attrs["quote"];
            p.ident.family = attrs["family"];
            cur = std::move(p);
            continue;
        }
        if (!cur) ld.fail("content before the first identity header");
        auto colon = line.find(':');
        if (colon == std::string::npos) ld.fail("expected '<keyword>: ...'");
        // Member labels may themselves contain ':' (e.g. "cdqH:def1"); the
        // keyword line ends at the first ": " or at a trailing ':'.
        std::size_t sep = line.find(": ");
        if (sep == std::string::npos) sep = colon;
        std::string head = Loader::trim(line.substr(0, sep));
        std::string body = Loader::trim(line.substr(sep + 1));
        std::stringstream hs(head);
        std::string keyword;
        hs >> keyword;
        if (keyword == "member") {
            Member m;
            std::string tok;
            while (hs >> tok) {
                if (tok == "float") {
                    m.float_only = true;
                } else if (m.label.empty()) {
                    m.label = tok;
                } else {
                    ld.fail("unexpected token '" + tok + "' in member line");
                }
            }
            if (m.label.empty()) m.label = cur->ident.id + ":" + std::to_string(cur->raw_members.size() + 1);
            m.expr = ld.parse(body);
            if (needs_float(m.expr) && !m.float_only) ld.fail("member " + m.label + " needs the 'float' tag");
            cur->raw_members.push_back(std::move(m));
        } else if (keyword == "closed") {
            cur->ident.closed_form = ld.parse(body);
        } else if (keyword == "roles") {
            auto eq = body.find('=');
            if (eq == std::string::npos) ld.fail("roles: expected 'r1 r2 .. = t1 t2 ..'");
            std::stringstream a(body.substr(0, eq)), b(body.substr(eq + 1));
            std::string w;
            while (a >> w) cur->role_names.push_back(w);
            while (b >> w) cur->role_targets.push_back(w);
            if (cur->role_names.size() != cur->role_targets.size()) ld.fail("roles: arity mismatch");
        } else if (keyword == "guard") {
            std::string g;
            int depth = 0;
            for (char c : body + ";") {
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == ';' && depth == 0) {
                    if (!Loader::trim(g).empty()) cur->ident.guards.push_back(ld.parse_guard(g));
                    g.clear();
                } else {
                    g.push_back(c);
                }
            }
        } else if (keyword == "let") {
            auto eq = body.find('=');
            if (eq == std::string::npos) ld.fail("let: expected 'name = monomial'");
            cur->ident.lets.emplace_back(Loader::trim(body.substr(0, eq)), ld.parse_monomial(body.substr(eq + 1)));
        } else {
            ld.fail("unknown keyword '" + keyword + "'");
        }
    }
    flush();
    return out;
}

std::vector<Identity> load_corpus_dir(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw Error(ErrorKind::CorpusLoadError, "corpus directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() == ".qid") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<Identity> out;
    std::set<std::string> ids;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream buf;
        buf << in.rdbuf();
        for (auto& ident : parse_corpus(buf.str(), f.filename().string())) {
            if (!ids.insert(ident.id).second) {
                throw Error(ErrorKind::CorpusLoadError, "duplicate identity id " + ident.id + " in " + f.string());
            }
            out.push_back(std::move(ident));
        }
    }
    return out;
}

std::string default_corpus_dir() {
    if (const char* env = std::getenv("QSERIES_CORPUS")) return env;
    return QSERIES_CORPUS_DIR;
}

const std::vector<Identity>& registry() {
    static const std::vector<Identity> reg = load_corpus_dir(default_corpus_dir());
    return reg;
}

const Identity& find_identity(const std::string& id) {
    for (const Identity& i : registry()) {
        if (i.id == id) return i;
    }
    throw Error(ErrorKind::UnknownName, "no identity '" + id + "'");
}

}  // namespace qs
