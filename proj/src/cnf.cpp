#include "vfactor/models.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

namespace vf {

bool Cnf::eval(const std::vector<bool>& a) const
{
    if (a.size() < nvars) throw ArityError("assignment shorter than nvars");
    for (const auto& c : clauses) {
        bool sat = false;
        for (int l : c) {
            bool v = a[std::size_t(std::abs(l)) - 1];
            if ((l > 0) == v) {
                sat = true;
                break;
            }
        }
        if (!sat) return false;
    }
    return true;
}

std::string to_dimacs(const Cnf& f)
{
    std::ostringstream os;
    std::string aux;
    for (std::size_t v = 0; v < f.auxiliary.size(); ++v)
        if (f.auxiliary[v]) aux += " " + std::to_string(v + 1);
    if (!aux.empty()) os << "c aux" << aux << "\n";
    os << "p cnf " << f.nvars << " " << f.clauses.size() << "\n";
    for (const auto& c : f.clauses) {
        for (int l : c) os << l << " ";
        os << "0\n";
    }
    return os.str();
}

Cnf parse_dimacs(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    Cnf f;
    bool header = false;
    std::size_t declared = 0;
    std::vector<std::size_t> aux;
    std::vector<int> cur;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok == "c") {
            std::string kind;
            if (ls >> kind && kind == "aux")
                for (std::size_t v; ls >> v;) aux.push_back(v);
            continue;
        }
        if (tok == "p") {
            std::string fmt;
            if (header || !(ls >> fmt >> f.nvars >> declared) || fmt != "cnf") throw ParseError("bad DIMACS header: " + line);
            header = true;
            continue;
        }
        if (!header) throw ParseError("clause before DIMACS header");
        ls.clear();
        ls.str(line);
        for (long l; ls >> l;) {
            if (l == 0) {
                f.clauses.push_back(cur);
                cur.clear();
                continue;
            }
            if (std::size_t(std::labs(l)) > f.nvars) throw ParseError("literal out of range: " + std::to_string(l));
            cur.push_back(int(l));
        }
        if (!ls.eof()) throw ParseError("bad token in DIMACS line: " + line);
    }
    if (!header) throw ParseError("missing DIMACS header");
    if (!cur.empty()) throw ParseError("unterminated clause");
    if (f.clauses.size() != declared) throw ParseError("clause count does not match header");
    f.auxiliary.assign(f.nvars, false);
    for (auto v : aux) {
        if (v < 1 || v > f.nvars) throw ParseError("auxiliary variable out of range");
        f.auxiliary[v - 1] = true;
    }
    return f;
}

Cnf to_3sat(const Cnf& f)
{
    Cnf g;
    g.nvars = f.nvars;
    g.auxiliary = f.auxiliary;
    g.auxiliary.resize(f.nvars, false);
    auto fresh = [&] {
        g.auxiliary.push_back(true);
        return int(++g.nvars);
    };
    for (const auto& c : f.clauses) {
        if (c.empty()) throw ArityError("empty clause cannot be rewritten");
        if (c.size() == 1) {
            int a = fresh(), b = fresh();
            for (int s : {1, -1})
                for (int t : {1, -1}) g.clauses.push_back({c[0], s * a, t * b});
        } else if (c.size() == 2) {
            int a = fresh();
            g.clauses.push_back({c[0], c[1], a});
            g.clauses.push_back({c[0], c[1], -a});
        } else if (c.size() == 3) {
            g.clauses.push_back(c);
        } else {
            int y = fresh();
            g.clauses.push_back({c[0], c[1], y});
            for (std::size_t i = 2; i + 2 < c.size(); ++i) {
                int z = fresh();
                g.clauses.push_back({-y, c[i], z});
                y = z;
            }
            g.clauses.push_back({-y, c[c.size() - 2], c.back()});
        }
    }
    return g;
}

std::vector<std::vector<bool>> all_models(const Cnf& f, std::size_t cap)
{
    if (f.nvars >= 63 || (std::uint64_t(1) << f.nvars) > cap)
        throw BudgetExceeded("2^" + std::to_string(f.nvars) + " assignments exceed the cap");
    std::vector<std::vector<bool>> out;
    std::vector<bool> a(f.nvars);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << f.nvars); ++bits) {
        for (std::size_t v = 0; v < f.nvars; ++v) a[v] = bits >> v & 1;
        if (f.eval(a)) out.push_back(a);
    }
    return out;
}

Cnf induced_cnf(const ModelSpec& spec)
{
    spec.validate();
    if (spec.blocks.empty()) throw ArityError("induced formula needs a block spec");
    std::vector<int> blockOf(spec.n() + 1);
    for (std::size_t k = 0; k < spec.blocks.size(); ++k)
        for (auto i : spec.blocks[k]) blockOf[i] = int(k + 1);
    auto literal = [&](std::size_t f) {
        std::size_t i = (f + 1) / 2;
        return f % 2 == 0 ? blockOf[i] : -blockOf[i];
    };
    Cnf c;
    c.nvars = spec.blocks.size();
    c.auxiliary.assign(c.nvars, false);
    std::set<std::vector<int>> seen;
    auto add = [&](std::initializer_list<std::size_t> forms) {
        std::set<int> lits;
        for (auto f : forms) lits.insert(literal(f));
        for (int l : lits)
            if (lits.count(-l)) return;
        std::vector<int> cl(lits.begin(), lits.end());
        if (seen.insert(cl).second) c.clauses.push_back(cl);
    };
    for (const auto& cl : spec.clauses2) add({cl[0], cl[1]});
    for (const auto& cl : spec.clauses3) add({cl[0], cl[1], cl[2]});
    return c;
}

} // namespace vf
