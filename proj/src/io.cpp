#include "ufm/io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "ufm/reductions.hpp"

namespace ufm {

namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(std::istream &in) {
    std::vector<Line> lines;
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) line.tokens.push_back(tok);
        if (!line.tokens.empty()) lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void fail(const std::string &file, int line, const std::string &msg) {
    throw ParseError(file + ":" + std::to_string(line) + ": " + msg);
}

Rat parse_rat(const std::string &file, int line, const std::string &tok) {
    try {
        return Rat::parse(tok);
    } catch (const std::invalid_argument &e) {
        fail(file, line, e.what());
    }
}

int name_index(const std::vector<std::string> &names, const std::string &name) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

// "+name" or "-name"
VertexId parse_signed(const std::string &file, int line, const Instance &inst,
                      const std::string &tok) {
    if (tok.size() < 2 || (tok[0] != '+' && tok[0] != '-'))
        fail(file, line, "expected +name or -name, got '" + tok + "'");
    Side side = tok[0] == '+' ? Side::plus : Side::minus;
    std::string name = tok.substr(1);
    int idx = name_index(side == Side::plus ? inst.plus_names : inst.minus_names, name);
    if (idx < 0) fail(file, line, "unknown vertex '" + tok + "'");
    return {side, idx};
}

std::string signed_name(const Instance &inst, VertexId v) {
    return (v.side == Side::plus ? "+" : "-") + inst.name_of(v);
}

void add_names(const std::string &file, const Line &line,
               std::vector<std::string> &names) {
    for (std::size_t i = 1; i < line.tokens.size(); ++i) {
        const std::string &n = line.tokens[i];
        if (name_index(names, n) >= 0)
            fail(file, line.number, "duplicate vertex name '" + n + "'");
        names.push_back(n);
    }
}

Instance parse_ufm(const std::string &file, const std::vector<Line> &lines) {
    Instance inst;
    bool t_set = false;
    std::string family_kind = "none";
    int family_line = 0;
    std::vector<std::vector<std::string>> raw_sets;
    std::vector<int> raw_set_lines;
    std::vector<Line> edge_lines, twin_lines, arc_lines;

    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line &line = lines[li];
        const std::string &rec = line.tokens[0];
        if (rec == "t") {
            if (line.tokens.size() != 2) fail(file, line.number, "t needs one integer");
            try {
                inst.t = std::stoi(line.tokens[1]);
            } catch (const std::exception &) {
                fail(file, line.number, "bad integer '" + line.tokens[1] + "'");
            }
            if (inst.t < 1) fail(file, line.number, "t must be positive");
            t_set = true;
        } else if (rec == "vplus") {
            add_names(file, line, inst.plus_names);
        } else if (rec == "vminus") {
            add_names(file, line, inst.minus_names);
        } else if (rec == "family") {
            if (line.tokens.size() != 2) fail(file, line.number, "family needs one name");
            family_kind = line.tokens[1];
            family_line = line.number;
        } else if (rec == "set") {
            raw_sets.emplace_back(line.tokens.begin() + 1, line.tokens.end());
            raw_set_lines.push_back(line.number);
        } else if (rec == "twin") {
            twin_lines.push_back(line);
        } else if (rec == "arc") {
            arc_lines.push_back(line);
        } else if (rec == "edge") {
            edge_lines.push_back(line);
        } else {
            fail(file, line.number, "unknown record '" + rec + "'");
        }
    }

    for (const auto &n : inst.plus_names) inst.graph.add_vertex(vplus(name_index(inst.plus_names, n)));
    for (const auto &n : inst.minus_names) inst.graph.add_vertex(vminus(name_index(inst.minus_names, n)));

    for (const Line &line : edge_lines) {
        if (line.tokens.size() != 3 && line.tokens.size() != 4)
            fail(file, line.number, "edge needs two endpoints and an optional weight");
        int u = name_index(inst.plus_names, line.tokens[1]);
        if (u < 0) fail(file, line.number, "unknown plus vertex '" + line.tokens[1] + "'");
        int v = name_index(inst.minus_names, line.tokens[2]);
        if (v < 0) fail(file, line.number, "unknown minus vertex '" + line.tokens[2] + "'");
        Rat w = line.tokens.size() == 4 ? parse_rat(file, line.number, line.tokens[3]) : Rat(0);
        inst.graph.add_edge(vplus(u), vminus(v), w);
    }

    TwinPairing twins;
    for (const Line &line : twin_lines) {
        if (line.tokens.size() != 3) fail(file, line.number, "twin needs two names");
        int u = name_index(inst.plus_names, line.tokens[1]);
        if (u < 0) fail(file, line.number, "unknown plus vertex '" + line.tokens[1] + "'");
        int v = name_index(inst.minus_names, line.tokens[2]);
        if (v < 0) fail(file, line.number, "unknown minus vertex '" + line.tokens[2] + "'");
        twins.set(u, v);
        inst.twin_pairs.emplace_back(u, v);
    }

    for (const Line &line : arc_lines) {
        if (line.tokens.size() != 3) fail(file, line.number, "arc needs two names");
        int t = name_index(inst.minus_names, line.tokens[1]);
        if (t < 0) fail(file, line.number, "unknown vertex '" + line.tokens[1] + "'");
        int h = name_index(inst.minus_names, line.tokens[2]);
        if (h < 0) fail(file, line.number, "unknown vertex '" + line.tokens[2] + "'");
        inst.arcs.emplace_back(t, h);
    }

    for (std::size_t i = 0; i < raw_sets.size(); ++i) {
        VertexSet s;
        for (const auto &tok : raw_sets[i]) s.insert(parse_signed(file, raw_set_lines[i], inst, tok));
        if (s.empty()) fail(file, raw_set_lines[i], "empty set");
        inst.member_sets.push_back(std::move(s));
    }

    auto implied_t = [&](int value) {
        if (t_set && inst.t != value)
            fail(file, family_line, "family fixes t to " + std::to_string(value));
        inst.t = value;
    };
    auto need_twins = [&]() {
        if (inst.twin_pairs.empty()) fail(file, family_line, "family needs twin records");
    };

    inst.family_kind = family_kind;
    if (family_kind == "none") {
        inst.family = std::make_shared<EmptyFamily>(inst.t);
    } else if (family_kind == "explicit") {
        inst.family = std::make_shared<ExplicitFamily>(inst.t, inst.member_sets);
    } else if (family_kind == "squarefree") {
        implied_t(2);
        inst.family = std::make_shared<KttFreeFamily>(2);
    } else if (family_kind == "kttfree") {
        inst.family = std::make_shared<KttFreeFamily>(inst.t);
    } else if (family_kind == "oddsymmetric") {
        implied_t(1);
        need_twins();
        inst.family = std::make_shared<OddSymmetricFamily>(twins);
    } else if (family_kind == "trianglefree") {
        implied_t(1);
        need_twins();
        inst.family = std::make_shared<TriangleTwinFamily>(twins);
    } else if (family_kind == "c4k2free") {
        implied_t(2);
        need_twins();
        if (inst.twin_pairs.size() != inst.plus_names.size() ||
            inst.twin_pairs.size() != inst.minus_names.size())
            fail(file, family_line, "c4k2free needs a full twin pairing");
        inst.family = std::make_shared<C4k2Family>(twins);
    } else if (family_kind == "matroid") {
        implied_t(1);
        std::vector<std::set<int>> circuits;
        for (const auto &s : inst.member_sets) {
            std::set<int> c;
            for (const auto &v : s) {
                if (v.side != Side::plus)
                    fail(file, family_line, "matroid circuits use plus names only");
                c.insert(v.index);
            }
            circuits.push_back(std::move(c));
        }
        inst.family = std::make_shared<MatroidCircuitFamily>(
            static_cast<int>(inst.plus_names.size()), circuits);
    } else if (family_kind == "branching") {
        implied_t(1);
        if (inst.arcs.size() != inst.plus_names.size())
            fail(file, family_line, "branching needs one arc record per plus vertex");
        inst.family = std::make_shared<DirectedCycleFamily>(inst.arcs);
    } else {
        fail(file, family_line ? family_line : 1, "unknown family '" + family_kind + "'");
    }
    return inst;
}

struct SourceData {
    std::vector<std::string> names;
    UndirectedGraph ug;
    Digraph dg;
    std::vector<std::vector<std::string>> raw_sets;
    std::vector<int> raw_set_lines;
    std::map<std::string, Rat> weights;
};

SourceData parse_source(const std::string &file, const std::vector<Line> &lines,
                        bool want_arcs, bool allow_sets) {
    SourceData src;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const Line &line = lines[li];
        const std::string &rec = line.tokens[0];
        if (rec == "vertex") {
            add_names(file, line, src.names);
        } else if (rec == "edge" || rec == "arc") {
            if ((rec == "arc") != want_arcs)
                fail(file, line.number, "record '" + rec + "' not valid for this kind");
            if (line.tokens.size() != 3 && line.tokens.size() != 4)
                fail(file, line.number, rec + " needs two endpoints and an optional weight");
            int u = name_index(src.names, line.tokens[1]);
            if (u < 0) fail(file, line.number, "unknown vertex '" + line.tokens[1] + "'");
            int v = name_index(src.names, line.tokens[2]);
            if (v < 0) fail(file, line.number, "unknown vertex '" + line.tokens[2] + "'");
            Rat w = line.tokens.size() == 4 ? parse_rat(file, line.number, line.tokens[3])
                                            : Rat(0);
            if (want_arcs)
                src.dg.add_arc(u, v, w);
            else
                src.ug.add_edge(u, v, w);
        } else if (rec == "set" && allow_sets) {
            src.raw_sets.emplace_back(line.tokens.begin() + 1, line.tokens.end());
            src.raw_set_lines.push_back(line.number);
        } else if (rec == "weight" && allow_sets) {
            if (line.tokens.size() != 3) fail(file, line.number, "weight needs a name and a value");
            src.weights[line.tokens[1]] = parse_rat(file, line.number, line.tokens[2]);
        } else {
            fail(file, line.number, "unknown record '" + rec + "'");
        }
    }
    src.ug.n = static_cast<int>(src.names.size());
    src.dg.n = static_cast<int>(src.names.size());
    return src;
}

void identity_twins(Instance &inst, int n) {
    for (int i = 0; i < n; ++i) inst.twin_pairs.emplace_back(i, i);
}

}  // namespace

VertexId Instance::vertex_by_name(Side side, const std::string &name) const {
    int idx = name_index(side == Side::plus ? plus_names : minus_names, name);
    if (idx < 0) throw std::invalid_argument("unknown vertex name '" + name + "'");
    return {side, idx};
}

Instance parse_instance(std::istream &in, const std::string &filename) {
    std::vector<Line> lines = tokenize(in);
    if (lines.empty()) throw ParseError(filename + ":1: empty instance");
    if (lines[0].tokens[0] != "problem" || lines[0].tokens.size() != 2)
        fail(filename, lines[0].number, "first record must be 'problem <kind>'");
    const std::string kind = lines[0].tokens[1];

    if (kind == "ufm") return parse_ufm(filename, lines);

    Instance inst;
    inst.kind = kind;
    if (kind == "matching") {
        SourceData src = parse_source(filename, lines, false, false);
        ReductionWitness w;
        Digraph d = encode_matching_as_even_factor(src.ug, w);
        EncodedEvenFactor enc = encode_even_factor(d, true);
        inst.graph = std::move(enc.graph);
        inst.family = std::make_shared<OddSymmetricFamily>(std::move(enc.family));
        inst.plus_names = inst.minus_names = src.names;
        inst.family_kind = "oddsymmetric";
        identity_twins(inst, src.ug.n);
        inst.t = 1;
        inst.source_value_factor = 2;
    } else if (kind == "evenfactor") {
        SourceData src = parse_source(filename, lines, true, false);
        EncodedEvenFactor enc = [&] {
            try {
                return encode_even_factor(src.dg, true);
            } catch (const std::invalid_argument &e) {
                fail(filename, lines[0].number, e.what());
            }
        }();
        inst.graph = std::move(enc.graph);
        inst.family = std::make_shared<OddSymmetricFamily>(std::move(enc.family));
        inst.plus_names = inst.minus_names = src.names;
        inst.family_kind = "oddsymmetric";
        identity_twins(inst, src.dg.n);
        inst.t = 1;
    } else if (kind == "trianglefree") {
        SourceData src = parse_source(filename, lines, false, false);
        EncodedTriangleFree enc = encode_triangle_free(src.ug);
        inst.graph = std::move(enc.graph);
        inst.family = std::make_shared<TriangleTwinFamily>(std::move(enc.family));
        inst.plus_names = inst.minus_names = src.names;
        inst.family_kind = "trianglefree";
        identity_twins(inst, src.ug.n);
        inst.t = 1;
    } else if (kind == "branching") {
        SourceData src = parse_source(filename, lines, true, false);
        EncodedBranching enc = encode_branching(src.dg);
        inst.graph = std::move(enc.graph);
        inst.family = std::make_shared<DirectedCycleFamily>(std::move(enc.family));
        for (std::size_t i = 0; i < src.dg.arcs.size(); ++i)
            inst.plus_names.push_back("a" + std::to_string(i));
        inst.minus_names = src.names;
        inst.family_kind = "branching";
        for (const auto &a : src.dg.arcs) inst.arcs.emplace_back(a.tail, a.head);
        inst.t = 1;
    } else if (kind == "matroid") {
        SourceData src = parse_source(filename, lines, false, true);
        std::vector<std::set<int>> circuits;
        for (std::size_t i = 0; i < src.raw_sets.size(); ++i) {
            std::set<int> c;
            for (const auto &tok : src.raw_sets[i]) {
                int e = name_index(src.names, tok);
                if (e < 0) fail(filename, src.raw_set_lines[i], "unknown element '" + tok + "'");
                c.insert(e);
            }
            circuits.push_back(std::move(c));
        }
        std::vector<Rat> weights(src.names.size());
        for (const auto &[name, w] : src.weights) {
            int e = name_index(src.names, name);
            if (e < 0) throw ParseError(filename + ": unknown element '" + name + "' in weight record");
            weights[e] = w;
        }
        EncodedMatroid enc =
            encode_matroid(static_cast<int>(src.names.size()), circuits, weights);
        inst.graph = std::move(enc.graph);
        inst.family = std::make_shared<MatroidCircuitFamily>(std::move(enc.family));
        inst.plus_names = inst.minus_names = src.names;
        inst.family_kind = "matroid";
        identity_twins(inst, static_cast<int>(src.names.size()));
        for (const auto &c : circuits) {
            VertexSet s;
            for (int e : c) s.insert(vplus(e));
            inst.member_sets.push_back(std::move(s));
        }
        inst.t = 1;
    } else {
        fail(filename, lines[0].number, "unknown problem kind '" + kind + "'");
    }
    return inst;
}

Instance load_instance(const std::string &path) {
    if (path == "-") return parse_instance(std::cin, "<stdin>");
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_instance(in, path);
}

Solution parse_solution(std::istream &in, const std::string &filename,
                        const Instance &inst) {
    Solution s;
    bool value_seen = false;
    std::vector<VertexSet> cert_members;
    for (const Line &line : tokenize(in)) {
        const std::string &rec = line.tokens[0];
        if (rec == "value") {
            if (line.tokens.size() != 2) fail(filename, line.number, "value needs one rational");
            s.value = parse_rat(filename, line.number, line.tokens[1]);
            value_seen = true;
        } else if (rec == "edge") {
            if (line.tokens.size() != 3 && line.tokens.size() != 4)
                fail(filename, line.number, "edge needs two endpoints and an optional multiplicity");
            int u = name_index(inst.plus_names, line.tokens[1]);
            if (u < 0) fail(filename, line.number, "unknown plus vertex '" + line.tokens[1] + "'");
            int v = name_index(inst.minus_names, line.tokens[2]);
            if (v < 0) fail(filename, line.number, "unknown minus vertex '" + line.tokens[2] + "'");
            int mult = 1;
            if (line.tokens.size() == 4) {
                try {
                    mult = std::stoi(line.tokens[3]);
                } catch (const std::exception &) {
                    fail(filename, line.number, "bad multiplicity '" + line.tokens[3] + "'");
                }
            }
            if (mult < 1) fail(filename, line.number, "multiplicity must be positive");
            // parallel edges: heaviest first, then smallest id
            std::vector<int> candidates;
            for (const auto &[id, e] : inst.graph.edges())
                if (e.end_plus == vplus(u) && e.end_minus == vminus(v) && !s.edges.count(id))
                    candidates.push_back(id);
            std::stable_sort(candidates.begin(), candidates.end(), [&](int a, int b) {
                return inst.graph.edge(b).weight < inst.graph.edge(a).weight;
            });
            if (mult > static_cast<int>(candidates.size()))
                fail(filename, line.number, "multiplicity exceeds the parallel edges available");
            for (int i = 0; i < mult; ++i) s.edges.insert(candidates[i]);
        } else if (rec == "certX") {
            s.has_certificate = true;
            for (std::size_t i = 1; i < line.tokens.size(); ++i)
                s.certificate.x.insert(parse_signed(filename, line.number, inst, line.tokens[i]));
        } else if (rec == "certset") {
            s.has_certificate = true;
            VertexSet m;
            for (std::size_t i = 1; i < line.tokens.size(); ++i)
                m.insert(parse_signed(filename, line.number, inst, line.tokens[i]));
            if (m.empty()) fail(filename, line.number, "empty certificate set");
            cert_members.push_back(std::move(m));
        } else if (rec == "dual") {
            if (line.tokens.size() < 3) fail(filename, line.number, "truncated dual record");
            s.has_dual = true;
            const std::string &which = line.tokens[1];
            if (which == "p") {
                if (line.tokens.size() != 4) fail(filename, line.number, "dual p needs a vertex and a value");
                VertexId v = parse_signed(filename, line.number, inst, line.tokens[2]);
                s.dual.p[v] = parse_rat(filename, line.number, line.tokens[3]);
            } else if (which == "q") {
                if (line.tokens.size() != 4) fail(filename, line.number, "dual q needs an edge id and a value");
                int id;
                try {
                    id = std::stoi(line.tokens[2]);
                } catch (const std::exception &) {
                    fail(filename, line.number, "bad edge id '" + line.tokens[2] + "'");
                }
                if (!inst.graph.has_edge(id)) fail(filename, line.number, "unknown edge id " + line.tokens[2]);
                s.dual.q[id] = parse_rat(filename, line.number, line.tokens[3]);
            } else if (which == "r") {
                if (line.tokens.size() < 4) fail(filename, line.number, "dual r needs a value and a set");
                DualSet ds;
                ds.value = parse_rat(filename, line.number, line.tokens[2]);
                for (std::size_t i = 3; i < line.tokens.size(); ++i)
                    ds.set.insert(parse_signed(filename, line.number, inst, line.tokens[i]));
                ds.bound = dual_set_bound(inst.graph, *inst.family, ds.set);
                s.dual.r.push_back(std::move(ds));
            } else {
                fail(filename, line.number, "unknown dual record '" + which + "'");
            }
        } else {
            fail(filename, line.number, "unknown record '" + rec + "'");
        }
    }
    if (!value_seen) throw ParseError(filename + ": missing value record");

    if (s.has_certificate) {
        s.certificate.t = inst.t;
        VertexSet rest;
        for (const auto &v : inst.graph.vertices())
            if (!s.certificate.x.count(v)) rest.insert(v);
        for (auto &m : cert_members) {
            CertificateMember cm;
            cm.set = m;
            cm.bound = inst.family->certificate_bound(inst.graph, m);
            for (const auto &v : m) rest.erase(v);
            s.certificate.members.push_back(std::move(cm));
        }
        s.certificate.component_edge_count =
            static_cast<long long>(induced_edges(inst.graph, rest).size());
    }
    if (s.has_dual) {
        s.dual.t = inst.t;
        for (const auto &v : inst.graph.vertices()) s.dual.p.try_emplace(v, Rat(0));
    }
    return s;
}

Solution load_solution(const std::string &path, const Instance &inst) {
    if (path == "-") return parse_solution(std::cin, "<stdin>", inst);
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_solution(in, path, inst);
}

void write_solution(std::ostream &out, const Instance &inst, const Solution &s) {
    out << "value " << s.value.str() << "\n";
    std::map<std::pair<int, int>, int> mult;
    std::vector<std::pair<int, int>> order;
    for (int id : s.edges) {
        const Edge &e = inst.graph.edge(id);
        std::pair<int, int> key{e.end_plus.index, e.end_minus.index};
        if (mult[key]++ == 0) order.push_back(key);
    }
    for (const auto &key : order) {
        out << "edge " << inst.plus_names[key.first] << " " << inst.minus_names[key.second];
        if (mult[key] > 1) out << " " << mult[key];
        out << "\n";
    }
    if (s.has_certificate) {
        out << "certX";
        for (const auto &v : s.certificate.x) out << " " << signed_name(inst, v);
        out << "\n";
        for (const auto &m : s.certificate.members) {
            out << "certset";
            for (const auto &v : m.set) out << " " << signed_name(inst, v);
            out << "\n";
        }
    }
    if (s.has_dual) {
        for (const auto &[v, val] : s.dual.p)
            out << "dual p " << signed_name(inst, v) << " " << val.str() << "\n";
        for (const auto &[id, val] : s.dual.q)
            if (!val.is_zero()) out << "dual q " << id << " " << val.str() << "\n";
        for (const auto &ds : s.dual.r) {
            out << "dual r " << ds.value.str();
            for (const auto &v : ds.set) out << " " << signed_name(inst, v);
            out << "\n";
        }
    }
}

void write_instance(std::ostream &out, const Instance &inst) {
    out << "problem ufm\n";
    out << "t " << inst.t << "\n";
    out << "vplus";
    for (const auto &n : inst.plus_names) out << " " << n;
    out << "\nvminus";
    for (const auto &n : inst.minus_names) out << " " << n;
    out << "\nfamily " << inst.family_kind << "\n";
    for (const auto &[u, v] : inst.twin_pairs)
        out << "twin " << inst.plus_names[u] << " " << inst.minus_names[v] << "\n";
    for (const auto &s : inst.member_sets) {
        out << "set";
        for (const auto &v : s) out << " " << signed_name(inst, v);
        out << "\n";
    }
    for (const auto &[t, h] : inst.arcs)
        out << "arc " << inst.minus_names[t] << " " << inst.minus_names[h] << "\n";
    for (const auto &[id, e] : inst.graph.edges())
        out << "edge " << inst.plus_names[e.end_plus.index] << " "
            << inst.minus_names[e.end_minus.index] << " " << e.weight.str() << "\n";
}

std::string verify_solution_file(const Instance &inst, const Solution &s) {
    if (!inst.family->check_original(inst.graph, s.edges)) {
        // name something concrete when the family can enumerate
        for (const auto &v : inst.graph.vertices())
            if (degree(inst.graph, s.edges, v) > inst.t)
                return "degree bound violated at vertex " + signed_name(inst, v);
        return "solution saturates a forbidden set";
    }
    if (s.has_dual) {
        if (s.value != solution_weight(inst.graph, s.edges))
            return "value line does not match the solution weight";
        return verify_dual_certificate(inst.graph, *inst.family, s.edges, s.dual);
    }
    if (s.value != Rat(static_cast<long long>(s.edges.size())))
        return "value line does not match the solution size";
    if (s.has_certificate)
        return verify_weak_duality(inst.graph, *inst.family, s.edges, s.certificate, true);
    return "";
}

}  // namespace ufm
