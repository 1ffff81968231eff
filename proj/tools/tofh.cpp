#include "tofh/equivalence.hpp"
#include "tofh/lattice.hpp"
#include "tofh/proof.hpp"
#include "tofh/schemas.hpp"
#include "tofh/tietze.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace tofh;
using nlohmann::json;

namespace {

bool as_json = false;

std::string slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream s;
        s << std::cin.rdbuf();
        return s.str();
    }
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// first non-comment, non-blank line
Word read_word(const std::string& path) {
    std::istringstream in(slurp(path));
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (line.find_first_not_of(" \t\r") != std::string::npos) return parse_word(line);
    }
    return {};
}

Presentation presentation_arg(const std::string& arg, std::size_t n = 8) {
    if (std::filesystem::exists(arg)) return load_presentation(arg, builtin_resolver());
    return builtin_presentation(arg, n);
}

std::vector<std::string> names_arg(const std::string& arg) {
    std::vector<std::string> out;
    std::istringstream in(arg);
    std::string tok;
    while (in >> tok) {
        std::istringstream parts(tok);
        std::string piece;
        while (std::getline(parts, piece, ','))
            if (!piece.empty()) out.push_back(piece);
    }
    if (out.size() == 1) {
        try {
            return named_alphabet(out[0]);
        } catch (const std::exception&) {
        }
    }
    return out;
}

json steps_json(const std::vector<RewriteStep>& steps) {
    json a = json::array();
    for (const auto& s : steps)
        a.push_back({{"relation", s.relation_id}, {"position", s.position},
                     {"direction", s.direction == Direction::Forward ? "fwd" : "rev"}});
    return a;
}

void emit(const json& j, const std::string& text) {
    if (as_json)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << text;
}

int cmd_eq(const std::string& f1, const std::string& f2) {
    Word a = read_word(f1), b = read_word(f2);
    EqVerdict v = circuits_equal(a, b);
    std::ostringstream t;
    t << (v.equal ? "equal" : "unequal");
    if (v.witness_column) t << " (columns differ at " << *v.witness_column << ")";
    t << "\n";
    json j = {{"equal", v.equal}, {"h_exp", v.h_exp}};
    j["witness_column"] = v.witness_column ? json(*v.witness_column) : json(nullptr);
    emit(j, t.str());
    return v.equal ? 0 : 1;
}

int cmd_normalize(const std::string& f) {
    Word w = read_word(f);
    NormalForm nf = normalize_h(w);
    auto tof = toffoli_report(nf.body);
    std::ostringstream t;
    t << "body: " << format_word(nf.body) << "\nh_exp: " << nf.h_exp << "\ntoffoli: " << tof.count
      << (tof.within_bound ? "" : " (exceeds bound)") << "\n";
    emit({{"body", format_word(nf.body)}, {"h_exp", nf.h_exp}, {"toffoli_count", tof.count},
          {"within_bound", tof.within_bound}},
         t.str());
    return 0;
}

int cmd_verify(const std::string& set, std::size_t n) {
    Presentation p = presentation_arg(set, n);
    if (!p.interp) p.interp = standard_interpretation(p.alphabet, n);
    std::size_t bad = 0;
    json fails = json::array();
    std::ostringstream t;
    for (const auto& r : p.relations)
        if (!relation_sound(r, *p.interp)) {
            ++bad;
            fails.push_back(r.id);
            t << "unsound " << format_relation(r) << "\n";
        }
    t << p.relations.size() - bad << "/" << p.relations.size() << " relations sound\n";
    emit({{"relations", p.relations.size()}, {"sound", p.relations.size() - bad}, {"unsound", fails}}, t.str());
    return bad ? 1 : 0;
}

int cmd_check_proof(const std::string& f) {
    ProofReport rep = check_proof(load_proof(f, builtin_resolver()));
    std::ostringstream t;
    auto yn = [](bool b) { return b ? "yes" : "no"; };
    t << "indexed: " << yn(rep.indexed) << "\nwellfounded: " << yn(rep.wellfounded) << "\nvalid: " << yn(rep.valid)
      << "\nacyclic: " << yn(rep.acyclic) << "\n";
    if (!rep.cycle.empty()) {
        t << "cycle:";
        for (const auto& c : rep.cycle) t << " " << c;
        t << "\n";
    }
    json ds = json::array();
    for (const auto& d : rep.derivations) {
        if (!d.message.empty()) t << d.name << ": " << d.message << "\n";
        for (const auto& n : d.notes) t << d.name << ": " << n << "\n";
        ds.push_back({{"name", d.name}, {"wellfounded", d.wellfounded}, {"valid", d.valid},
                      {"message", d.message}, {"notes", d.notes}});
    }
    t << (rep.accepted() ? "ACCEPTED" : "REJECTED") << "\n";
    emit({{"indexed", rep.indexed}, {"wellfounded", rep.wellfounded}, {"valid", rep.valid}, {"acyclic", rep.acyclic},
          {"cycle", rep.cycle}, {"accepted", rep.accepted()}, {"derivations", ds}},
         t.str());
    return rep.accepted() ? 0 : 1;
}

int cmd_rewrite(const std::string& from, const std::string& to, const std::string& rels, const SearchOptions& opt) {
    Presentation p = presentation_arg(rels);
    Word u = parse_word(from), v = parse_word(to);
    SearchStats st;
    auto found = derive_search(u, v, p.relations, opt, &st);
    std::ostringstream t;
    json j = {{"found", bool(found)}, {"expanded", st.expanded}, {"visited", st.visited}, {"truncated", st.truncated}};
    if (found) {
        Word cur = u;
        t << format_word(cur) << "\n";
        for (const auto& s : *found) {
            cur = apply_step(cur, s, p.relations);
            t << "  " << format_step(s) << "\n" << format_word(cur) << "\n";
        }
        j["steps"] = steps_json(*found);
    } else {
        t << "no derivation within " << opt.max_steps << " steps" << (st.truncated ? " (frontier truncated)" : "") << "\n";
    }
    emit(j, t.str());
    return found ? 0 : 1;
}

int cmd_count(std::size_t n) {
    CountReport rep = count_all(n);
    PublishedCounts pub;
    std::ostringstream t;
    json rows = json::array();
    t << "schema\tlevels\tkind\tenumerated\tformula\n";
    for (const auto& r : rep.rows) {
        t << r.name << "\t" << r.levels << "\t" << (r.linear ? "linear" : "partial") << "\t" << r.enumerated << "\t"
          << r.formula << (r.enumerated == r.formula ? "" : "\tMISMATCH") << "\n";
        rows.push_back({{"schema", r.name}, {"levels", r.levels}, {"linear", r.linear}, {"enumerated", r.enumerated},
                        {"formula", r.formula}});
    }
    t << "linear\t" << rep.linear_total << "\npartial\t" << rep.partial_total << "\ntotal\t" << rep.total << "\n";
    json j = {{"n", n}, {"rows", rows}, {"linear_total", rep.linear_total}, {"partial_total", rep.partial_total},
              {"total", rep.total}};
    if (n == 8) {
        auto flag = [&](const char* what, std::size_t ours, std::size_t printed) {
            if (ours != printed)
                t << "delta " << what << ": enumerated " << ours << ", printed " << printed << "\n";
        };
        flag("linear", rep.linear_total, pub.linear_total);
        flag("partial", rep.partial_total, pub.partial_total);
        flag("total", rep.total, pub.total);
        std::size_t m3 = 0;
        for (const auto& [m, c] : rep.linear_by_levels)
            if (m == 3) m3 = c;
        flag("m=3", m3, pub.m3);
        j["printed"] = {{"linear_total", pub.linear_total}, {"partial_total", pub.partial_total},
                        {"total", pub.total}, {"m3", pub.m3}};
    }
    emit(j, t.str());
    return 0;
}

int cmd_emit(const std::string& set, std::size_t n) {
    Presentation p = builtin_presentation(set, n);
    std::cout << format_presentation(p);
    return 0;
}

int cmd_roots() {
    auto roots = e8_roots();
    auto pos = positive_roots(simple_roots());
    std::ostringstream t;
    t << "roots " << roots.size() << "\npositive " << pos.size() << "\n";
    for (const auto& r : simple_roots()) t << "simple " << to_string(r) << "\n";
    emit({{"roots", roots.size()}, {"positive", pos.size()}}, t.str());
    return 0;
}

int cmd_minimality(const std::string& sub, const std::string& full) {
    auto mats = [](const std::vector<std::string>& names) {
        std::vector<GateMatrix> out;
        for (const auto& s : names) out.push_back(gate_matrix(s));
        return out;
    };
    auto s = names_arg(sub), f = names_arg(full);
    auto w = minimality_witness(mats(s), mats(f));
    std::ostringstream t;
    json j = {{"witness", bool(w)}};
    if (w) {
        std::vector<std::string> fails;
        for (const auto& g : f)
            if (!commutes(*w, gate_matrix(g))) fails.push_back(g);
        t << "witness commutes with the subset and not with:";
        for (const auto& g : fails) t << " " << g;
        t << "\n" << to_string(*w) << "\n";
        j["matrix"] = to_string(*w);
        j["noncommuting"] = fails;
    } else {
        t << "no witness within the search bounds\n";
    }
    emit(j, t.str());
    return w ? 0 : 1;
}

int cmd_apply_moves(const std::string& script) {
    Journal j = run_script_file(script, builtin_resolver());
    std::ostringstream t;
    json moves = json::array();
    for (const auto& m : j.moves()) {
        t << format_move(m) << "\n";
        moves.push_back(format_move(m));
    }
    t << format_presentation(j.current());
    emit({{"moves", moves}, {"generators", j.current().alphabet}, {"relations", j.current().relations.size()}}, t.str());
    return 0;
}

int cmd_reindex(const std::string& perm, const std::string& word) {
    Permutation s = Permutation::parse(perm);
    Word w = parse_word(word);
    if (!reindex_valid(s, w)) {
        std::cerr << "error: permutation is not a valid reindexing of the word\n";
        return 1;
    }
    Word img = reindex_word(s, w);
    std::ostringstream t;
    t << format_word(img) << "\n";
    json wit = json::object();
    for (const auto& g : w) {
        Word v = conjugation_witness(s, g);
        t << g << ": " << format_word(v) << "\n";
        wit[g] = format_word(v);
    }
    emit({{"image", format_word(img)}, {"witnesses", wit}}, t.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Toffoli-Hadamard presentations toolkit"};
    app.require_subcommand(1);
    app.add_flag("--json", as_json, "machine-readable output");

    std::string f1, f2, set = "R0", proof, from, to, rels, sub, full, script, perm, word;
    std::size_t n = 8;
    SearchOptions opt;

    auto* eq = app.add_subcommand("eq", "decide equality of two circuits (exit 0 equal, 1 unequal)");
    eq->add_option("file1", f1)->required();
    eq->add_option("file2", f2)->required();
    auto* norm = app.add_subcommand("normalize", "H-pushing normal form of a circuit");
    norm->add_option("file", f1)->required();
    auto* verify = app.add_subcommand("verify", "check every relation of a table against its semantics");
    verify->add_option("--set", set)->required();
    verify->add_option("--n", n);
    auto* check = app.add_subcommand("check-proof", "check a derivational proof");
    check->add_option("file", proof)->required();
    auto* rewrite = app.add_subcommand("rewrite", "bounded derivation search");
    rewrite->add_option("--from", from)->required();
    rewrite->add_option("--to", to)->required();
    rewrite->add_option("--rels", rels)->required();
    rewrite->add_option("--max-steps", opt.max_steps);
    rewrite->add_option("--max-width", opt.max_width);
    auto* count = app.add_subcommand("count", "instance counts of the multi-level schemas");
    count->add_option("--n", n);
    auto* em = app.add_subcommand("emit", "write a builtin table as a presentation file");
    em->add_option("--set", set)->required();
    em->add_option("--n", n);
    auto* roots = app.add_subcommand("roots", "E8 root counts");
    auto* mini = app.add_subcommand("minimality", "commutant witness separating two generator sets");
    mini->add_option("--sub", sub)->required();
    mini->add_option("--full", full)->required();
    auto* moves = app.add_subcommand("apply-moves", "run a Tietze move script");
    moves->add_option("script", script)->required();
    auto* reidx = app.add_subcommand("reindex", "apply a level permutation to a word");
    reidx->add_option("--perm", perm)->required();
    reidx->add_option("--word", word)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*eq) return cmd_eq(f1, f2);
        if (*norm) return cmd_normalize(f1);
        if (*verify) return cmd_verify(set, n);
        if (*check) return cmd_check_proof(proof);
        if (*rewrite) return cmd_rewrite(from, to, rels, opt);
        if (*count) return cmd_count(n);
        if (*em) return cmd_emit(set, n);
        if (*roots) return cmd_roots();
        if (*mini) return cmd_minimality(sub, full);
        if (*moves) return cmd_apply_moves(script);
        if (*reidx) return cmd_reindex(perm, word);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
