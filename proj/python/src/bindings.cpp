#include "tofh/equivalence.hpp"
#include "tofh/lattice.hpp"
#include "tofh/proof.hpp"
#include "tofh/schemas.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace tofh;

namespace {

Word to_word(const py::object& o) {
    if (py::isinstance<py::str>(o)) return parse_word(o.cast<std::string>());
    return o.cast<Word>();
}

std::vector<std::vector<std::string>> matrix_rows(const GateMatrix& m) {
    std::vector<std::vector<std::string>> rows(m.dim(), std::vector<std::string>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) rows[i][j] = to_string(m.at(i, j));
    return rows;
}

}  // namespace

PYBIND11_MODULE(_tofh, m) {
    m.doc() = "exact Toffoli-Hadamard circuit semantics and presentations";

    m.def("parse_word", &parse_word);
    m.def("format_word", &format_word);
    m.def("matrix", [](const py::object& w) { return matrix_rows(word_matrix(to_word(w))); },
          "entries of the 8x8 matrix of a word, as strings");
    m.def("sde", [](const py::object& w) { return max_sde(word_matrix(to_word(w))); });

    py::class_<NormalForm>(m, "NormalForm")
        .def_readonly("body", &NormalForm::body)
        .def_readonly("h_exp", &NormalForm::h_exp)
        .def("__repr__", [](const NormalForm& nf) {
            return "NormalForm('" + format_word(nf.body) + "', h_exp=" + std::to_string(nf.h_exp) + ")";
        });
    m.def("normalize_h", [](const py::object& w) { return normalize_h(to_word(w)); });
    m.def("circuits_equal", [](const py::object& a, const py::object& b) {
        return circuits_equal(to_word(a), to_word(b)).equal;
    });
    m.def("toffoli_count", [](const py::object& w) { return toffoli_report(to_word(w)).count; });

    m.def("verify_table", [](const std::string& name, std::size_t n) {
        Presentation p = builtin_presentation(name, n);
        std::vector<std::string> bad;
        for (const auto& r : p.relations)
            if (!relation_sound(r, *p.interp)) bad.push_back(r.id);
        return py::make_tuple(p.relations.size(), bad);
    }, py::arg("name"), py::arg("n") = 8);

    m.def("count_all", [](std::size_t n) {
        CountReport rep = count_all(n);
        py::dict d;
        py::dict rows;
        for (const auto& r : rep.rows) rows[py::str(r.name)] = py::make_tuple(r.enumerated, r.formula);
        d["rows"] = rows;
        d["linear_total"] = rep.linear_total;
        d["partial_total"] = rep.partial_total;
        d["total"] = rep.total;
        return d;
    }, py::arg("n") = 8);

    m.def("root_counts", [] { return py::make_tuple(e8_roots().size(), positive_roots(simple_roots()).size()); });

    m.def("check_proof", [](const std::string& path) {
        ProofReport rep = check_proof(load_proof(path, builtin_resolver()));
        py::dict d;
        d["indexed"] = rep.indexed;
        d["wellfounded"] = rep.wellfounded;
        d["valid"] = rep.valid;
        d["acyclic"] = rep.acyclic;
        d["cycle"] = rep.cycle;
        d["accepted"] = rep.accepted();
        return d;
    });

    m.def("derive", [](const py::object& u, const py::object& v, const std::string& table, std::size_t max_steps)
              -> py::object {
        Presentation p = builtin_presentation(table);
        SearchOptions opt;
        opt.max_steps = max_steps;
        auto found = derive_search(to_word(u), to_word(v), p.relations, opt);
        if (!found) return py::none();
        py::list out;
        for (const auto& s : *found)
            out.append(py::make_tuple(s.relation_id, s.position, s.direction == Direction::Forward ? "fwd" : "rev"));
        return out;
    }, py::arg("u"), py::arg("v"), py::arg("table"), py::arg("max_steps") = 12);

    m.def("reindex", [](const std::vector<int>& images, const py::object& w) {
        Permutation s;
        s.images = images;
        Word word = to_word(w);
        if (!reindex_valid(s, word)) throw py::value_error("not a valid reindexing");
        return reindex_word(s, word);
    });
    m.def("conjugation_witness", [](const std::vector<int>& images, const std::string& g) {
        Permutation s;
        s.images = images;
        return conjugation_witness(s, g);
    });
}
