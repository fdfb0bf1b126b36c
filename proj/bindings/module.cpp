#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "courant/workbench.hpp"

namespace py = pybind11;
using namespace courant;

namespace {

Chart chart_from_names(const std::vector<std::string>& names) { return Chart(names); }

std::string run_command(const std::string& command, const std::string& document_json, int axiom_samples) {
    ProblemDocument doc = ProblemDocument::parse(Json::parse(document_json));
    ReportDocument rep;
    if (command == "check") {
        rep = cmd_check(doc, axiom_samples);
    } else if (command == "reduce") {
        rep = cmd_reduce(doc);
    } else if (command == "relate") {
        rep = cmd_relate(doc);
    } else if (command == "tdualize") {
        rep = cmd_tdualize(doc);
    } else if (command == "para-check") {
        rep = cmd_para_check(doc);
    } else {
        throw std::invalid_argument("unknown command '" + command + "'");
    }
    return rep.str();
}

std::string example_document(const std::string& name, const std::map<std::string, std::string>& params) {
    return cmd_example(name, params).dump(2);
}

}  // namespace

PYBIND11_MODULE(_courant, m) {
    m.doc() = "Exact workbench for Courant algebroids, foliated reductions and T-duality";

    py::class_<Chart>(m, "Chart")
        .def(py::init(&chart_from_names))
        .def("dim", &Chart::dim)
        .def("names", &Chart::names)
        .def("__eq__", [](const Chart& a, const Chart& b) { return a == b; })
        .def("__repr__", [](const Chart& c) {
            std::string s = "Chart([";
            for (int i = 0; i < c.dim(); ++i) s += (i ? ", " : "") + c.name(i);
            return s + "])";
        });

    py::class_<Polynomial>(m, "Polynomial")
        .def_static("parse", &Polynomial::parse)
        .def("is_zero", &Polynomial::is_zero)
        .def("degree", &Polynomial::total_degree)
        .def("derivative", &Polynomial::derivative)
        .def("str", &Polynomial::str)
        .def("__add__", [](const Polynomial& a, const Polynomial& b) { return a + b; })
        .def("__sub__", [](const Polynomial& a, const Polynomial& b) { return a - b; })
        .def("__mul__", [](const Polynomial& a, const Polynomial& b) { return a * b; })
        .def("__eq__", [](const Polynomial& a, const Polynomial& b) { return a == b; });

    py::class_<VectorField>(m, "VectorField")
        .def(py::init([](const Chart& c, const std::vector<std::string>& comps) {
            std::vector<Polynomial> p;
            for (const auto& s : comps) p.push_back(Polynomial::parse(c, s));
            return VectorField(c, p);
        }))
        .def("is_zero", &VectorField::is_zero)
        .def("__str__", &VectorField::str)
        .def("__eq__", [](const VectorField& a, const VectorField& b) { return a == b; });

    py::class_<DifferentialForm>(m, "DifferentialForm")
        .def(py::init([](const Chart& c, int degree,
                         const std::vector<std::pair<std::vector<std::string>, std::string>>& terms) {
            DifferentialForm w(c, degree);
            for (const auto& [names, coeff] : terms) {
                IndexTuple idx;
                for (const auto& n : names) idx.push_back(c.index(n));
                w.add_term(idx, Polynomial::parse(c, coeff));
            }
            return w;
        }))
        .def("degree", &DifferentialForm::degree)
        .def("is_zero", &DifferentialForm::is_zero)
        .def("__str__", &DifferentialForm::str)
        .def("__eq__", [](const DifferentialForm& a, const DifferentialForm& b) { return a == b; });

    m.def("lie_bracket", &lie_bracket);
    m.def("ext_d", &ext_d);
    m.def("wedge", &wedge);
    m.def("interior", &interior);
    m.def("lie_derivative", py::overload_cast<const VectorField&, const DifferentialForm&>(&lie_derivative));

    py::class_<GeneralizedSection>(m, "GeneralizedSection")
        .def(py::init<VectorField, DifferentialForm>())
        .def("vec", &GeneralizedSection::vec)
        .def("form", &GeneralizedSection::form)
        .def("is_zero", &GeneralizedSection::is_zero)
        .def("__str__", &GeneralizedSection::str)
        .def("__eq__", [](const GeneralizedSection& a, const GeneralizedSection& b) { return a == b; });

    py::class_<TwistedCourant>(m, "TwistedCourant")
        .def(py::init<Chart, DifferentialForm>())
        .def("h", &TwistedCourant::h);

    m.def("dorfman", &dorfman);
    m.def("pairing", &pairing);
    m.def("derivation_D", &derivation_D);
    m.def(
        "courant_axioms_check",
        [](const TwistedCourant& e, int samples, std::uint64_t seed) {
            AxiomsReport r = courant_axioms_check(e, samples, seed);
            return py::make_tuple(r.pass(), r.samples, r.failures);
        },
        py::arg("algebroid"), py::arg("samples") = 100, py::arg("seed") = 7);

    m.def("run_command", &run_command, py::arg("command"), py::arg("document_json"), py::arg("axiom_samples") = 100,
          "Run a workbench command on a JSON problem document; returns the JSON report.");
    m.def("example_document", &example_document, py::arg("name"), py::arg("params") = std::map<std::string, std::string>{},
          "Emit a packaged example document (lens|heisenberg|circle) as JSON.");
}
