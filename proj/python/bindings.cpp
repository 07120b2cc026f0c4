#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "srptlab/engine.hpp"
#include "srptlab/experiments.hpp"

namespace py = pybind11;

namespace pybind11::detail {

// srptlab::Rational <-> fractions.Fraction; int and "a/b" strings are accepted on input.
template <>
struct type_caster<srptlab::Rational> {
    PYBIND11_TYPE_CASTER(srptlab::Rational, const_name("fractions.Fraction"));

    bool load(handle src, bool)
    {
        if (!src || PyBool_Check(src.ptr())) return false;
        try {
            if (PyLong_Check(src.ptr())) {
                value = srptlab::Rational::parse(py::str(src).cast<std::string>());
                return true;
            }
            if (PyUnicode_Check(src.ptr())) {
                value = srptlab::Rational::parse(src.cast<std::string>());
                return true;
            }
            if (py::hasattr(src, "numerator") && py::hasattr(src, "denominator") && !PyFloat_Check(src.ptr())) {
                const std::string num = py::str(src.attr("numerator"));
                const std::string den = py::str(src.attr("denominator"));
                value = srptlab::Rational::parse(num + "/" + den);
                return true;
            }
        } catch (const std::invalid_argument&) {
            return false;
        }
        return false;
    }

    static handle cast(const srptlab::Rational& r, return_value_policy, handle)
    {
        const py::object fraction = py::module_::import("fractions").attr("Fraction");
        return fraction(r.short_str()).release();
    }
};

}  // namespace pybind11::detail

namespace {

srptlab::Instance make_instance(int machines, const std::vector<std::pair<srptlab::Rational, srptlab::Rational>>& jobs)
{
    srptlab::Instance inst;
    inst.machines = machines;
    for (std::size_t i = 0; i < jobs.size(); ++i) inst.jobs.push_back({i, jobs[i].first, jobs[i].second});
    return srptlab::validate_instance(std::move(inst));
}

py::object json_loads(const srptlab::Json& j)
{
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

srptlab::Json json_dumps(const py::object& obj)
{
    const py::object dumps = py::module_::import("json").attr("dumps");
    return srptlab::Json::parse(dumps(obj).cast<std::string>());
}

}  // namespace

PYBIND11_MODULE(_srptlab, m)
{
    using namespace srptlab;
    m.doc() = "Exact-rational SRPT simulation and potential-function checks";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<OracleLimitError>(m, "OracleLimitError", PyExc_RuntimeError);

    py::class_<Job>(m, "Job")
        .def_readonly("id", &Job::id)
        .def_readonly("release", &Job::release)
        .def_readonly("size", &Job::size)
        .def("__repr__", [](const Job& j) {
            return "Job(id=" + std::to_string(j.id) + ", release=" + j.release.short_str() + ", size=" +
                   j.size.short_str() + ")";
        });

    py::class_<Instance>(m, "Instance")
        .def(py::init(&make_instance), py::arg("machines"), py::arg("jobs"),
             "Jobs as (release, size) pairs; ids follow list order.")
        .def_readonly("machines", &Instance::machines)
        .def_readonly("jobs", &Instance::jobs)
        .def("__len__", &Instance::size)
        .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
        .def("to_text", &serialize_instance)
        .def("to_json", [](const Instance& i) { return json_loads(to_json(i)); });

    py::class_<Segment>(m, "Segment")
        .def_readonly("start", &Segment::start)
        .def_readonly("end", &Segment::end)
        .def_readonly("assignment", &Segment::assignment);

    py::class_<ExecutionTrace>(m, "Trace")
        .def_readonly("instance", &ExecutionTrace::instance)
        .def_property_readonly("speed", [](const ExecutionTrace& t) { return t.speed.speed; })
        .def_readonly("segments", &ExecutionTrace::segments)
        .def_readonly("completions", &ExecutionTrace::completions)
        .def("makespan", &ExecutionTrace::makespan)
        .def("is_valid", [](const ExecutionTrace& t) { return validate_trace(t).ok; })
        .def("violations",
             [](const ExecutionTrace& t) {
                 std::vector<std::string> out;
                 for (const TraceViolation& v : validate_trace(t).violations) out.push_back(v.kind + ": " + v.message);
                 return out;
             })
        .def("to_json", [](const ExecutionTrace& t) { return json_loads(to_json(t)); });

    m.def("parse_instance", [](const std::string& text) { return parse_instance(text); }, py::arg("text"));

    m.def(
        "generate",
        [](const std::string& family, std::size_t n, int machines, std::uint64_t seed, std::pair<std::int64_t, std::int64_t> sizes,
           std::pair<std::int64_t, std::int64_t> releases) {
            GenSpec spec;
            spec.family = family_from_string(family);
            spec.n = n;
            spec.machines = machines;
            spec.seed = seed;
            spec.size_range = {sizes.first, sizes.second};
            spec.release_range = {releases.first, releases.second};
            return generate(spec);
        },
        py::arg("family") = "uniform", py::arg("n") = 6, py::arg("machines") = 1, py::arg("seed") = 0,
        py::arg("sizes") = std::pair<std::int64_t, std::int64_t>{1, 5},
        py::arg("releases") = std::pair<std::int64_t, std::int64_t>{0, 10});

    m.def(
        "simulate",
        [](const Instance& inst, const Rational& speed, const std::string& policy) {
            return simulate_policy(inst, SpeedConfig::from_speed(speed), priority_by_name(policy));
        },
        py::arg("instance"), py::arg("speed") = Rational(1), py::arg("policy") = "srpt");

    m.def(
        "objectives",
        [](const ExecutionTrace& t, const std::vector<unsigned>& ks) { return json_loads(to_json(objectives(t, ks))); },
        py::arg("trace"), py::arg("ks") = std::vector<unsigned>{1, 2, 3});

    m.def(
        "brute_force_opt",
        [](const Instance& inst, unsigned k) {
            const OracleResult r = brute_force_opt(inst, k);
            return py::make_tuple(r.objective, r.trace);
        },
        py::arg("instance"), py::arg("k") = 1);

    m.def(
        "verify",
        [](const Instance& inst, const Rational& speed, const std::vector<unsigned>& ks,
           const std::vector<std::string>& refs) {
            VerifyRequest req;
            req.instance = inst;
            req.speed = SpeedConfig::from_speed(speed);
            req.ks = ks;
            req.references = refs;
            VerifyOutcome out;
            {
                py::gil_scoped_release release;
                out = run_verification(req);
            }
            return json_loads(to_json(out));
        },
        py::arg("instance"), py::arg("speed"), py::arg("ks") = std::vector<unsigned>{1},
        py::arg("refs") = std::vector<std::string>{"oracle", "unit-srpt"});

    m.def(
        "sweep_csv",
        [](const py::object& manifest, unsigned threads) {
            const SweepManifest parsed = manifest_from_json(json_dumps(manifest));
            py::gil_scoped_release release;
            return sweep_csv(run_sweep(parsed, threads == 0 ? worker_count() : threads));
        },
        py::arg("manifest"), py::arg("threads") = 0);
}
