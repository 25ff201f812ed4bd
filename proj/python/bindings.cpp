#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "vfcm/dataset.hpp"
#include "vfcm/error.hpp"
#include "vfcm/fcm.hpp"
#include "vfcm/imaging.hpp"
#include "vfcm/metrics.hpp"
#include "vfcm/vfc.hpp"

namespace py = pybind11;
using namespace vfcm;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const Array& a) {
    if (a.ndim() == 1) {
        Matrix m(static_cast<std::size_t>(a.shape(0)), 1);
        std::memcpy(m.flat().data(), a.data(), sizeof(double) * m.flat().size());
        return m;
    }
    if (a.ndim() != 2) throw InvalidArgument("expected a 1-D or 2-D array");
    Matrix m(static_cast<std::size_t>(a.shape(0)), static_cast<std::size_t>(a.shape(1)));
    std::memcpy(m.flat().data(), a.data(), sizeof(double) * m.flat().size());
    return m;
}

Array to_array(const Matrix& m) {
    Array a({m.rows(), m.cols()});
    std::memcpy(a.mutable_data(), m.flat().data(), sizeof(double) * m.flat().size());
    return a;
}

Array to_array(const MembershipTensor& u) {
    Array a({u.points(), u.clusters(), u.dims()});
    std::memcpy(a.mutable_data(), u.flat().data(), sizeof(double) * u.flat().size());
    return a;
}

MembershipTensor to_tensor(const Array& a) {
    if (a.ndim() != 3) throw InvalidArgument("expected an N x C x D array");
    MembershipTensor u(a.shape(0), a.shape(1), a.shape(2));
    auto r = a.unchecked<3>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i)
        for (py::ssize_t j = 0; j < a.shape(1); ++j)
            for (py::ssize_t k = 0; k < a.shape(2); ++k) u(i, j, k) = r(i, j, k);
    return u;
}

std::optional<Centers> maybe_centers(const std::optional<Array>& a) {
    if (!a) return std::nullopt;
    return to_matrix(*a);
}

ObjectiveForm parse_form(const std::string& name) {
    if (name == "literal") return ObjectiveForm::literal;
    if (name == "exponentiated") return ObjectiveForm::exponentiated;
    throw InvalidArgument("objective form must be 'literal' or 'exponentiated'");
}

template <typename Result>
void bind_result(py::module_& m, const char* name) {
    py::class_<Result>(m, name)
        .def_property_readonly("centers", [](const Result& r) { return to_array(r.centers); })
        .def_property_readonly("memberships", [](const Result& r) { return to_array(r.memberships); })
        .def_readonly("objective_trace", &Result::objective_trace)
        .def_readonly("literal_trace", &Result::literal_trace)
        .def_readonly("iterations_run", &Result::iterations_run)
        .def_property_readonly("converged_by", [](const Result& r) { return std::string(to_string(r.converged_by)); })
        .def_readonly("config", &Result::config);
}

py::array_t<std::uint8_t> pixels_of(const GrayImage& img) {
    py::array_t<std::uint8_t> a({img.height, img.width});
    std::memcpy(a.mutable_data(), img.pixels.data(), img.pixels.size());
    return a;
}

GrayImage image_from(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a, int maxval) {
    if (a.ndim() != 2) throw InvalidArgument("expected a height x width uint8 array");
    GrayImage img;
    img.height = a.shape(0);
    img.width = a.shape(1);
    img.maxval = static_cast<std::uint16_t>(maxval);
    img.pixels.assign(a.data(), a.data() + a.size());
    return img;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fuzzy C-Means and Vector Fuzzy C-Means clustering";

    static py::exception<Error> base(m, "VfcmError", PyExc_RuntimeError);
    py::register_exception<DatasetError>(m, "DatasetError", base.ptr());
    py::register_exception<EmptyClusterError>(m, "EmptyClusterError", base.ptr());
    py::register_exception<DegenerateInputError>(m, "DegenerateInputError", base.ptr());
    py::register_exception<PgmError>(m, "PgmError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    py::class_<DataMatrix>(m, "DataMatrix")
        .def(py::init([](const Array& values, std::vector<std::string> labels, std::vector<std::string> names) {
                 return DataMatrix(to_matrix(values), std::move(labels), std::move(names));
             }),
             py::arg("values"), py::arg("labels") = std::vector<std::string>{},
             py::arg("feature_names") = std::vector<std::string>{})
        .def_property_readonly("rows", &DataMatrix::rows)
        .def_property_readonly("dims", &DataMatrix::dims)
        .def_property_readonly("values", [](const DataMatrix& d) { return to_array(d.values()); })
        .def_property_readonly("labels", &DataMatrix::labels)
        .def_property_readonly("feature_names", &DataMatrix::feature_names);
    py::implicitly_convertible<py::array, DataMatrix>();

    py::class_<FeatureStats>(m, "FeatureStats")
        .def_readonly("min", &FeatureStats::min)
        .def_readonly("max", &FeatureStats::max)
        .def_readonly("mean", &FeatureStats::mean)
        .def_readonly("stddev", &FeatureStats::stddev)
        .def_readonly("scatter", &FeatureStats::scatter);

    m.def(
        "load_csv",
        [](const std::string& path, bool has_header, std::optional<std::size_t> label_column) {
            return load_csv(path, {has_header, label_column});
        },
        py::arg("path"), py::arg("has_header") = false, py::arg("label_column") = py::none());
    m.def("compute_stats", &compute_stats, py::arg("data"));
    m.def(
        "normalize", [](const DataMatrix& d, const std::string& mode) { return normalize(d, parse_normalization(mode)); },
        py::arg("data"), py::arg("mode") = "none");

    py::class_<FitConfig>(m, "FitConfig")
        .def(py::init([](std::size_t clusters, double m, std::size_t max_iters, double epsilon, double delta) {
                 FitConfig c;
                 c.clusters = clusters;
                 c.fuzziness = m;
                 c.max_iters = max_iters;
                 c.epsilon = epsilon;
                 c.singularity_delta = delta;
                 return c;
             }),
             py::arg("clusters") = 2, py::arg("m") = 2.0, py::arg("max_iters") = 100, py::arg("epsilon") = 0.0,
             py::arg("singularity_delta") = 1e-12)
        .def_readwrite("clusters", &FitConfig::clusters)
        .def_readwrite("m", &FitConfig::fuzziness)
        .def_readwrite("max_iters", &FitConfig::max_iters)
        .def_readwrite("epsilon", &FitConfig::epsilon)
        .def_readwrite("singularity_delta", &FitConfig::singularity_delta)
        .def_property_readonly("init", [](const FitConfig& c) { return std::string(to_string(c.init)); });

    bind_result<FcmResult>(m, "FcmResult");
    bind_result<VfcResult>(m, "VfcResult");

    m.def(
        "fcm_update_memberships",
        [](const DataMatrix& d, const Array& v, double fuzz, double delta) {
            return to_array(fcm_update_memberships(d, to_matrix(v), fuzz, delta));
        },
        py::arg("data"), py::arg("centers"), py::arg("m"), py::arg("singularity_delta") = 1e-12);
    m.def(
        "fcm_update_centers",
        [](const DataMatrix& d, const Array& u, double fuzz) { return to_array(fcm_update_centers(d, to_matrix(u), fuzz)); },
        py::arg("data"), py::arg("memberships"), py::arg("m"));
    m.def(
        "fcm_objective",
        [](const DataMatrix& d, const Array& v, const Array& u, double fuzz) {
            return fcm_objective(d, to_matrix(v), to_matrix(u), fuzz);
        },
        py::arg("data"), py::arg("centers"), py::arg("memberships"), py::arg("m"));
    m.def(
        "fcm_fit",
        [](const DataMatrix& d, const FitConfig& c, const std::optional<Array>& v) {
            py::gil_scoped_release release;
            return fcm_fit(d, c, maybe_centers(v));
        },
        py::arg("data"), py::arg("config"), py::arg("initial_centers") = py::none());

    m.def(
        "init_centers_scatter",
        [](const DataMatrix& d, std::size_t clusters) {
            const auto init = init_centers_scatter(d, clusters);
            py::dict plan;
            plan["scatter"] = init.plan.scatter;
            plan["centroid"] = init.plan.centroid;
            plan["weighted_distances"] = init.plan.weighted_distances;
            plan["sorted_order"] = init.plan.sorted_order;
            plan["chunk_bounds"] = init.plan.chunk_bounds;
            return py::make_tuple(to_array(init.centers), plan);
        },
        py::arg("data"), py::arg("clusters"));
    m.def(
        "vfc_update_memberships",
        [](const DataMatrix& d, const Array& v, double fuzz, double delta) {
            return to_array(vfc_update_memberships(d, to_matrix(v), fuzz, delta));
        },
        py::arg("data"), py::arg("centers"), py::arg("m"), py::arg("singularity_delta") = 1e-12);
    m.def(
        "vfc_update_centers",
        [](const DataMatrix& d, const Array& u, double fuzz) { return to_array(vfc_update_centers(d, to_tensor(u), fuzz)); },
        py::arg("data"), py::arg("memberships"), py::arg("m"));
    m.def(
        "vfc_objective",
        [](const DataMatrix& d, const Array& v, const Array& u, double fuzz, const std::string& form) {
            return vfc_objective(d, to_matrix(v), to_tensor(u), fuzz, parse_form(form));
        },
        py::arg("data"), py::arg("centers"), py::arg("memberships"), py::arg("m"), py::arg("form") = "exponentiated");
    m.def(
        "vfc_fit",
        [](const DataMatrix& d, const FitConfig& c, const std::optional<Array>& v) {
            py::gil_scoped_release release;
            return vfc_fit(d, c, maybe_centers(v));
        },
        py::arg("data"), py::arg("config"), py::arg("initial_centers") = py::none());
    m.def(
        "crisp_assign",
        [](const Array& u) {
            if (u.ndim() == 3) return crisp_assign(to_tensor(u));
            return crisp_assign(to_matrix(u));
        },
        py::arg("memberships"), "argmax of dimension-summed (3-D) or scalar (2-D) memberships");

    m.def("purity", [](const std::vector<std::size_t>& a, const std::vector<std::string>& l) { return purity(a, l); },
          py::arg("assignments"), py::arg("labels"));
    m.def("rand_index",
          [](const std::vector<std::size_t>& a, const std::vector<std::string>& l) { return rand_index(a, l); },
          py::arg("assignments"), py::arg("labels"));
    m.def("normalize_trace", [](const std::vector<double>& t) { return normalize_trace(t); }, py::arg("trace"));

    py::class_<GrayImage>(m, "GrayImage")
        .def(py::init(&image_from), py::arg("pixels"), py::arg("maxval") = 255)
        .def_readonly("width", &GrayImage::width)
        .def_readonly("height", &GrayImage::height)
        .def_readonly("maxval", &GrayImage::maxval)
        .def_property_readonly("pixels", &pixels_of)
        .def("__eq__", [](const GrayImage& a, const GrayImage& b) { return a == b; });

    m.def("read_pgm", [](const py::bytes& b) { return read_pgm(std::string(b)); }, py::arg("data"));
    m.def("write_pgm", [](const GrayImage& img) { return py::bytes(write_pgm(img)); }, py::arg("image"));
    m.def(
        "segment_binary",
        [](const GrayImage& img, double fuzz, std::size_t max_iters, double epsilon, const std::string& algorithm,
           bool raw01) {
            FitConfig c;
            c.clusters = 2;
            c.fuzziness = fuzz;
            c.max_iters = max_iters;
            c.epsilon = epsilon;
            py::gil_scoped_release release;
            return segment_binary(img, c, {parse_algorithm(algorithm), raw01}).mask;
        },
        py::arg("image"), py::arg("m") = 2.0, py::arg("max_iters") = 100, py::arg("epsilon") = 0.0,
        py::arg("algorithm") = "vfc", py::arg("raw01") = false);
}
