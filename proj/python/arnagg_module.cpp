#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "arnagg/arnoldi.hpp"
#include "arnagg/convergence.hpp"
#include "arnagg/error.hpp"
#include "arnagg/markov.hpp"
#include "arnagg/models.hpp"

namespace py = pybind11;
using namespace arnagg;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Array to_numpy(const Vector& v) {
    Array a(py::ssize_t(v.size()));
    std::copy(v.begin(), v.end(), a.mutable_data());
    return a;
}

Array to_numpy(const DenseMatrix& m) {
    Array a({py::ssize_t(m.rows()), py::ssize_t(m.cols())});
    std::copy(m.data().begin(), m.data().end(), a.mutable_data());
    return a;
}

Vector from_numpy(const Array& a) {
    if (a.ndim() != 1) throw InvalidInput("expected a one-dimensional array");
    return Vector(a.data(), a.data() + a.size());
}

SparseStochasticMatrix chain_from_csr(std::size_t n, const py::array_t<std::int64_t>& indptr,
                                      const py::array_t<std::int64_t>& indices, const Array& data) {
    std::vector<Triplet> t;
    const auto ptr = indptr.unchecked<1>();
    const auto idx = indices.unchecked<1>();
    const auto val = data.unchecked<1>();
    if (std::size_t(ptr.shape(0)) != n + 1) throw DimensionMismatch("indptr must have n + 1 entries");
    for (std::size_t r = 0; r < n; ++r)
        for (auto k = ptr(r); k < ptr(r + 1); ++k) t.push_back({r, std::size_t(idx(k)), val(k)});
    return SparseStochasticMatrix(CsrMatrix::from_triplets(n, std::move(t)));
}

py::tuple chain_to_csr(const SparseStochasticMatrix& P) {
    const CsrMatrix& m = P.csr();
    py::array_t<std::int64_t> indptr(py::ssize_t(m.size() + 1));
    py::array_t<std::int64_t> indices(py::ssize_t(m.nonzeros()));
    for (std::size_t i = 0; i <= m.size(); ++i) indptr.mutable_data()[i] = std::int64_t(m.row_offsets()[i]);
    for (std::size_t k = 0; k < m.nonzeros(); ++k) indices.mutable_data()[k] = m.columns()[k];
    return py::make_tuple(indptr, indices, to_numpy(Vector(m.values().begin(), m.values().end())));
}

CriterionConfig make_config(double epsilon, std::size_t checkEvery, std::size_t maxDim, const std::string& method,
                            std::uint64_t seed) {
    CriterionConfig c;
    c.epsilon = epsilon;
    c.checkEvery = checkEvery;
    c.maxDimension = maxDim;
    c.seed = seed;
    if (method == "auto") c.eigenMethod = EigenMethod::Auto;
    else if (method == "dense") c.eigenMethod = EigenMethod::Dense;
    else if (method == "krylov-schur") c.eigenMethod = EigenMethod::KrylovSchur;
    else throw InvalidInput("unknown eigen method '" + method + "'");
    return c;
}

} // namespace

PYBIND11_MODULE(_arnagg, m) {
    m.doc() = "Arnoldi aggregation of discrete-time Markov chains";

    auto base = py::register_exception<Error>(m, "ArnaggError", PyExc_RuntimeError);
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
    py::register_exception<StateSpaceOverflow>(m, "StateSpaceOverflow", base.ptr());
    py::register_exception<SolverFailure>(m, "SolverFailure", base.ptr());
    py::register_exception<IoError>(m, "IoError", base.ptr());

    py::class_<SparseStochasticMatrix>(m, "Chain")
        .def_static("from_csr", &chain_from_csr, py::arg("n"), py::arg("indptr"), py::arg("indices"), py::arg("data"))
        .def_static("from_dense",
                    [](const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
                        if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionMismatch("expected a square matrix");
                        const std::size_t n = std::size_t(a.shape(0));
                        return SparseStochasticMatrix(
                            CsrMatrix::from_dense(DenseMatrix(n, n, Vector(a.data(), a.data() + n * n))));
                    })
        .def_property_readonly("size", &SparseStochasticMatrix::size)
        .def_property_readonly("nnz", [](const SparseStochasticMatrix& P) { return P.csr().nonzeros(); })
        .def("to_csr", &chain_to_csr)
        .def("to_dense", [](const SparseStochasticMatrix& P) { return to_numpy(P.csr().to_dense()); });

    py::class_<models::BuiltModel>(m, "Model")
        .def_property_readonly("name", [](const models::BuiltModel& b) { return b.descriptor.name; })
        .def_property_readonly("state_count", [](const models::BuiltModel& b) { return b.descriptor.stateCount; })
        .def_property_readonly("uniformisation_rate",
                               [](const models::BuiltModel& b) { return b.descriptor.uniformisationRate; })
        .def_property_readonly("published_rate", [](const models::BuiltModel& b) { return b.descriptor.publishedRate; })
        .def_property_readonly("max_exit_rate", [](const models::BuiltModel& b) { return b.descriptor.maxExitRate; })
        .def_property_readonly("initial_state", [](const models::BuiltModel& b) { return b.descriptor.initialState; })
        .def_property_readonly("chain", [](const models::BuiltModel& b) { return b.chain; })
        .def("initial_distribution",
             [](const models::BuiltModel& b) { return to_numpy(b.initial_distribution().vector()); })
        .def("descriptor_json", [](const models::BuiltModel& b) { return models::descriptor_json(b.descriptor); });

    m.def(
        "builtin",
        [](const std::string& name, std::optional<std::uint32_t> cap, std::optional<std::filesystem::path> matrix) {
            models::BuiltinOptions o;
            o.cap = cap;
            o.matrixPath = std::move(matrix);
            return models::builtin(name, o);
        },
        py::arg("name"), py::arg("cap") = py::none(), py::arg("matrix") = py::none());
    m.def("fixture", &models::fixture, py::arg("id"), py::arg("seed") = 0);
    m.def("builtin_names", &models::builtin_names);
    m.def("random_chain", &models::random_chain, py::arg("n"), py::arg("seed"), py::arg("max_out") = 4);

    py::class_<ArnoldiAggregation>(m, "Aggregation")
        .def_property_readonly("dimension", &ArnoldiAggregation::dimension)
        .def_property_readonly("state_count", &ArnoldiAggregation::state_count)
        .def_property_readonly("H", [](const ArnoldiAggregation& a) { return to_numpy(a.hessenberg()); })
        .def_property_readonly("Q", [](const ArnoldiAggregation& a) { return to_numpy(a.basis()); })
        .def_property_readonly("pi0", [](const ArnoldiAggregation& a) { return to_numpy(a.triple.initial); })
        .def_readonly("source_norm", &ArnoldiAggregation::sourceNorm)
        .def_readonly("boundary_coefficient", &ArnoldiAggregation::boundaryCoefficient)
        .def_readonly("invariant", &ArnoldiAggregation::invariant)
        .def_property_readonly("residual_row_sums",
                               [](const ArnoldiAggregation& a) { return to_numpy(a.residualRowSums); })
        .def("approx_transient",
             [](const ArnoldiAggregation& a, std::size_t k) { return to_numpy(approx_transient(a.triple, k)); },
             py::arg("k"));

    m.def(
        "build_aggregation",
        [](const Array& p0, const SparseStochasticMatrix& P, std::size_t j) {
            return build_aggregation(std::span<const double>(from_numpy(p0)), P, j);
        },
        py::arg("p0"), py::arg("chain"), py::arg("j"));
    m.def(
        "transient_naive",
        [](const Array& p0, const SparseStochasticMatrix& P, std::size_t k) {
            return to_numpy(transient_naive(std::span<const double>(from_numpy(p0)), P, k));
        },
        py::arg("p0"), py::arg("chain"), py::arg("k"));
    m.def(
        "transient_error",
        [](const ArnoldiAggregation& a, const Array& p0, const SparseStochasticMatrix& P, std::size_t k) {
            return transient_error(a, from_numpy(p0), P, k);
        },
        py::arg("aggregation"), py::arg("p0"), py::arg("chain"), py::arg("k"));
    m.def("closed_form_error", &closed_form_error, py::arg("aggregation"), py::arg("chain"), py::arg("k"));
    m.def("error_bound", &error_bound, py::arg("aggregation"), py::arg("k"));

    m.def(
        "dominant_eigenvector",
        [](const Array& H, double eigTolerance) -> py::object {
            if (H.ndim() != 2 || H.shape(0) != H.shape(1)) throw DimensionMismatch("expected a square matrix");
            const std::size_t j = std::size_t(H.shape(0));
            CriterionConfig c;
            c.eigTolerance = eigTolerance;
            const EigenOutcome out = dominant_eigenvector(DenseMatrix(j, j, Vector(H.data(), H.data() + j * j)), c);
            if (const auto* pi = std::get_if<DominantEigenvector>(&out))
                return py::make_tuple(to_numpy(pi->vector), pi->eigenvalue);
            return py::none();
        },
        py::arg("H"), py::arg("eig_tolerance") = 1e-10,
        "(vector, eigenvalue) of the left eigenvector nearest 1, or None if it is complex");

    py::class_<AdaptiveResult>(m, "AdaptiveResult")
        .def_readonly("aggregation", &AdaptiveResult::aggregation)
        .def_readonly("criterion", &AdaptiveResult::criterion)
        .def_property_readonly("stop_reason", [](const AdaptiveResult& r) { return std::string(to_string(r.reason)); })
        .def_property_readonly("converged", &AdaptiveResult::converged)
        .def_property_readonly("eigenvector", [](const AdaptiveResult& r) -> py::object {
            if (!r.eigenvector) return py::none();
            return to_numpy(r.eigenvector->vector);
        })
        .def_property_readonly("trace", [](const AdaptiveResult& r) {
            py::list rows;
            for (const TraceRow& t : r.trace)
                rows.append(py::make_tuple(t.dimension, t.criterion, t.boundaryCoefficient, t.elapsedNs));
            return rows;
        });

    m.def(
        "run_adaptive",
        [](const Array& p0, const SparseStochasticMatrix& P, double epsilon, std::size_t checkEvery,
           std::size_t maxDim, const std::string& method, std::uint64_t seed) {
            return run_adaptive(from_numpy(p0), P, make_config(epsilon, checkEvery, maxDim, method, seed));
        },
        py::arg("p0"), py::arg("chain"), py::arg("epsilon"), py::arg("check_every") = 10, py::arg("max_dim") = 0,
        py::arg("eigen_method") = "auto", py::arg("seed") = CriterionConfig{}.seed);
}
