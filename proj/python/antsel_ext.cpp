#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "antsel/channel.hpp"
#include "antsel/cli.hpp"
#include "antsel/error.hpp"
#include "antsel/harness.hpp"
#include "antsel/linalg.hpp"
#include "antsel/receiver.hpp"
#include "antsel/selection.hpp"

namespace py = pybind11;
using namespace antsel;

PYBIND11_MODULE(_core, m) {
  m.doc() = "OMP-based receive antenna selection: linear algebra, channel model, "
            "selection, receiver chain and Monte Carlo BER harness.";
  m.attr("__version__") = ANTSEL_VERSION;

  py::register_exception<Error>(m, "AntselError", PyExc_ValueError);

  // linalg
  m.def("cholesky", &linalg::cholesky, py::arg("r"));
  m.def("forward_solve", &linalg::forward_solve, py::arg("l"), py::arg("b"));
  m.def("hermitian_sqrt", &linalg::hermitian_sqrt, py::arg("p"));
  m.def("ls_solve", &linalg::ls_solve, py::arg("a"), py::arg("b"));

  // channel model
  py::class_<RngStream>(m, "RngStream")
      .def(py::init<std::uint64_t, std::uint64_t, std::uint64_t>(), py::arg("master_seed"),
           py::arg("point_index") = 0, py::arg("trial_index") = 0)
      .def("complex_normal", &RngStream::complex_normal, py::arg("variance") = 1.0)
      .def("bit", &RngStream::bit);

  py::class_<CorrelationModel>(m, "CorrelationModel")
      .def_readonly("m", &CorrelationModel::m)
      .def_readonly("phi", &CorrelationModel::phi)
      .def_readonly("corr", &CorrelationModel::corr)
      .def_readonly("corr_sqrt", &CorrelationModel::corr_sqrt);

  py::class_<ChannelRealization>(m, "ChannelRealization")
      .def_readonly("h_iid", &ChannelRealization::h_iid)
      .def_readonly("h_true", &ChannelRealization::h_true)
      .def_readonly("h_est", &ChannelRealization::h_est)
      .def_readonly("tau", &ChannelRealization::tau);

  m.def("build_correlation", &build_correlation, py::arg("m"), py::arg("phi"));
  m.def("sample_iid_channel", &sample_iid_channel, py::arg("m"), py::arg("rng"));
  m.def("apply_correlation", &apply_correlation, py::arg("model"), py::arg("h_iid"));
  m.def("corrupt_estimate", &corrupt_estimate, py::arg("h_iid"), py::arg("tau"), py::arg("rng"));
  m.def("sample_realization", &sample_realization, py::arg("model"), py::arg("tau"),
        py::arg("rng"));
  m.def("sample_noise", &sample_noise, py::arg("m"), py::arg("noise_var"), py::arg("rng"));

  // sparse selection
  py::class_<SelectionProblem>(m, "SelectionProblem")
      .def_readonly("h_tilde", &SelectionProblem::h_tilde)
      .def_readonly("r_mat", &SelectionProblem::r_mat)
      .def_readonly("l_mat", &SelectionProblem::l_mat)
      .def_readonly("target", &SelectionProblem::target)
      .def_readonly("sigma_x2", &SelectionProblem::sigma_x2)
      .def_readonly("sigma_v2", &SelectionProblem::sigma_v2);

  py::class_<SelectionVector>(m, "SelectionVector")
      .def_readonly("weights", &SelectionVector::weights)
      .def_readonly("support", &SelectionVector::support)
      .def_readonly("k_s", &SelectionVector::k_s)
      .def_readonly("zero_target", &SelectionVector::zero_target)
      .def_readonly("residual_norm", &SelectionVector::residual_norm)
      .def_readonly("residual_history", &SelectionVector::residual_history);

  m.def("build_problem", &build_problem, py::arg("channel_est"), py::arg("sigma_x2"),
        py::arg("sigma_v2"));
  m.def("omp_select", &omp_select, py::arg("problem"), py::arg("k_s"));
  m.def("exhaustive_select", &exhaustive_select, py::arg("problem"), py::arg("k_s"));
  m.def("mse_direct", &mse_direct, py::arg("h_s"), py::arg("channel"), py::arg("sigma_x2"),
        py::arg("sigma_v2"));
  m.def("mse_factored", &mse_factored, py::arg("h_s"), py::arg("problem"));

  // receiver chain
  m.def("bpsk_modulate", &bpsk_modulate, py::arg("bit"), py::arg("sigma_x2"));
  m.def("receive", &receive, py::arg("channel_true"), py::arg("symbol"), py::arg("noise"));
  m.def("combine_mrc", &combine_mrc, py::arg("channel_est"), py::arg("y"));
  m.def("combine_selection", &combine_selection, py::arg("sel"), py::arg("y"));
  m.def("bpsk_detect", &bpsk_detect, py::arg("combined"));

  // harness
  py::enum_<Scheme>(m, "Scheme")
      .value("OMP", Scheme::kOmpSelection)
      .value("MRC", Scheme::kMrc);

  py::class_<SimPoint>(m, "SimPoint")
      .def(py::init([](int m_, int k_s, double phi, double tau, double snr_db, Scheme scheme,
                       std::int64_t trials, int symbols_per_channel, std::uint64_t seed) {
             return SimPoint{m_, k_s, phi, tau, snr_db, scheme, trials, symbols_per_channel, seed};
           }),
           py::arg("m") = 64, py::arg("k_s") = 32, py::arg("phi") = 0.0, py::arg("tau") = 0.0,
           py::arg("snr_db") = 0.0, py::arg("scheme") = Scheme::kOmpSelection,
           py::arg("trials") = 10000, py::arg("symbols_per_channel") = 100, py::arg("seed") = 1)
      .def_readwrite("m", &SimPoint::m)
      .def_readwrite("k_s", &SimPoint::k_s)
      .def_readwrite("phi", &SimPoint::phi)
      .def_readwrite("tau", &SimPoint::tau)
      .def_readwrite("snr_db", &SimPoint::snr_db)
      .def_readwrite("scheme", &SimPoint::scheme)
      .def_readwrite("trials", &SimPoint::trials)
      .def_readwrite("symbols_per_channel", &SimPoint::symbols_per_channel)
      .def_readwrite("seed", &SimPoint::seed);

  py::class_<BerRecord>(m, "BerRecord")
      .def_readonly("point", &BerRecord::point)
      .def_readonly("bits_sent", &BerRecord::bits_sent)
      .def_readonly("bit_errors", &BerRecord::bit_errors)
      .def_readonly("ber", &BerRecord::ber)
      .def_readonly("stderr", &BerRecord::std_error);

  m.def("run_point", &run_point, py::arg("point"), py::arg("point_index") = 0,
        py::arg("workers") = 1, py::call_guard<py::gil_scoped_release>());
  m.def(
      "run_sweep",
      [](const SimPoint& base, const std::string& axis, const std::vector<double>& values,
         int workers) {
        const SweepAxis parsed = parse_axis(axis);
        py::gil_scoped_release release;
        return run_sweep(base, parsed, values, workers);
      },
      py::arg("base"), py::arg("axis"), py::arg("values"), py::arg("workers") = 1);
  m.def("analytic_mrc_ber", &analytic_mrc_ber, py::arg("m"), py::arg("snr_linear"));
  m.def(
      "measure_omp_runtime",
      [](const std::vector<int>& m_values, int k_s, int repeats, std::uint64_t seed) {
        std::vector<std::pair<int, double>> out;
        for (const auto& s : measure_omp_runtime(m_values, k_s, repeats, seed)) {
          out.emplace_back(s.m, s.mean_seconds);
        }
        return out;
      },
      py::arg("m_values"), py::arg("k_s"), py::arg("repeats"), py::arg("seed") = 1);

  m.def("format_csv", [](const std::vector<BerRecord>& records) { return cli::format_csv(records); },
        py::arg("records"));
  m.def("write_csv",
        [](const std::vector<BerRecord>& records, const std::string& path) {
          cli::write_csv(records, path);
        },
        py::arg("records"), py::arg("path"));
}
