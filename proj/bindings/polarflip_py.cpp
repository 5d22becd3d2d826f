#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polarflip/calibration.hpp"
#include "polarflip/channel.hpp"
#include "polarflip/code_spec.hpp"
#include "polarflip/crc.hpp"
#include "polarflip/flip_decoder.hpp"
#include "polarflip/rng.hpp"
#include "polarflip/sc_decoder.hpp"
#include "polarflip/simulation.hpp"
#include "polarflip/types.hpp"

namespace py = pybind11;
using namespace polarflip;

PYBIND11_MODULE(polarflip, m) {
  m.doc() = "Polar-code flip decoding: construction, SC/SCF/DSCF decoders, "
            "gate calibration, and Monte Carlo campaigns";

  py::enum_<SnrType>(m, "SnrType")
      .value("ebn0", SnrType::ebn0)
      .value("esn0", SnrType::esn0);

  py::class_<CodeSpec>(m, "CodeSpec")
      .def_readonly("n_bits", &CodeSpec::n_bits)
      .def_readonly("k_info", &CodeSpec::k_info)
      .def_readonly("r_crc", &CodeSpec::r_crc)
      .def_readonly("design_snr_db", &CodeSpec::design_snr_db)
      .def_readonly("frozen_set", &CodeSpec::frozen_set)
      .def_readonly("info_set", &CodeSpec::info_set)
      .def("payload_bits", &CodeSpec::payload_bits)
      .def("rate", &CodeSpec::rate);

  m.def("make_code_spec", &make_code_spec, py::arg("n_bits"), py::arg("r_crc"),
        py::arg("frozen_set"), py::arg("design_snr_db"));
  m.def("construct_frozen_set", &construct_frozen_set, py::arg("n_bits"),
        py::arg("k_plus_r"), py::arg("design_snr_db"), py::arg("r_crc") = 0,
        py::arg("snr_type") = SnrType::ebn0);
  m.def("load_frozen_set", &load_frozen_set, py::arg("path"), py::arg("n_bits"),
        py::arg("r_crc") = 0, py::arg("design_snr_db") = 0.0);
  m.def("save_frozen_set", &save_frozen_set, py::arg("spec"), py::arg("path"));
  m.def("encode", &encode, py::arg("u"), py::arg("spec"));
  m.def("insert_payload", &insert_payload, py::arg("payload"), py::arg("spec"));
  m.def("extract_payload", &extract_payload, py::arg("u"), py::arg("spec"));

  py::class_<CrcSpec>(m, "CrcSpec")
      .def(py::init([](std::uint32_t degree, std::uint64_t polynomial) {
             CrcSpec spec;
             spec.degree = degree;
             spec.polynomial = polynomial;
             validate(spec);
             return spec;
           }),
           py::arg("degree") = 16, py::arg("polynomial") = 0x8005)
      .def_readonly("degree", &CrcSpec::degree)
      .def_readonly("polynomial", &CrcSpec::polynomial);

  m.def("crc_compute", &crc_compute, py::arg("message"), py::arg("crc"));
  m.def("crc_append", &crc_append, py::arg("message"), py::arg("crc"));
  m.def("crc_check", &crc_check, py::arg("payload"), py::arg("crc"));

  py::class_<ChannelConfig>(m, "ChannelConfig")
      .def_readonly("snr_db", &ChannelConfig::snr_db)
      .def_readonly("snr_type", &ChannelConfig::snr_type)
      .def_readonly("rate", &ChannelConfig::rate)
      .def_readonly("sigma_sq", &ChannelConfig::sigma_sq)
      .def_readonly("llr_scale", &ChannelConfig::llr_scale);

  m.def("make_channel_config", &make_channel_config, py::arg("snr_db"),
        py::arg("rate"), py::arg("snr_type") = SnrType::ebn0);
  m.def(
      "modulate",
      [](const BitVector& x) {
        LlrVector symbols;
        modulate(x, symbols);
        return symbols;
      },
      py::arg("x"));
  m.def(
      "transmit",
      [](const LlrVector& symbols, const ChannelConfig& config,
         std::uint64_t seed, std::uint64_t codeword_index) {
        const CounterRng rng(seed, kNoiseStream, codeword_index);
        LlrVector received;
        transmit(symbols, config, rng, received);
        return received;
      },
      py::arg("symbols"), py::arg("config"), py::arg("seed"),
      py::arg("codeword_index"));
  m.def(
      "channel_llr",
      [](const LlrVector& received, const ChannelConfig& config) {
        LlrVector alpha;
        channel_llr(received, config, alpha);
        return alpha;
      },
      py::arg("received"), py::arg("config"));

  py::class_<ScResult>(m, "ScResult")
      .def_readonly("u_hat", &ScResult::u_hat)
      .def_readonly("alpha_dec", &ScResult::alpha_dec);

  m.def(
      "sc_decode",
      [](const LlrVector& alpha_ch, const CodeSpec& spec,
         const std::vector<std::size_t>& flips) {
        return sc_decode(alpha_ch, spec, FlipSet(flips));
      },
      py::arg("alpha_ch"), py::arg("spec"),
      py::arg("flips") = std::vector<std::size_t>{});
  m.def("f_func", &f_func, py::arg("x"), py::arg("y"));
  m.def("g_func", &g_func, py::arg("x"), py::arg("y"), py::arg("b"));

  py::class_<FlipList>(m, "FlipList")
      .def_property_readonly("entries", [](const FlipList& list) {
        std::vector<std::pair<std::size_t, double>> out;
        out.reserve(list.entries.size());
        for (const auto& e : list.entries) {
          out.emplace_back(e.bit_index, e.metric);
        }
        return out;
      });

  m.def("scf_metrics", &scf_metrics, py::arg("alpha_dec"), py::arg("spec"),
        py::arg("trial_budget"));
  m.def("dscf_metrics", &dscf_metrics, py::arg("alpha_dec"), py::arg("spec"),
        py::arg("trial_budget"), py::arg("c"));
  m.def("early_stop_metric", &early_stop_metric, py::arg("flip_list"));

  py::class_<EarlyStopConfig>(m, "EarlyStopConfig")
      .def(py::init([](double phi_threshold, std::size_t t_reduced, bool enabled) {
             EarlyStopConfig es;
             es.phi_threshold = phi_threshold;
             es.t_reduced = t_reduced;
             es.enabled = enabled;
             return es;
           }),
           py::arg("phi_threshold") = 0.0, py::arg("t_reduced") = 0,
           py::arg("enabled") = false)
      .def_readwrite("phi_threshold", &EarlyStopConfig::phi_threshold)
      .def_readwrite("t_reduced", &EarlyStopConfig::t_reduced)
      .def_readwrite("enabled", &EarlyStopConfig::enabled);

  py::class_<DecodeOutcome>(m, "DecodeOutcome")
      .def_readonly("payload_hat", &DecodeOutcome::payload_hat)
      .def_readonly("u_hat", &DecodeOutcome::u_hat)
      .def_readonly("trials_used", &DecodeOutcome::trials_used)
      .def_readonly("crc_ok", &DecodeOutcome::crc_ok)
      .def_readonly("early_stopped", &DecodeOutcome::early_stopped)
      .def_readonly("phi", &DecodeOutcome::phi);

  m.def("scf_decode",
        py::overload_cast<const LlrVector&, const CodeSpec&, const CrcSpec&,
                          const FlipList&, std::size_t>(&scf_decode),
        py::arg("alpha_ch"), py::arg("spec"), py::arg("crc"),
        py::arg("flip_list"), py::arg("trial_budget"));
  m.def("dscf_decode_with_early_stop", &dscf_decode_with_early_stop,
        py::arg("alpha_ch"), py::arg("spec"), py::arg("crc"),
        py::arg("trial_budget"), py::arg("c"), py::arg("early_stop"));

  py::enum_<DecoderKind>(m, "DecoderKind")
      .value("sc", DecoderKind::sc)
      .value("scf", DecoderKind::scf)
      .value("dscf", DecoderKind::dscf)
      .value("dscf_es", DecoderKind::dscf_es);

  py::class_<DecoderParams>(m, "DecoderParams")
      .def(py::init<>())
      .def_readwrite("kind", &DecoderParams::kind)
      .def_readwrite("max_trials", &DecoderParams::max_trials)
      .def_readwrite("c_param", &DecoderParams::c_param)
      .def_readwrite("early_stop", &DecoderParams::early_stop);

  m.def("decode_received",
        py::overload_cast<const LlrVector&, const CodeSpec&, const CrcSpec&,
                          const DecoderParams&>(&decode_received),
        py::arg("alpha_ch"), py::arg("spec"), py::arg("crc"), py::arg("params"));

  py::class_<MetricDistribution>(m, "MetricDistribution")
      .def_readonly("phi_sums", &MetricDistribution::phi_sums)
      .def_readonly("counts", &MetricDistribution::counts)
      .def_readonly("snr_db", &MetricDistribution::snr_db)
      .def_readonly("normalized", &MetricDistribution::normalized)
      .def("trial_budget", &MetricDistribution::trial_budget)
      .def("failure_bin", &MetricDistribution::failure_bin)
      .def("bin_value", &MetricDistribution::bin_value, py::arg("bin"));

  py::class_<CalibrationConfig>(m, "CalibrationConfig")
      .def(py::init<>())
      .def_readwrite("trial_budget", &CalibrationConfig::trial_budget)
      .def_readwrite("c_param", &CalibrationConfig::c_param)
      .def_readwrite("codewords", &CalibrationConfig::codewords)
      .def_readwrite("seed", &CalibrationConfig::seed)
      .def_readwrite("workers", &CalibrationConfig::workers);

  m.def("calibrate_distribution", &calibrate_distribution, py::arg("spec"),
        py::arg("crc"), py::arg("channel"), py::arg("config"));
  m.def("extract_threshold", &extract_threshold, py::arg("dist"));

  py::class_<ThresholdTable::Row>(m, "ThresholdRow")
      .def(py::init([](double snr_db, double phi_thr) {
             return ThresholdTable::Row{snr_db, phi_thr};
           }),
           py::arg("snr_db"), py::arg("phi_thr"))
      .def_readwrite("snr_db", &ThresholdTable::Row::snr_db)
      .def_readwrite("phi_thr", &ThresholdTable::Row::phi_thr);

  py::class_<ThresholdTable>(m, "ThresholdTable")
      .def(py::init<>())
      .def_readwrite("rows", &ThresholdTable::rows)
      .def_readwrite("t_reduced", &ThresholdTable::t_reduced);

  m.def("lookup_threshold", &lookup_threshold, py::arg("table"),
        py::arg("snr_db"));
  m.def("save_threshold_table", &save_threshold_table, py::arg("table"),
        py::arg("path"));
  m.def("load_threshold_table", &load_threshold_table, py::arg("path"));
  m.def("save_distributions", &save_distributions, py::arg("dists"),
        py::arg("path"));

  py::class_<CampaignConfig>(m, "CampaignConfig")
      .def(py::init<>())
      .def_readwrite("spec", &CampaignConfig::spec)
      .def_readwrite("crc", &CampaignConfig::crc)
      .def_readwrite("decoder", &CampaignConfig::decoder)
      .def_readwrite("snr_type", &CampaignConfig::snr_type)
      .def_readwrite("snr_points_db", &CampaignConfig::snr_points_db)
      .def_readwrite("max_codewords", &CampaignConfig::max_codewords)
      .def_readwrite("min_frame_errors", &CampaignConfig::min_frame_errors)
      .def_readwrite("seed", &CampaignConfig::seed)
      .def_readwrite("workers", &CampaignConfig::workers)
      .def_readwrite("thresholds", &CampaignConfig::thresholds);

  py::class_<SnrResult>(m, "SnrResult")
      .def_readonly("snr_db", &SnrResult::snr_db)
      .def_readonly("codewords", &SnrResult::codewords)
      .def_readonly("frame_errors", &SnrResult::frame_errors)
      .def_readonly("fer", &SnrResult::fer)
      .def_readonly("t_av", &SnrResult::t_av)
      .def_readonly("v_t", &SnrResult::v_t)
      .def_readonly("early_stops", &SnrResult::early_stops)
      .def_readonly("decoder", &SnrResult::decoder);

  m.def("run_snr_point", &run_snr_point, py::arg("config"), py::arg("snr_db"),
        py::call_guard<py::gil_scoped_release>());
  m.def("run_campaign", &run_campaign, py::arg("config"),
        py::call_guard<py::gil_scoped_release>());
  m.def("emit_results", &emit_results, py::arg("results"), py::arg("path"));
  m.def("parse_results", &parse_results, py::arg("path"));
}
