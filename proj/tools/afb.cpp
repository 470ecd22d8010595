// Command-line front end: mixture creation, filterbank inspection, roundtrip
// checks, and the oracle-mask separation sweep.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "afb/calibration.hpp"
#include "afb/common.hpp"
#include "afb/dump.hpp"
#include "afb/filterbank.hpp"
#include "afb/masking.hpp"
#include "afb/metrics.hpp"
#include "afb/mixing.hpp"
#include "afb/synth.hpp"
#include "afb/transform.hpp"
#include "afb/waveform.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::size_t window_ms_to_len(double ms, int rate) {
  const double exact = ms * rate / 1000.0;
  const double rounded = std::round(exact);
  if (std::abs(exact - rounded) > 1e-9 ||
      static_cast<long long>(rounded) % 2 != 0 || rounded < 2)
    throw afb::Error(afb::ErrorCategory::config,
                     "window of " + fmt(ms) + " ms is not an even sample count at " +
                         std::to_string(rate) + " Hz");
  return static_cast<std::size_t>(rounded);
}

struct BankSpec {
  afb::FilterFamily family = afb::FilterFamily::stft;
  std::size_t n_filters = 512;
  std::size_t kernel_len = 0;
  int sample_rate = 8000;
  std::string free_weights;  // filterbank dump supplying free coefficients
};

afb::Filterbank build_bank(const BankSpec& spec) {
  afb::FilterbankConfig cfg;
  cfg.family = spec.family;
  cfg.n_filters = spec.n_filters;
  cfg.kernel_len = spec.kernel_len;
  cfg.sample_rate = spec.sample_rate;
  switch (spec.family) {
    case afb::FilterFamily::stft:
      cfg.n_filters = spec.kernel_len / 2 + 1;
      return afb::build_stft_filterbank(cfg);
    case afb::FilterFamily::param_sinc:
    case afb::FilterFamily::param_sinc_analytic: {
      const auto params =
          afb::init_param_frequencies(spec.n_filters, spec.sample_rate);
      return afb::build_param_sinc(
          params, spec.family == afb::FilterFamily::param_sinc_analytic, cfg);
    }
    case afb::FilterFamily::free:
    case afb::FilterFamily::free_analytic: {
      if (spec.free_weights.empty())
        throw afb::Error(afb::ErrorCategory::config,
                         "free families need --free-weights");
      const afb::Filterbank loaded =
          afb::load_filterbank_json(spec.free_weights);
      afb::RealMatrix a(loaded.analysis.rows, loaded.analysis.cols);
      afb::RealMatrix s(loaded.synthesis.rows, loaded.synthesis.cols);
      a.data = loaded.analysis.re;
      s.data = loaded.synthesis.re;
      cfg.hop = loaded.config.hop;
      cfg.sample_rate = spec.sample_rate;
      return afb::build_free_filterbank(
          a, s, spec.family == afb::FilterFamily::free_analytic, cfg);
    }
  }
  throw afb::Error(afb::ErrorCategory::config, "unreachable family");
}

std::vector<afb::Waveform> calibration_noise(int rate, std::uint64_t seed,
                                             int count, double seconds) {
  afb::Rng rng(seed);
  std::vector<afb::Waveform> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(afb::synth_white_noise(rng, seconds, rate));
  return out;
}

// ---------------------------------------------------------------- mix ----

struct MixArgs {
  std::string out_dir;
  bool synthetic = false;
  std::string input_dir;
  int count = 10;
  std::uint64_t seed = 0;
  double duration = 3.0;
  int rate = 8000;
  double spk_min = 0.0, spk_max = 5.0;
  bool with_noise = false;
  double noise_min = -3.0, noise_max = 6.0;
  std::string encoding = "float32";
};

int cmd_mix(const MixArgs& a) {
  if (!a.synthetic && a.input_dir.empty())
    throw afb::Error(afb::ErrorCategory::config,
                     "mix needs --synthetic or --input-dir");
  const afb::WavEncoding enc = a.encoding == "pcm16" ? afb::WavEncoding::pcm16
                                                     : afb::WavEncoding::float32;
  fs::create_directories(a.out_dir);
  afb::Rng rng(a.seed);

  std::vector<afb::Waveform> pool;
  if (!a.input_dir.empty()) {
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(a.input_dir))
      if (e.is_regular_file() && e.path().extension() == ".wav")
        files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    if (files.size() < 2)
      throw afb::Error(afb::ErrorCategory::config,
                       "--input-dir needs at least two wav files");
    // seeded Fisher-Yates, then consecutive pairing
    for (std::size_t i = files.size(); i > 1; --i)
      std::swap(files[i - 1], files[rng.uniform_index(i)]);
    for (const auto& f : files) pool.push_back(afb::read_wav(f));
  }

  json manifest;
  manifest["format"] = "afb-mix-manifest";
  manifest["version"] = 1;
  manifest["seed"] = a.seed;
  manifest["sample_rate"] = a.rate;
  manifest["speaker_snr_range_db"] = {a.spk_min, a.spk_max};
  if (a.with_noise)
    manifest["noise_snr_range_db"] = {a.noise_min, a.noise_max};
  else
    manifest["noise_snr_range_db"] = nullptr;
  manifest["utterances"] = json::array();

  const int n_mixtures =
      a.synthetic ? a.count
                  : std::min<int>(a.count, static_cast<int>(pool.size() / 2));
  if (n_mixtures < 1)
    throw afb::Error(afb::ErrorCategory::config, "empty input set");
  for (int i = 0; i < n_mixtures; ++i) {
    char id[16];
    std::snprintf(id, sizeof(id), "utt_%03d", i);
    afb::SyntheticMixture m;
    if (a.synthetic) {
      m = afb::make_synthetic_mixture(
          rng, a.duration, a.rate, {a.spk_min, a.spk_max},
          a.with_noise ? std::optional(std::pair{a.noise_min, a.noise_max})
                       : std::nullopt);
    } else {
      const afb::Waveform& s1 = pool[static_cast<std::size_t>(2 * i)];
      const afb::Waveform& s2 = pool[static_cast<std::size_t>(2 * i + 1)];
      m.speaker_snr_db = rng.uniform(a.spk_min, a.spk_max);
      std::optional<afb::Waveform> noise;
      if (a.with_noise) {
        m.noise_snr_db = rng.uniform(a.noise_min, a.noise_max);
        noise = afb::synth_ambient_noise(
            rng, static_cast<double>(std::min(s1.size(), s2.size())) /
                     s1.sample_rate,
            s1.sample_rate);
      }
      afb::MixResult r = afb::mix_sources(s1, s2, m.speaker_snr_db,
                                          noise ? &*noise : nullptr,
                                          m.noise_snr_db);
      m.mixture = std::move(r.mixture);
      m.refs = std::move(r.scaled_refs);
      m.noise = std::move(r.scaled_noise);
    }

    const std::string base = std::string(id);
    json utt;
    utt["id"] = base;
    utt["speaker_snr_db"] = m.speaker_snr_db;
    utt["noise_snr_db"] = m.noise_snr_db ? json(*m.noise_snr_db) : json(nullptr);
    utt["mixture"] = base + "_mix.wav";
    utt["sources"] = {base + "_s1.wav", base + "_s2.wav"};
    afb::write_wav(a.out_dir + "/" + base + "_mix.wav", m.mixture, enc);
    afb::write_wav(a.out_dir + "/" + base + "_s1.wav", m.refs[0], enc);
    afb::write_wav(a.out_dir + "/" + base + "_s2.wav", m.refs[1], enc);
    if (m.noise) {
      utt["noise"] = base + "_noise.wav";
      afb::write_wav(a.out_dir + "/" + base + "_noise.wav", *m.noise, enc);
    } else {
      utt["noise"] = nullptr;
    }
    manifest["utterances"].push_back(utt);
  }

  std::ofstream f(a.out_dir + "/manifest.json", std::ios::trunc);
  if (!f)
    throw afb::Error(afb::ErrorCategory::io, "cannot write manifest.json");
  f << manifest.dump(1, '\t') << '\n';
  std::cout << "wrote " << n_mixtures << " mixtures to " << a.out_dir << "\n";
  return 0;
}

// ------------------------------------------------------------ dump-fb ----

struct DumpFbArgs {
  BankSpec spec;
  double window_ms = 0.0;
  std::string out;
  std::string response_csv;
  std::size_t n_fft = 2048;
  bool fit_gains = false;
  std::uint64_t calib_seed = 1234;
};

int cmd_dump_fb(DumpFbArgs a) {
  if (a.window_ms > 0.0)
    a.spec.kernel_len = window_ms_to_len(a.window_ms, a.spec.sample_rate);
  afb::Filterbank bank = build_bank(a.spec);
  if (a.fit_gains) {
    const auto calib = calibration_noise(a.spec.sample_rate, a.calib_seed, 2, 1.0);
    const auto gains = afb::fit_synthesis_gains(bank, calib);
    afb::set_synthesis_gains(bank, gains);
  }
  afb::dump_filterbank_json(bank, a.out);
  std::cout << "wrote " << a.out << " (" << afb::family_name(bank.config.family)
            << ", N=" << bank.config.n_filters
            << ", L=" << bank.config.kernel_len << ")\n";

  if (!a.response_csv.empty()) {
    const std::size_t n_fft = std::max(a.n_fft, bank.config.kernel_len);
    std::ofstream f(a.response_csv, std::ios::trunc);
    if (!f)
      throw afb::Error(afb::ErrorCategory::io, "cannot write " + a.response_csv);
    f << "filter,f_center,f_width,peak_freq\n";
    for (std::size_t n = 0; n < bank.config.n_filters; ++n) {
      const auto mag = afb::filter_frequency_response(bank.analysis, n, n_fft);
      // peak over [0, 0.5]
      std::size_t peak = 0;
      for (std::size_t b = 1; b <= n_fft / 2; ++b)
        if (mag[b] > mag[peak]) peak = b;
      double fc = std::nan(""), fw = std::nan("");
      if (bank.params) {
        fc = bank.params->fc(n);
        fw = bank.params->fw(n);
      } else if (bank.config.family == afb::FilterFamily::stft) {
        fc = static_cast<double>(n) / static_cast<double>(bank.config.kernel_len);
        fw = 1.0 / static_cast<double>(bank.config.kernel_len);
      }
      f << n << ',' << fmt(fc) << ',' << fmt(fw) << ','
        << fmt(static_cast<double>(peak) / static_cast<double>(n_fft)) << '\n';
    }
  }
  return 0;
}

// ---------------------------------------------------------- roundtrip ----

struct RoundtripArgs {
  BankSpec spec;
  double window_ms = 0.0;
  std::string in_wav;
  bool synthetic = false;
  std::uint64_t seed = 0;
  double duration = 3.0;
  bool fit_gains = false;
  std::uint64_t calib_seed = 1234;
};

int cmd_roundtrip(RoundtripArgs a) {
  if (a.window_ms > 0.0)
    a.spec.kernel_len = window_ms_to_len(a.window_ms, a.spec.sample_rate);
  afb::Waveform x;
  if (!a.in_wav.empty()) {
    x = afb::read_wav(a.in_wav);
    a.spec.sample_rate = x.sample_rate;
  } else if (a.synthetic) {
    afb::Rng rng(a.seed);
    x = afb::synth_harmonic_source(rng, a.duration, a.spec.sample_rate);
  } else {
    throw afb::Error(afb::ErrorCategory::config,
                     "roundtrip needs --in or --synthetic");
  }

  afb::Filterbank bank = build_bank(a.spec);
  const afb::TFRepresentation rep = afb::analyze(x, bank);
  const double unfitted = afb::si_sdr(afb::synthesize(rep, bank), x);
  std::cout << "roundtrip family=" << afb::family_name(bank.config.family)
            << " L=" << bank.config.kernel_len
            << " N=" << bank.config.n_filters << " si_sdr_db=" << fmt(unfitted)
            << "\n";
  if (a.fit_gains) {
    const auto calib =
        calibration_noise(a.spec.sample_rate, a.calib_seed, 2, 1.0);
    const auto gains = afb::fit_synthesis_gains(bank, calib);
    afb::set_synthesis_gains(bank, gains);
    const double fitted = afb::si_sdr(afb::synthesize(rep, bank), x);
    std::cout << "roundtrip family=" << afb::family_name(bank.config.family)
              << " L=" << bank.config.kernel_len
              << " N=" << bank.config.n_filters
              << " fitted_gains=true si_sdr_db=" << fmt(fitted) << "\n";
  }
  return 0;
}

// -------------------------------------------------------- oracle-eval ----

struct OracleArgs {
  std::string manifest;
  std::string out_csv;
  std::string summary_path;
  std::string families = "stft";
  std::string window_ms = "2,5,10,25,50";
  std::size_t n_filters = 512;
  std::vector<std::string> n_filter_overrides;  // family=N
  std::string mask_kinds = "compl,mag";
  bool null_mask = false;
  bool fit_gains = true;
  double clip = afb::kMaskClipDefault;
  std::uint64_t calib_seed = 1234;
};

struct LoadedUtterance {
  std::string id;
  afb::Waveform mixture;
  std::vector<afb::Waveform> refs;
  std::optional<afb::Waveform> noise;
};

int cmd_oracle_eval(const OracleArgs& a) {
  std::ifstream mf(a.manifest);
  if (!mf) throw afb::Error(afb::ErrorCategory::io, "cannot open " + a.manifest);
  json manifest;
  try {
    mf >> manifest;
  } catch (const json::exception& e) {
    throw afb::Error(afb::ErrorCategory::format,
                     a.manifest + ": " + e.what());
  }
  if (manifest.value("format", "") != "afb-mix-manifest")
    throw afb::Error(afb::ErrorCategory::format,
                     a.manifest + ": not a mix manifest");
  const fs::path root = fs::path(a.manifest).parent_path();
  const int rate = manifest.at("sample_rate").get<int>();

  std::vector<LoadedUtterance> utts;
  for (const auto& u : manifest.at("utterances")) {
    LoadedUtterance lu;
    lu.id = u.at("id").get<std::string>();
    lu.mixture = afb::read_wav((root / u.at("mixture").get<std::string>()).string());
    for (const auto& s : u.at("sources"))
      lu.refs.push_back(afb::read_wav((root / s.get<std::string>()).string()));
    if (!u.at("noise").is_null())
      lu.noise = afb::read_wav((root / u.at("noise").get<std::string>()).string());
    if (lu.mixture.sample_rate != rate)
      throw afb::Error(afb::ErrorCategory::config,
                       lu.id + ": wav rate disagrees with manifest");
    if (lu.refs.size() != 2)
      throw afb::Error(afb::ErrorCategory::config,
                       lu.id + ": exactly two sources expected");
    utts.push_back(std::move(lu));
  }
  if (utts.empty())
    throw afb::Error(afb::ErrorCategory::config, "manifest has no utterances");

  std::map<std::string, std::size_t> overrides;
  for (const auto& ov : a.n_filter_overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw afb::Error(afb::ErrorCategory::config,
                       "override must look like family=N: " + ov);
    overrides[ov.substr(0, eq)] =
        static_cast<std::size_t>(std::stoul(ov.substr(eq + 1)));
  }

  std::vector<std::string> mask_list = split_list(a.mask_kinds);
  if (a.null_mask) mask_list.push_back("null");

  std::ofstream out(a.out_csv, std::ios::trunc);
  if (!out) throw afb::Error(afb::ErrorCategory::io, "cannot write " + a.out_csv);
  out << "family,window_ms,kernel_len,n_filters,mask_kind,utterance,"
         "si_sdr_1,si_sdr_2,si_sdri_1,si_sdri_2,mean_si_sdri\n";

  struct SummaryRow {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::string, SummaryRow> summary;  // keyed by the config prefix

  for (const std::string& fam_name : split_list(a.families)) {
    const afb::FilterFamily family = afb::family_from_name(fam_name);
    for (const std::string& ms_str : split_list(a.window_ms)) {
      const double ms = std::stod(ms_str);
      BankSpec spec;
      spec.family = family;
      spec.sample_rate = rate;
      spec.kernel_len = window_ms_to_len(ms, rate);
      spec.n_filters = overrides.count(fam_name) ? overrides.at(fam_name)
                                                 : a.n_filters;
      afb::Filterbank bank = build_bank(spec);
      if (a.fit_gains && bank.params) {
        const auto calib = calibration_noise(rate, a.calib_seed, 2, 1.0);
        afb::set_synthesis_gains(bank, afb::fit_synthesis_gains(bank, calib));
      }

      for (const std::string& kind_name : mask_list) {
        for (const auto& utt : utts) {
          const afb::TFRepresentation mix_rep = afb::analyze(utt.mixture, bank);
          std::vector<afb::Waveform> ests;
          if (kind_name == "null") {
            ests.assign(2, utt.mixture);
          } else {
            std::vector<afb::TFRepresentation> src_reps;
            for (const auto& r : utt.refs)
              src_reps.push_back(afb::analyze(r, bank));
            std::vector<afb::Mask> masks;
            if (kind_name == "irm") {
              std::optional<afb::TFRepresentation> noise_rep;
              if (utt.noise) noise_rep = afb::analyze(*utt.noise, bank);
              masks = afb::irm(src_reps, noise_rep ? &*noise_rep : nullptr);
            } else {
              masks = afb::ideal_masks(src_reps, mix_rep,
                                       afb::mask_kind_from_name(kind_name),
                                       a.clip);
            }
            for (const auto& m : masks)
              ests.push_back(afb::synthesize(afb::apply_mask(mix_rep, m), bank));
          }
          const afb::ScoreReport score =
              afb::pit_score(ests, utt.refs, utt.mixture);

          const std::string prefix = fam_name + "," + ms_str + "," +
                                     std::to_string(bank.config.kernel_len) +
                                     "," +
                                     std::to_string(bank.config.n_filters) +
                                     "," + kind_name;
          out << prefix << ',' << utt.id << ','
              << fmt(score.per_source_si_sdr[0]) << ','
              << fmt(score.per_source_si_sdr[1]) << ','
              << fmt(score.per_source_si_sdri[0]) << ','
              << fmt(score.per_source_si_sdri[1]) << ','
              << fmt(score.mean_si_sdri) << '\n';
          auto& row = summary[prefix];
          row.sum += score.mean_si_sdri;
          row.count += 1;
        }
      }
    }
  }
  out.close();

  if (!a.summary_path.empty()) {
    std::ofstream sf(a.summary_path, std::ios::trunc);
    if (!sf)
      throw afb::Error(afb::ErrorCategory::io, "cannot write " + a.summary_path);
    sf << "family,window_ms,kernel_len,n_filters,mask_kind,num_utterances,"
          "mean_si_sdri\n";
    for (const auto& [prefix, row] : summary)
      sf << prefix << ',' << row.count << ','
         << fmt(row.sum / static_cast<double>(row.count)) << '\n';
  }
  std::cout << "wrote " << a.out_csv << "\n";
  return 0;
}

// ----------------------------------------------------------- gradcheck ----

struct GradcheckArgs {
  int draws = 50;
  std::uint64_t seed = 123;
  std::size_t kernel_len = 101;
  double step = 1e-6;
  double tol = 1e-5;
  bool analytic = true;
  int rate = 8000;
  std::string report_path;
};

int cmd_gradcheck(const GradcheckArgs& a) {
  afb::Rng rng(a.seed);
  double worst = 0.0;
  std::vector<double> per_draw;
  for (int d = 0; d < a.draws; ++d) {
    afb::ParamSincParams p;
    const double f1 = rng.uniform(0.05, 0.40);
    const double f2 = rng.uniform(f1 + 0.01, 0.45);
    p.f1 = {f1};
    p.f2 = {f2};
    p.gains = {1.0};

    afb::FilterbankConfig cfg;
    cfg.kernel_len = a.kernel_len;
    cfg.sample_rate = a.rate;
    cfg.n_filters = 1;
    const auto grads = afb::param_filter_gradients(p, cfg, a.analytic);

    // central differences of the builder in the (fw, fc) parameterization
    auto build_row = [&](double fw, double fc) {
      afb::ParamSincParams q;
      q.f1 = {fc - fw / 2.0};
      q.f2 = {fc + fw / 2.0};
      q.gains = {1.0};
      return afb::build_param_sinc(q, a.analytic, cfg);
    };
    const double fw0 = p.fw(0), fc0 = p.fc(0);
    double draw_worst = 0.0;
    for (int which = 0; which < 2; ++which) {
      const double h = a.step;
      const afb::Filterbank plus = which == 0 ? build_row(fw0 + h, fc0)
                                              : build_row(fw0, fc0 + h);
      const afb::Filterbank minus = which == 0 ? build_row(fw0 - h, fc0)
                                               : build_row(fw0, fc0 - h);
      const afb::ComplexMatrix& g = which == 0 ? grads.d_fw : grads.d_fc;
      double num = 0.0, den = 0.0;
      for (std::size_t l = 0; l < a.kernel_len; ++l) {
        const double fdr = (plus.analysis.row_re(0)[l] -
                            minus.analysis.row_re(0)[l]) / (2.0 * h);
        const double fdi = (plus.analysis.row_im(0)[l] -
                            minus.analysis.row_im(0)[l]) / (2.0 * h);
        num += (g.row_re(0)[l] - fdr) * (g.row_re(0)[l] - fdr) +
               (g.row_im(0)[l] - fdi) * (g.row_im(0)[l] - fdi);
        den += fdr * fdr + fdi * fdi;
      }
      draw_worst = std::max(draw_worst, std::sqrt(num / std::max(den, 1e-300)));
    }
    per_draw.push_back(draw_worst);
    worst = std::max(worst, draw_worst);
  }
  std::cout << "gradcheck draws=" << a.draws << " L=" << a.kernel_len
            << " step=" << fmt(a.step) << " max_rel_error=" << fmt(worst)
            << (worst <= a.tol ? " OK" : " FAIL") << "\n";
  if (!a.report_path.empty()) {
    json rep;
    rep["format"] = "afb-grad-report";
    rep["version"] = 1;
    rep["draws"] = a.draws;
    rep["kernel_len"] = a.kernel_len;
    rep["step"] = a.step;
    rep["analytic"] = a.analytic;
    rep["max_rel_error"] = worst;
    rep["per_draw"] = per_draw;
    std::ofstream f(a.report_path, std::ios::trunc);
    if (!f)
      throw afb::Error(afb::ErrorCategory::io, "cannot write " + a.report_path);
    f << rep.dump(1, '\t') << '\n';
  }
  if (worst > a.tol)
    throw afb::Error(afb::ErrorCategory::numeric,
                     "gradient check exceeded tolerance");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analytic filterbank toolkit"};
  app.require_subcommand(1);

  MixArgs mix;
  auto* c_mix = app.add_subcommand("mix", "create 2-source mixtures + manifest");
  c_mix->add_option("--out", mix.out_dir, "output directory")->required();
  c_mix->add_flag("--synthetic", mix.synthetic, "seeded synthetic sources");
  c_mix->add_option("--input-dir", mix.input_dir, "directory of mono wavs");
  c_mix->add_option("--n", mix.count, "number of mixtures");
  c_mix->add_option("--seed", mix.seed, "random seed");
  c_mix->add_option("--duration", mix.duration, "seconds per synthetic source");
  c_mix->add_option("--rate", mix.rate, "sample rate for synthetic sources");
  c_mix->add_option("--speaker-snr-min", mix.spk_min, "dB");
  c_mix->add_option("--speaker-snr-max", mix.spk_max, "dB");
  c_mix->add_flag("--noise", mix.with_noise, "add a noise track");
  c_mix->add_option("--noise-snr-min", mix.noise_min, "dB");
  c_mix->add_option("--noise-snr-max", mix.noise_max, "dB");
  c_mix->add_option("--encoding", mix.encoding, "float32|pcm16")
      ->check(CLI::IsMember({"float32", "pcm16"}));

  DumpFbArgs dump;
  std::string dump_family = "stft";
  auto* c_dump = app.add_subcommand("dump-fb", "write a filterbank dump");
  c_dump->add_option("--family", dump_family,
                     "stft|param-sinc|param-sinc-analytic|free|free-analytic");
  c_dump->add_option("--n-filters", dump.spec.n_filters, "filter count");
  c_dump->add_option("--kernel-len", dump.spec.kernel_len, "filter length L");
  c_dump->add_option("--window-ms", dump.window_ms, "window size in ms");
  c_dump->add_option("--rate", dump.spec.sample_rate, "sample rate");
  c_dump->add_option("--free-weights", dump.spec.free_weights,
                     "filterbank dump supplying free coefficients");
  c_dump->add_option("--out", dump.out, "dump path")->required();
  c_dump->add_option("--response-csv", dump.response_csv,
                     "per-filter frequency response table");
  c_dump->add_option("--n-fft", dump.n_fft, "response resolution");
  c_dump->add_flag("--fit-gains", dump.fit_gains, "fit synthesis gains first");
  c_dump->add_option("--calib-seed", dump.calib_seed, "calibration noise seed");

  RoundtripArgs rt;
  std::string rt_family = "stft";
  auto* c_rt = app.add_subcommand("roundtrip",
                                  "analyze -> identity mask -> synthesize");
  c_rt->add_option("--family", rt_family, "filter family");
  c_rt->add_option("--n-filters", rt.spec.n_filters, "filter count");
  c_rt->add_option("--kernel-len", rt.spec.kernel_len, "filter length L");
  c_rt->add_option("--window-ms", rt.window_ms, "window size in ms");
  c_rt->add_option("--rate", rt.spec.sample_rate, "sample rate");
  c_rt->add_option("--free-weights", rt.spec.free_weights, "free coefficients");
  c_rt->add_option("--in", rt.in_wav, "input wav");
  c_rt->add_flag("--synthetic", rt.synthetic, "use a seeded synthetic signal");
  c_rt->add_option("--seed", rt.seed, "seed for --synthetic");
  c_rt->add_option("--duration", rt.duration, "seconds for --synthetic");
  c_rt->add_flag("--fit-gains", rt.fit_gains, "also report fitted gains");
  c_rt->add_option("--calib-seed", rt.calib_seed, "calibration noise seed");

  OracleArgs oracle;
  auto* c_or = app.add_subcommand("oracle-eval",
                                  "oracle-mask separation sweep over a manifest");
  c_or->add_option("--manifest", oracle.manifest, "manifest.json from mix")
      ->required();
  c_or->add_option("--out", oracle.out_csv, "per-utterance CSV")->required();
  c_or->add_option("--summary", oracle.summary_path, "per-config mean CSV");
  c_or->add_option("--families", oracle.families, "comma-separated families");
  c_or->add_option("--window-ms", oracle.window_ms, "comma-separated ms grid");
  c_or->add_option("--n-filters", oracle.n_filters, "default filter count");
  c_or->add_option("--n-filters-override", oracle.n_filter_overrides,
                   "family=N, repeatable");
  c_or->add_option("--mask-kinds", oracle.mask_kinds, "compl,mag,reim,irm");
  c_or->add_flag("--null-mask", oracle.null_mask,
                 "also score the mixture as its own estimate");
  c_or->add_flag("!--no-fit-gains", oracle.fit_gains,
                 "skip gain fitting for parametric banks");
  c_or->add_option("--clip", oracle.clip, "oracle mask clip limit");
  c_or->add_option("--calib-seed", oracle.calib_seed, "calibration noise seed");

  GradcheckArgs gc;
  auto* c_gc = app.add_subcommand("gradcheck",
                                  "analytic vs finite-difference filter gradients");
  c_gc->add_option("--draws", gc.draws, "random parameter draws");
  c_gc->add_option("--seed", gc.seed, "seed");
  c_gc->add_option("--kernel-len", gc.kernel_len, "filter length L");
  c_gc->add_option("--step", gc.step, "finite-difference step");
  c_gc->add_option("--tol", gc.tol, "max relative error tolerance");
  c_gc->add_flag("!--no-analytic", gc.analytic, "check the real family instead");
  c_gc->add_option("--out", gc.report_path, "write the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_mix->parsed()) return cmd_mix(mix);
    if (c_dump->parsed()) {
      dump.spec.family = afb::family_from_name(dump_family);
      return cmd_dump_fb(dump);
    }
    if (c_rt->parsed()) {
      rt.spec.family = afb::family_from_name(rt_family);
      return cmd_roundtrip(rt);
    }
    if (c_or->parsed()) return cmd_oracle_eval(oracle);
    if (c_gc->parsed()) return cmd_gradcheck(gc);
  } catch (const afb::Error& e) {
    std::cerr << "error: category=" << afb::error_category_name(e.category())
              << " " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: category=internal " << e.what() << "\n";
    return 1;
  }
  return 0;
}
