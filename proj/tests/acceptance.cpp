// Acceptance suite: one case per criterion, each printing a pass/fail line
// with its runtime. Run via ctest or directly; also exercises the CLI binary
// for the determinism criterion.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "afb/calibration.hpp"
#include "afb/filterbank.hpp"
#include "afb/masking.hpp"
#include "afb/metrics.hpp"
#include "afb/mixing.hpp"
#include "afb/synth.hpp"
#include "afb/transform.hpp"
#include "oracles.hpp"

using namespace afb;
namespace fs = std::filesystem;

namespace {

// criterion-3 fixture: max relative L2 mismatch between Im(u) and H[Re(u)]
// for Hamming-windowed analytic sinc filters, measured once on the grid
// below (L=129, 50 seeded passbands in [0.05, 0.45]; worst draw 5.14e-03)
// and frozen with margin
constexpr double kWindowedAnalyticityFixture = 6.5e-03;

class Gate {
 public:
  Gate(std::string name, double budget_s)
      : name_(std::move(name)),
        budget_s_(budget_s),
        start_(std::chrono::steady_clock::now()) {}

  void expect(bool cond, const char* what) {
    if (!cond) {
      ok_ = false;
      failures_.push_back(what);
    }
  }

  ~Gate() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
            .count();
    const bool in_budget = elapsed <= budget_s_;
    std::printf("[acceptance] %-52s %s  (%.2fs / %.0fs)\n", name_.c_str(),
                ok_ && in_budget ? "PASS" : "FAIL", elapsed, budget_s_);
    for (const auto* f : failures_) std::printf("             failed: %s\n", f);
    CHECK(ok_);
    CHECK(in_budget);
  }

 private:
  std::string name_;
  double budget_s_;
  std::chrono::steady_clock::time_point start_;
  bool ok_ = true;
  std::vector<const char*> failures_;
};

ParamSincParams single(double f1, double f2) {
  ParamSincParams p;
  p.f1 = {f1};
  p.f2 = {f2};
  p.gains = {1.0};
  return p;
}

FilterbankConfig cfg_of(std::size_t n, std::size_t len, int rate = 8000) {
  FilterbankConfig c;
  c.n_filters = n;
  c.kernel_len = len;
  c.sample_rate = rate;
  return c;
}

double hilbert_mismatch(const Filterbank& fb, std::size_t row) {
  const std::size_t len = fb.config.kernel_len;
  std::vector<double> re(fb.analysis.row_re(row), fb.analysis.row_re(row) + len);
  const auto h = discrete_hilbert(re);
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < len; ++t) {
    const double d = fb.analysis.row_im(row)[t] - h[t].imag();
    num += d * d;
    den += fb.analysis.row_im(row)[t] * fb.analysis.row_im(row)[t];
  }
  return std::sqrt(num / den);
}

Mask identity_complex_mask(const TFRepresentation& rep) {
  Mask m;
  m.kind = MaskKind::complex_product;
  m.data = ComplexMatrix(rep.coeffs.rows, rep.coeffs.cols);
  for (auto& v : m.data.re) v = 1.0;
  return m;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f);
  return std::string((std::istreambuf_iterator<char>(f)),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("criterion 1: sinc difference and product forms agree") {
  Gate gate("1 sinc difference/product identity < 1e-12", 1.0);
  Rng rng(101);
  const std::size_t len = 201;
  const double center = 0.5 * (len - 1);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const double f1 = rng.uniform(1e-3, 0.49);
    const double f2 = rng.uniform(f1 + 1e-3, 0.5);
    const auto prod = sinc_bandpass(f1, f2, len);
    for (std::size_t l = 0; l < len; ++l) {
      const double t = static_cast<double>(l) - center;
      worst = std::max(
          worst, std::abs(prod[l] - oracles::sinc_difference_form(f1, f2, t)));
    }
  }
  gate.expect(worst < 1e-12, "max abs deviation reached 1e-12");
}

TEST_CASE("criterion 2: discrete Hilbert correctness") {
  Gate gate("2 Hilbert: bin tones + negative-frequency energy", 1.0);
  // cosines on exact DFT bins map to the matching sines
  double worst_tone = 0.0;
  for (std::size_t len : {64u, 63u, 128u}) {
    for (std::size_t bin : {1u, 4u, 9u}) {
      std::vector<double> u(len);
      for (std::size_t t = 0; t < len; ++t)
        u[t] = std::cos(2.0 * oracles::kPi * static_cast<double>(bin) *
                        static_cast<double>(t) / static_cast<double>(len));
      const auto a = discrete_hilbert(u);
      for (std::size_t t = 0; t < len; ++t) {
        const double s =
            std::sin(2.0 * oracles::kPi * static_cast<double>(bin) *
                     static_cast<double>(t) / static_cast<double>(len));
        worst_tone = std::max(worst_tone, std::abs(a[t].imag() - s));
      }
    }
  }
  gate.expect(worst_tone < 1e-12, "bin-tone quadrature error reached 1e-12");

  // analytic outputs carry no negative-frequency energy (naive DFT oracle)
  Rng rng(102);
  double worst_neg = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t len = 128;
    std::vector<double> u(len);
    for (auto& v : u) v = rng.uniform(-1.0, 1.0);
    const auto a = discrete_hilbert(u);
    std::vector<std::complex<double>> az(a.begin(), a.end());
    const auto spec = oracles::naive_dft(az);
    double neg = 0.0, total = 0.0;
    for (std::size_t k = 0; k < len; ++k) {
      total += std::norm(spec[k]);
      if (k > len / 2) neg += std::norm(spec[k]);
    }
    worst_neg = std::max(worst_neg, neg / total);
  }
  gate.expect(worst_neg < 1e-20, "negative-frequency energy reached 1e-20");
}

TEST_CASE("criterion 3: analyticity of parametric filters") {
  Gate gate("3 analyticity exact unwindowed, fixture windowed", 5.0);
  Rng rng(103);
  const std::size_t len = 129;
  double worst_plain = 0.0, worst_windowed = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double f1 = rng.uniform(0.05, 0.40);
    const double f2 = rng.uniform(f1 + 0.01, 0.45);
    const auto plain = build_param_sinc(single(f1, f2), true, cfg_of(1, len),
                                        FilterWindow::none);
    const auto windowed =
        build_param_sinc(single(f1, f2), true, cfg_of(1, len));
    worst_plain = std::max(worst_plain, hilbert_mismatch(plain, 0));
    worst_windowed = std::max(worst_windowed, hilbert_mismatch(windowed, 0));
  }
  gate.expect(worst_plain < 1e-10, "unwindowed Im != H[Re] beyond 1e-10");
  gate.expect(worst_windowed < kWindowedAnalyticityFixture,
              "windowed mismatch exceeded the recorded fixture");
  std::printf("             windowed mismatch measured %.3e (fixture %.1e)\n",
              worst_windowed, kWindowedAnalyticityFixture);
}

TEST_CASE("criterion 4: stft perfect reconstruction across the grid") {
  Gate gate("4 stft PR >= 50 dB for L in {16,40,80,200,400}", 10.0);
  Rng rng(104);
  Waveform x;
  x.sample_rate = 8000;
  x.samples.resize(16000);
  for (auto& v : x.samples) v = rng.uniform(-1.0, 1.0);
  for (std::size_t len : {16u, 40u, 80u, 200u, 400u}) {
    const Filterbank fb = build_stft_filterbank(cfg_of(0, len));
    const auto rep = analyze(x, fb);
    const Waveform back = synthesize(apply_mask(rep, identity_complex_mask(rep)), fb);
    const double sdr = si_sdr(back, x);
    gate.expect(sdr >= 50.0, "reconstruction below 50 dB");
  }
}

TEST_CASE("criterion 5: oracle masks through the PR stft") {
  Gate gate("5 compl oracle >= 40 dB mean; mag <= compl + 0.1", 60.0);
  Rng rng(105);
  std::vector<SyntheticMixture> mixtures;
  for (int i = 0; i < 10; ++i)
    mixtures.push_back(
        make_synthetic_mixture(rng, 3.0, 8000, {0.0, 5.0}, std::nullopt));

  for (std::size_t len : {80u, 200u}) {
    const Filterbank fb = build_stft_filterbank(cfg_of(0, len));
    double sum_compl = 0.0;
    bool mag_bounded = true;
    for (const auto& mx : mixtures) {
      const auto mix_rep = analyze(mx.mixture, fb);
      std::vector<TFRepresentation> src_reps;
      for (const auto& r : mx.refs) src_reps.push_back(analyze(r, fb));

      const auto compl_masks =
          ideal_masks(src_reps, mix_rep, MaskKind::complex_product);
      const auto mag_masks = ideal_masks(src_reps, mix_rep, MaskKind::mag);
      double compl_mean = 0.0, mag_mean = 0.0;
      for (std::size_t s = 0; s < 2; ++s) {
        const Waveform ec =
            synthesize(apply_mask(mix_rep, compl_masks[s]), fb);
        const Waveform em = synthesize(apply_mask(mix_rep, mag_masks[s]), fb);
        compl_mean += si_sdr_improvement(ec, mx.refs[s], mx.mixture) / 2.0;
        mag_mean += si_sdr_improvement(em, mx.refs[s], mx.mixture) / 2.0;
      }
      sum_compl += compl_mean;
      if (mag_mean > compl_mean + 0.1) mag_bounded = false;
    }
    const double mean_compl = sum_compl / 10.0;
    std::printf("             L=%zu compl-oracle mean SI-SDRi %.1f dB\n", len,
                mean_compl);
    gate.expect(mean_compl >= 40.0, "compl-oracle mean below 40 dB");
    gate.expect(mag_bounded, "mag oracle beat compl beyond the slack");
  }
}

TEST_CASE("criterion 6: shift invariance and the real-family failure") {
  Gate gate("6 modulus shift invariance; analytic beats real", 30.0);
  const std::size_t len = 129;
  const double tone_f = 0.25;
  const Filterbank analytic =
      build_param_sinc(single(0.2, 0.3), true, cfg_of(1, len));
  const Filterbank real_fb =
      build_param_sinc(single(0.2, 0.3), false, cfg_of(1, len));

  auto modulus_at_interior = [&](const Filterbank& fb, double phase) {
    Waveform x;
    x.sample_rate = 8000;
    x.samples.resize(2000);
    for (std::size_t t = 0; t < x.size(); ++t)
      x.samples[t] =
          std::cos(2.0 * oracles::kPi * tone_f * static_cast<double>(t) + phase);
    const auto rep = analyze(x, fb);
    return std::abs(rep.coeffs.at(rep.coeffs.rows / 2, 0));
  };

  double lo_a = 1e300, hi_a = 0.0, lo_r = 1e300, hi_r = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double phase = 2.0 * oracles::kPi * i / 16.0;
    const double ma = modulus_at_interior(analytic, phase);
    const double mr = modulus_at_interior(real_fb, phase);
    lo_a = std::min(lo_a, ma);
    hi_a = std::max(hi_a, ma);
    lo_r = std::min(lo_r, mr);
    hi_r = std::max(hi_r, mr);
  }
  const double var_a = (hi_a - lo_a) / hi_a;
  const double var_r = (hi_r - lo_r) / hi_r;
  std::printf("             modulus variation: analytic %.3f%%, real %.1f%%\n",
              100.0 * var_a, 100.0 * var_r);
  gate.expect(var_a < 0.02, "analytic modulus varied by 2% or more");
  gate.expect(var_r > 0.50, "real modulus varied by 50% or less");

  // equal-N roundtrip comparison with fitted gains on a seeded signal
  Rng rng(106);
  const Waveform test_sig = synth_harmonic_source(rng, 1.0, 8000);
  Rng calib_rng(107);
  std::vector<Waveform> calib = {synth_white_noise(calib_rng, 1.0, 8000)};
  double sdr[2];
  for (int is_analytic = 0; is_analytic < 2; ++is_analytic) {
    Filterbank fb = build_param_sinc(init_param_frequencies(128, 8000),
                                     is_analytic == 1, cfg_of(128, 64));
    set_synthesis_gains(fb, fit_synthesis_gains(fb, calib));
    const auto rep = analyze(test_sig, fb);
    sdr[is_analytic] = si_sdr(synthesize(rep, fb), test_sig);
  }
  std::printf("             fitted roundtrip: real %.2f dB, analytic %.2f dB\n",
              sdr[0], sdr[1]);
  gate.expect(sdr[1] > sdr[0], "analytic roundtrip not above the real one");
}

TEST_CASE("criterion 7: metric invariances") {
  Gate gate("7 SI-SDR scale invariance; PIT matches enumeration", 5.0);
  Rng rng(108);
  Waveform ref, est;
  ref.sample_rate = est.sample_rate = 8000;
  ref.samples.resize(1000);
  est.samples.resize(1000);
  for (auto& v : ref.samples) v = rng.uniform(-1.0, 1.0);
  for (auto& v : est.samples) v = rng.uniform(-1.0, 1.0);
  const double base = si_sdr(est, ref);
  bool scale_ok = true;
  for (int i = 0; i < 25; ++i) {
    double alpha = 0.0;
    while (alpha == 0.0) alpha = rng.uniform(-100.0, 100.0);
    Waveform scaled = est;
    for (auto& v : scaled.samples) v *= alpha;
    if (std::abs(si_sdr(scaled, ref) - base) >= 1e-9) scale_ok = false;
  }
  gate.expect(scale_ok, "scale invariance violated beyond 1e-9 dB");

  for (std::size_t c : {2u, 3u}) {
    std::vector<Waveform> refs, ests;
    for (std::size_t i = 0; i < c; ++i) {
      Waveform r, e;
      r.sample_rate = e.sample_rate = 8000;
      r.samples.resize(300);
      e.samples.resize(300);
      for (auto& v : r.samples) v = rng.uniform(-1.0, 1.0);
      for (auto& v : e.samples) v = rng.uniform(-1.0, 1.0);
      refs.push_back(r);
      ests.push_back(e);
    }
    Waveform mix;
    mix.sample_rate = 8000;
    mix.samples.resize(300);
    for (auto& v : mix.samples) v = rng.uniform(-1.0, 1.0);
    const ScoreReport rep = pit_score(ests, refs, mix);

    std::vector<std::size_t> idx(c);
    for (std::size_t i = 0; i < c; ++i) idx[i] = i;
    double best = -1e300;
    std::vector<std::size_t> best_perm;
    do {
      double sum = 0.0;
      for (std::size_t i = 0; i < c; ++i)
        sum += oracles::si_sdr_reference(ests[idx[i]].samples, refs[i].samples);
      if (sum > best) {
        best = sum;
        best_perm = idx;
      }
    } while (std::next_permutation(idx.begin(), idx.end()));
    gate.expect(rep.permutation == best_perm,
                "PIT permutation differs from brute force");
  }
}

TEST_CASE("criterion 8: filter gradients against finite differences") {
  Gate gate("8 analytic gradients <= 1e-5 vs central differences", 10.0);
  Rng rng(109);
  const std::size_t len = 101;
  const FilterbankConfig cfg = cfg_of(1, len);
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const double f1 = rng.uniform(0.05, 0.40);
    const double f2 = rng.uniform(f1 + 0.01, 0.45);
    const auto grads = param_filter_gradients(single(f1, f2), cfg, true);
    auto build = [&](double fw, double fc) {
      return build_param_sinc(single(fc - fw / 2.0, fc + fw / 2.0), true, cfg);
    };
    const double h = 1e-6;
    const double fw0 = f2 - f1, fc0 = 0.5 * (f1 + f2);
    for (int which = 0; which < 2; ++which) {
      const Filterbank plus =
          which == 0 ? build(fw0 + h, fc0) : build(fw0, fc0 + h);
      const Filterbank minus =
          which == 0 ? build(fw0 - h, fc0) : build(fw0, fc0 - h);
      const ComplexMatrix& g = which == 0 ? grads.d_fw : grads.d_fc;
      double num = 0.0, den = 0.0;
      for (std::size_t l = 0; l < len; ++l) {
        const double fdr = (plus.analysis.row_re(0)[l] -
                            minus.analysis.row_re(0)[l]) / (2.0 * h);
        const double fdi = (plus.analysis.row_im(0)[l] -
                            minus.analysis.row_im(0)[l]) / (2.0 * h);
        num += (g.row_re(0)[l] - fdr) * (g.row_re(0)[l] - fdr) +
               (g.row_im(0)[l] - fdi) * (g.row_im(0)[l] - fdi);
        den += fdr * fdr + fdi * fdi;
      }
      worst = std::max(worst, std::sqrt(num / den));
    }
  }
  std::printf("             max relative gradient error %.3e\n", worst);
  gate.expect(worst <= 1e-5, "gradient error above 1e-5");
}

TEST_CASE("criterion 9: gain calibration") {
  Gate gate("9 fitted gains: objective never worse; roundtrip up", 60.0);
  // small bank: objective comparison against unit gains
  {
    Filterbank fb = build_param_sinc(init_param_frequencies(24, 8000), true,
                                     cfg_of(24, 32));
    Rng rng(110);
    std::vector<Waveform> calib = {synth_white_noise(rng, 0.5, 8000),
                                   synth_white_noise(rng, 0.5, 8000)};
    const auto gains = fit_synthesis_gains(fb, calib);
    std::vector<double> unit(24, 1.0);
    gate.expect(reconstruction_objective(fb, calib, gains) <=
                    reconstruction_objective(fb, calib, unit) * (1.0 + 1e-12),
                "fit worsened the objective");
  }
  // the N=512, L=16 bank: strict held-out roundtrip improvement
  {
    Filterbank fb = build_param_sinc(init_param_frequencies(512, 8000), true,
                                     cfg_of(512, 16));
    Rng rng(111);
    std::vector<Waveform> calib = {synth_white_noise(rng, 1.0, 8000),
                                   synth_white_noise(rng, 1.0, 8000)};
    Rng held_rng(112);
    const Waveform held = synth_white_noise(held_rng, 1.0, 8000);
    const auto rep = analyze(held, fb);
    const double unfitted = si_sdr(synthesize(rep, fb), held);
    set_synthesis_gains(fb, fit_synthesis_gains(fb, calib));
    const double fitted = si_sdr(synthesize(rep, fb), held);
    std::printf("             N=512 L=16 roundtrip: unfitted %.2f dB, "
                "fitted %.2f dB\n",
                unfitted, fitted);
    gate.expect(fitted > unfitted, "no strict held-out improvement");
  }
}

TEST_CASE("criterion 10: end-to-end determinism through the CLI") {
  Gate gate("10 mix + oracle-eval byte-identical across runs", 120.0);
  const std::string cli = AFB_CLI_PATH;
  const fs::path base = fs::temp_directory_path() / "afb_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);

  auto run = [&](const std::string& tag) {
    const fs::path dir = base / tag;
    fs::create_directories(dir);
    const std::string mix_cmd =
        cli + " mix --synthetic --n 4 --seed 7 --duration 2.0 --out " +
        (dir / "mixes").string() + " >/dev/null";
    REQUIRE(std::system(mix_cmd.c_str()) == 0);
    const std::string eval_cmd =
        cli + " oracle-eval --manifest " + (dir / "mixes/manifest.json").string() +
        " --families stft,param-sinc-analytic --window-ms 2,10" +
        " --n-filters 128 --mask-kinds compl,mag --out " +
        (dir / "results.csv").string() + " --summary " +
        (dir / "summary.csv").string() + " >/dev/null";
    REQUIRE(std::system(eval_cmd.c_str()) == 0);
    return dir;
  };

  const fs::path d1 = run("run1");
  const fs::path d2 = run("run2");
  gate.expect(slurp((d1 / "results.csv").string()) ==
                  slurp((d2 / "results.csv").string()),
              "per-utterance CSVs differ between runs");
  gate.expect(slurp((d1 / "summary.csv").string()) ==
                  slurp((d2 / "summary.csv").string()),
              "summary CSVs differ between runs");
  gate.expect(slurp((d1 / "mixes/manifest.json").string()) ==
                  slurp((d2 / "mixes/manifest.json").string()),
              "manifests differ between runs");
  gate.expect(slurp((d1 / "mixes/utt_000_mix.wav").string()) ==
                  slurp((d2 / "mixes/utt_000_mix.wav").string()),
              "mixture wavs differ between runs");
  fs::remove_all(base);
}
