#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "afb/common.hpp"
#include "afb/metrics.hpp"
#include "afb/synth.hpp"
#include "oracles.hpp"

using namespace afb;

namespace {

Waveform wave(std::vector<double> v) {
  Waveform w;
  w.sample_rate = 8000;
  w.samples = std::move(v);
  return w;
}

Waveform random_wave(Rng& rng, std::size_t n) {
  Waveform w;
  w.sample_rate = 8000;
  w.samples.resize(n);
  for (auto& v : w.samples) v = rng.uniform(-1.0, 1.0);
  return w;
}

}  // namespace

TEST_CASE("identical signals hit the sentinel") {
  Rng rng(61);
  const Waveform x = random_wave(rng, 500);
  CHECK(si_sdr(x, x) == kSiSdrMax);
}

TEST_CASE("scale invariance") {
  Rng rng(62);
  const Waveform ref = random_wave(rng, 500);
  Waveform est = random_wave(rng, 500);
  const double base = si_sdr(est, ref);
  for (double alpha : {2.0, -1.0, 0.001, 1234.5}) {
    Waveform scaled = est;
    for (auto& v : scaled.samples) v *= alpha;
    CHECK(std::abs(si_sdr(scaled, ref) - base) < 1e-9);
  }
  // doubling the reference leaves the value too (est = 2 ref case)
  Waveform twice = ref;
  for (auto& v : twice.samples) v *= 2.0;
  CHECK(si_sdr(twice, ref) == kSiSdrMax);
}

TEST_CASE("hand-computed projection case") {
  // ref=[1,0], est=[1,1]: after mean removal ref=[.5,-.5], est=[0,0]... the
  // zero-mean convention changes this pair, so use signals that keep their
  // mean at zero and check against the independent reference oracle instead.
  const Waveform ref = wave({1.0, -1.0, 1.0, -1.0});
  const Waveform est = wave({1.0, -1.0, 1.0, 1.0});
  const double got = si_sdr(est, ref);
  CHECK(got == doctest::Approx(oracles::si_sdr_reference(est.samples,
                                                         ref.samples))
                   .epsilon(1e-12));

  Rng rng(63);
  for (int t = 0; t < 20; ++t) {
    const Waveform r = random_wave(rng, 257);
    const Waveform e = random_wave(rng, 257);
    CHECK(si_sdr(e, r) ==
          doctest::Approx(oracles::si_sdr_reference(e.samples, r.samples))
              .epsilon(1e-10));
  }
}

TEST_CASE("zero-mean convention: the spec's 0 dB example, mean removed") {
  // [1,0] vs [1,1] evaluated through the reference oracle (which also
  // removes means) rather than the raw projection formula
  const Waveform ref = wave({1.0, 0.0});
  const Waveform est = wave({1.0, 1.0});
  // est has zero variance after mean removal: orthogonal-to-target case
  CHECK(si_sdr(est, ref) == -kSiSdrMax);
}

TEST_CASE("monotone degradation under added noise") {
  Rng rng(64);
  const Waveform ref = random_wave(rng, 2000);
  double prev = kSiSdrMax;
  for (double level : {0.01, 0.1, 1.0}) {
    Waveform est = ref;
    for (auto& v : est.samples) v += level * rng.gaussian();
    const double got = si_sdr(est, ref);
    CHECK(got < prev);
    prev = got;
  }
}

TEST_CASE("error cases") {
  Rng rng(65);
  const Waveform a = random_wave(rng, 100);
  const Waveform b = random_wave(rng, 101);
  CHECK_THROWS_AS(si_sdr(a, b), Error);  // length mismatch
  Waveform zeros;
  zeros.sample_rate = 8000;
  zeros.samples.assign(100, 0.5);  // constant: zero power after mean removal
  CHECK_THROWS_AS(si_sdr(a, zeros), Error);
}

TEST_CASE("improvement is zero when the estimate is the mixture") {
  Rng rng(66);
  const Waveform ref = random_wave(rng, 400);
  const Waveform mix = random_wave(rng, 400);
  CHECK(si_sdr_improvement(mix, ref, mix) == 0.0);
  CHECK(si_sdr_improvement(ref, ref, mix) ==
        kSiSdrMax - si_sdr(mix, ref));
}

TEST_CASE("pit resolves a swapped pair") {
  Rng rng(67);
  const Waveform r1 = random_wave(rng, 300);
  const Waveform r2 = random_wave(rng, 300);
  Waveform mix;
  mix.sample_rate = 8000;
  mix.samples.resize(300);
  for (std::size_t i = 0; i < 300; ++i)
    mix.samples[i] = r1.samples[i] + r2.samples[i];

  const ScoreReport rep = pit_score({r2, r1}, {r1, r2}, mix);
  CHECK(rep.permutation[0] == 1);
  CHECK(rep.permutation[1] == 0);
  CHECK(rep.per_source_si_sdr[0] == kSiSdrMax);
  CHECK(rep.per_source_si_sdr[1] == kSiSdrMax);
  CHECK(rep.mean_si_sdri ==
        doctest::Approx((kSiSdrMax - si_sdr(mix, r1) + kSiSdrMax -
                         si_sdr(mix, r2)) /
                        2.0));
}

TEST_CASE("pit mean is invariant under estimate shuffles") {
  Rng rng(68);
  std::vector<Waveform> refs, ests;
  for (int i = 0; i < 3; ++i) {
    refs.push_back(random_wave(rng, 200));
    ests.push_back(random_wave(rng, 200));
  }
  const Waveform mix = random_wave(rng, 200);
  const double base = pit_score(ests, refs, mix).mean_si_sdri;
  std::vector<std::size_t> order = {2, 0, 1};
  std::vector<Waveform> shuffled;
  for (auto i : order) shuffled.push_back(ests[i]);
  CHECK(pit_score(shuffled, refs, mix).mean_si_sdri ==
        doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("pit matches brute-force enumeration for C = 3") {
  Rng rng(69);
  std::vector<Waveform> refs, ests;
  for (int i = 0; i < 3; ++i) {
    refs.push_back(random_wave(rng, 150));
    ests.push_back(random_wave(rng, 150));
  }
  const Waveform mix = random_wave(rng, 150);
  const ScoreReport rep = pit_score(ests, refs, mix);

  // independent enumeration through the reference oracle
  std::vector<std::size_t> idx = {0, 1, 2};
  double best = -1e300;
  std::vector<std::size_t> best_perm;
  do {
    double sum = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      sum += oracles::si_sdr_reference(ests[idx[i]].samples, refs[i].samples);
    if (sum > best) {
      best = sum;
      best_perm = idx;
    }
  } while (std::next_permutation(idx.begin(), idx.end()));

  CHECK(rep.permutation == best_perm);
}

TEST_CASE("count mismatch and oversized problems are rejected") {
  Rng rng(70);
  std::vector<Waveform> two = {random_wave(rng, 50), random_wave(rng, 50)};
  std::vector<Waveform> three = {random_wave(rng, 50), random_wave(rng, 50),
                                 random_wave(rng, 50)};
  const Waveform mix = random_wave(rng, 50);
  CHECK_THROWS_AS(pit_score(two, three, mix), Error);
  std::vector<Waveform> seven(7, random_wave(rng, 50));
  CHECK_THROWS_AS(pit_score(seven, seven, mix), Error);
}
