#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace sunfluct {

// Seedable generator with a fully specified cross-platform stream:
// std::mt19937_64 (bit-exact by the standard) feeding
//   uniform01 = ((x >> 11) + 1) * 2^-53, in (0, 1]
//   normal    = Box-Muller on two uniforms, cosine branch first.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
  }

  double normal();

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct Sinusoid {
  double period = 10.0;
  double amplitude = 1.0;
  double phase = 0.0;  // radians
};

struct WhiteNoise {
  double sigma = 1.0;
};

struct Ar1 {
  double phi = 0.5;
  double sigma = 1.0;  // innovation standard deviation
};

// Sparse pulses with lognormal amplitudes; each sample carries a pulse with
// probability 1/mean_spacing.
struct PulseTrain {
  double mean_spacing = 10.0;
  double log_mu = 0.0;
  double log_sigma = 1.0;
};

using SynthComponent = std::variant<Sinusoid, WhiteNoise, Ar1, PulseTrain>;

struct SynthSpec {
  std::size_t n = 0;
  std::vector<SynthComponent> components;
  std::uint64_t seed = 0;

  void validate() const;
};

// Deterministic for a fixed spec: every component draws from its own
// subsidiary stream, so component order and count do not perturb each other.
std::vector<double> generate(const SynthSpec& spec);

// Key-value spec file:
//   n = 280
//   seed = 42
//   component = sinusoid period=10 amplitude=1 phase=0
//   component = white_noise sigma=0.5
//   component = ar1 phi=0.5 sigma=1
//   component = pulse_train mean_spacing=10 log_mu=0 log_sigma=1
SynthSpec parse_synth_spec(const std::string& text);
SynthSpec load_synth_spec(const std::string& path);

}  // namespace sunfluct
