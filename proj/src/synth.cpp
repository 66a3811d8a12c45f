#include "sunfluct/synth.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sunfluct/csvio.hpp"
#include "sunfluct/error.hpp"

namespace sunfluct {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform01();
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * M_PI * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void SynthSpec::validate() const {
  if (n < 1) throw error(errc::invalid_spec, "synth spec: n must be >= 1");
  for (const auto& c : components) {
    if (const auto* s = std::get_if<Sinusoid>(&c)) {
      if (s->period <= 0.0) throw error(errc::invalid_spec, "sinusoid period must be > 0");
    } else if (const auto* w = std::get_if<WhiteNoise>(&c)) {
      if (w->sigma < 0.0) throw error(errc::invalid_spec, "white_noise sigma must be >= 0");
    } else if (const auto* a = std::get_if<Ar1>(&c)) {
      if (!(std::fabs(a->phi) < 1.0))
        throw error(errc::invalid_spec, "ar1 needs |phi| < 1");
      if (a->sigma < 0.0) throw error(errc::invalid_spec, "ar1 sigma must be >= 0");
    } else if (const auto* p = std::get_if<PulseTrain>(&c)) {
      if (p->mean_spacing < 1.0)
        throw error(errc::invalid_spec, "pulse_train mean_spacing must be >= 1");
      if (p->log_sigma < 0.0)
        throw error(errc::invalid_spec, "pulse_train log_sigma must be >= 0");
    }
  }
}

namespace {

constexpr std::uint64_t kStreamSalt = 0x9e3779b97f4a7c15ull;

void add_component(std::vector<double>& out, const SynthComponent& comp, Rng& rng) {
  const std::size_t n = out.size();
  if (const auto* s = std::get_if<Sinusoid>(&comp)) {
    for (std::size_t i = 0; i < n; ++i)
      out[i] += s->amplitude *
                std::sin(2.0 * M_PI * static_cast<double>(i) / s->period + s->phase);
  } else if (const auto* w = std::get_if<WhiteNoise>(&comp)) {
    for (std::size_t i = 0; i < n; ++i) out[i] += w->sigma * rng.normal();
  } else if (const auto* a = std::get_if<Ar1>(&comp)) {
    // start from the stationary distribution so sample moments match the
    // analytic ACF from index 0
    double x = a->sigma / std::sqrt(1.0 - a->phi * a->phi) * rng.normal();
    for (std::size_t i = 0; i < n; ++i) {
      out[i] += x;
      x = a->phi * x + a->sigma * rng.normal();
    }
  } else if (const auto* p = std::get_if<PulseTrain>(&comp)) {
    const double rate = 1.0 / p->mean_spacing;
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.uniform01() <= rate)
        out[i] += std::exp(p->log_mu + p->log_sigma * rng.normal());
    }
  }
}

}  // namespace

std::vector<double> generate(const SynthSpec& spec) {
  spec.validate();
  std::vector<double> out(spec.n, 0.0);
  for (std::size_t k = 0; k < spec.components.size(); ++k) {
    Rng rng(spec.seed ^ (kStreamSalt * (k + 1)));
    add_component(out, spec.components[k], rng);
  }
  return out;
}

namespace {

double kv_get(const std::vector<std::string>& toks, const std::string& key,
              double fallback, bool required = false) {
  for (std::size_t i = 1; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos) continue;
    if (toks[i].substr(0, eq) == key) {
      try {
        return std::stod(toks[i].substr(eq + 1));
      } catch (const std::exception&) {
        throw error(errc::invalid_spec, "bad numeric value for '" + key + "'");
      }
    }
  }
  if (required) throw error(errc::invalid_spec, "missing key '" + key + "'");
  return fallback;
}

SynthComponent parse_component(const std::string& text) {
  const auto toks = split_ws(text);
  if (toks.empty()) throw error(errc::invalid_spec, "empty component");
  const std::string& kind = toks[0];
  if (kind == "sinusoid") {
    return Sinusoid{kv_get(toks, "period", 10.0, true), kv_get(toks, "amplitude", 1.0),
                    kv_get(toks, "phase", 0.0)};
  }
  if (kind == "white_noise") {
    return WhiteNoise{kv_get(toks, "sigma", 1.0, true)};
  }
  if (kind == "ar1") {
    return Ar1{kv_get(toks, "phi", 0.5, true), kv_get(toks, "sigma", 1.0)};
  }
  if (kind == "pulse_train") {
    return PulseTrain{kv_get(toks, "mean_spacing", 10.0, true),
                      kv_get(toks, "log_mu", 0.0), kv_get(toks, "log_sigma", 1.0)};
  }
  throw error(errc::invalid_spec, "unknown component kind: '" + kind + "'");
}

}  // namespace

SynthSpec parse_synth_spec(const std::string& text) {
  SynthSpec spec;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (!split_ws(line).empty())
        throw error(errc::invalid_spec, "bad spec line: '" + line + "'");
      continue;
    }
    auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t");
      const auto e = s.find_last_not_of(" \t");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = strip(line.substr(0, eq));
    const std::string value = strip(line.substr(eq + 1));
    if (key == "n" || key == "seed") {
      std::uint64_t v = 0;
      try {
        v = std::stoull(value);
      } catch (const std::exception&) {
        throw error(errc::invalid_spec, "bad integer for '" + key + "': '" + value + "'");
      }
      if (key == "n")
        spec.n = static_cast<std::size_t>(v);
      else
        spec.seed = v;
    } else if (key == "component") {
      spec.components.push_back(parse_component(value));
    } else {
      throw error(errc::invalid_spec, "unknown spec key: '" + key + "'");
    }
  }
  spec.validate();
  return spec;
}

SynthSpec load_synth_spec(const std::string& path) {
  return parse_synth_spec(read_file(path));
}

}  // namespace sunfluct
