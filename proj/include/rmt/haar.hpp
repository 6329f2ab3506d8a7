#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rmt/types.hpp"

namespace rmt::haar {

enum class EnsembleKind { SpecialOrthogonalEven, UnitarySymplectic };

enum class SampleMethod { MatrixQR, JpdfMcmc };

struct SamplerConfig {
  std::uint64_t seed = 1;
  SampleMethod method = SampleMethod::MatrixQR;
  int mcmc_burn_in = 10000;
  int mcmc_thin = 10;
};

// N eigenangles in (0, pi], sorted ascending; the conjugate partners -theta
// are implicit.
struct SpectrumSample {
  int n = 0;
  std::vector<double> angles;
};

// MCMC samples are organised in chains of this many consecutive indices so
// that (seed, index) determines the sample for any worker layout.
inline constexpr std::uint64_t kMcmcChainLen = 1024;

SpectrumSample sample_so2n(int n, const SamplerConfig& cfg, std::uint64_t index);
SpectrumSample sample_usp2n(int n, const SamplerConfig& cfg, std::uint64_t index);

// Unnormalized joint eigenangle densities.
double jpdf_density_so(std::span<const double> angles);
double log_jpdf_so(std::span<const double> angles);
double log_jpdf_usp(std::span<const double> angles);

// Sequential access to samples with consecutive indices.  For MatrixQR every
// sample is independent; for JpdfMcmc the stream advances a Metropolis chain
// whose identity is fixed by index / kMcmcChainLen.
class SampleStream {
 public:
  virtual ~SampleStream() = default;
  virtual SpectrumSample next() = 0;
};

std::unique_ptr<SampleStream> make_stream(EnsembleKind ensemble, int n,
                                          const SamplerConfig& cfg,
                                          std::uint64_t start_index);

}  // namespace rmt::haar
