#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace vgprod {

/// Seeded random stream. The pair (seed, stream_id) fully determines the draw
/// sequence, bit for bit, on every platform: the engine is mt19937_64 seeded
/// through std::seed_seq, and all variates are produced by the code below
/// rather than by the implementation-defined <random> distributions.
///
/// A stream is single-owner mutable state. Parallel work uses distinct
/// stream ids.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  /// Standard normal by the Marsaglia polar method; the second variate of each
  /// accepted pair is cached in the stream.
  double normal();

  /// Gamma(shape, scale 1). Marsaglia-Tsang squeeze for shape >= 1; smaller
  /// shapes draw Gamma(shape + 1) and multiply by U^{1/shape}.
  double gamma(double shape);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace vgprod
