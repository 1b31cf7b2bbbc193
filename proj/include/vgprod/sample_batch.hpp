#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vgprod {

/// Draws from one seeded generator together with where they came from.
/// Holds at least one value and every value is finite.
struct SampleBatch {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
  std::string generator;

  std::size_t size() const { return values.size(); }
};

/// Validates a finished batch; throws SizeError when empty and DomainError
/// when a value is not finite.
SampleBatch make_sample_batch(std::vector<double> values, std::uint64_t seed,
                              std::uint64_t stream_id, std::string generator);

/// Rejects n = 0 and counts a std::vector<double> cannot hold.
void check_batch_size(std::size_t n, const char* what);

}  // namespace vgprod
