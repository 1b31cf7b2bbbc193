#include "vgprod/sample_batch.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "vgprod/errors.hpp"

namespace vgprod {

void check_batch_size(std::size_t n, const char* what) {
  if (n == 0) {
    throw SizeError(std::string(what) + ": sample count must be at least 1");
  }
  if (n > std::vector<double>().max_size()) {
    throw SizeError(std::string(what) + ": sample count exceeds addressable batch size");
  }
}

SampleBatch make_sample_batch(std::vector<double> values, std::uint64_t seed,
                              std::uint64_t stream_id, std::string generator) {
  if (values.empty()) {
    throw SizeError("sample batch: empty");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DomainError("sample batch: non-finite value at index " + std::to_string(i));
    }
  }
  return SampleBatch{std::move(values), seed, stream_id, std::move(generator)};
}

}  // namespace vgprod
