#include "covkit/sample_set.hpp"

#include <fmt/format.h>

namespace covkit {

SampleSet::SampleSet(Eigen::MatrixXd data) : data_(std::move(data)) {
  if (data_.rows() < 1) throw InvalidInput("sample set needs dimension >= 1");
  if (data_.cols() < 2)
    throw InvalidInput(
        fmt::format("sample set needs n >= 2 observations, got {}", data_.cols()));
  if (!data_.allFinite())
    throw InvalidInput("sample set has non-finite values");
}

}  // namespace covkit
