#include "admd/delay_embedding.hpp"

#include "admd/errors.hpp"

#include <string>

namespace admd {

std::pair<Matrix, Matrix> hankel_pair(const SnapshotMatrix& x, DelayConfig config) {
  const Index m = x.rows();
  const Index n = x.cols();
  const Index q = config.q;
  if (q < 1) throw ParameterError("delay q must be at least 1");
  if (q > n - 1) {
    throw TooFewSnapshotsError("delay q = " + std::to_string(q) + " needs more than " +
                               std::to_string(q) + " snapshots, got " + std::to_string(n));
  }
  const Index cols = n - q;
  Matrix x1(q * m, cols);
  Matrix x2(q * m, cols);
  for (Index block = 0; block < q; ++block) {
    x1.middleRows(block * m, m) = x.data().middleCols(block, cols);
    x2.middleRows(block * m, m) = x.data().middleCols(block + 1, cols);
  }
  return {std::move(x1), std::move(x2)};
}

DmdModel fit_delay_dmd(const SnapshotMatrix& x, DelayConfig config, const RankRule& rule) {
  const auto [x1, x2] = hankel_pair(x, config);
  DmdModel model = fit_dmd_pair(x1, x2, x.dt(), rule, x.rows());
  model.delay = config.q;
  return model;
}

}  // namespace admd
