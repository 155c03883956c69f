#pragma once

#include "admd/dmd.hpp"

namespace admd {

/// Number of stacked time-shifted copies, q = 1 + p.
struct DelayConfig {
  Index q = 1;
};

/// Hankel-augmented snapshot pair.
///
/// Column j of the first matrix stacks x_j .. x_{j+q-1}; the second matrix is
/// the same construction one step later. Both have N - q columns.
std::pair<Matrix, Matrix> hankel_pair(const SnapshotMatrix& x, DelayConfig config);

/// Delay-coordinate DMD; reconstructions are truncated to the first M rows.
DmdModel fit_delay_dmd(const SnapshotMatrix& x, DelayConfig config,
                       const RankRule& rule = RankThreshold{});

}  // namespace admd
