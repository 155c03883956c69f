#include "admd/adaptive.hpp"

#include "admd/errors.hpp"
#include "admd/evaluation.hpp"
#include "admd/random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

namespace admd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

Index sketch_rows(const SketchChoice& sketch) {
  return std::visit(Overloaded{[](const NoSketch&) { return Index{0}; },
                               [](const GaussianSketch& s) { return s.a; },
                               [](const AchlioptasSketch& s) { return s.a; },
                               [](const RowSampleSketch& s) { return s.a; }},
                    sketch);
}

ProjectionOperator make_operator(const SketchChoice& sketch, Index m, std::uint64_t seed) {
  return std::visit(
      Overloaded{[&](const GaussianSketch& s) { return gaussian_sketch(m, s.a, seed); },
                 [&](const AchlioptasSketch& s) { return achlioptas_sketch(m, s.a, s.s, seed); },
                 [&](const RowSampleSketch& s) { return row_sample(m, s.a, seed); },
                 [](const NoSketch&) -> ProjectionOperator {
                   throw ParameterError("no sketch configured");
                 }},
      sketch);
}

double median_in_place(std::vector<double>& v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double hi = *mid;
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), mid);
  return 0.5 * (lo + hi);
}

}  // namespace

RankClass classify(const Eigen::Ref<const Matrix>& x, double eps_rank, double ratio_lowrank) {
  RankClass out;
  out.rank = numeric_rank(x, eps_rank);
  const Index smaller = std::min(x.rows(), x.cols());
  out.ratio = smaller > 0 ? static_cast<double>(out.rank) / static_cast<double>(smaller) : 0.0;
  out.value = out.ratio <= ratio_lowrank ? RankClassValue::LowRank : RankClassValue::FullRank;
  return out;
}

void AdmdConfig::validate() const {
  if (!(eps_rank >= 0.0)) throw ParameterError("eps_rank must be nonnegative");
  if (!(ratio_lowrank > 0.0 && ratio_lowrank <= 1.0)) {
    throw ParameterError("ratio_lowrank must lie in (0, 1]");
  }
  if (q < 1) throw ParameterError("delay q must be at least 1");
  if (!std::holds_alternative<NoSketch>(sketch) && sketch_rows(sketch) < 1) {
    throw ParameterError("sketch dimension must be at least 1");
  }
  if (const auto* a = std::get_if<AchlioptasSketch>(&sketch); a && a->s != 1 && a->s != 3) {
    throw ParameterError("Achlioptas sparsity s must be 1 or 3");
  }
  if (const auto* d = std::get_if<DftFilterPolicy>(&fullrank_filter)) d->validate();
  if (const auto* r = std::get_if<RpcaParams>(&fullrank_filter)) r->validate();
}

std::string AdmdConfig::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "eps_rank = " << eps_rank << '\n';
  os << "ratio_lowrank = " << ratio_lowrank << '\n';
  os << "q = " << q << '\n';
  std::visit(Overloaded{[&](const NoSketch&) { os << "sketch = none\n"; },
                        [&](const GaussianSketch& s) { os << "sketch = gaussian\na = " << s.a << '\n'; },
                        [&](const AchlioptasSketch& s) {
                          os << "sketch = achlioptas\na = " << s.a << "\ns = " << s.s << '\n';
                        },
                        [&](const RowSampleSketch& s) { os << "sketch = rowsample\na = " << s.a << '\n'; }},
             sketch);
  std::visit(Overloaded{[&](const AutoFilter&) { os << "filter = auto\n"; },
                        [&](const DftFilterPolicy& d) { os << "filter = dft\ntau = " << d.tau_rel << '\n'; },
                        [&](const RpcaParams& r) {
                          os << "filter = ialm\nlambda = " << r.lambda << "\nmu0 = " << r.mu0
                             << "\nrho_mu = " << r.rho << "\ntol = " << r.tol
                             << "\nmax_iter = " << r.max_iter << '\n';
                        }},
             fullrank_filter);
  os << "seed = " << seed << '\n';
  return os.str();
}

bool has_gross_outliers(const Eigen::Ref<const Matrix>& x, double z_cut, double max_fraction) {
  if (x.size() == 0) return false;
  // Consistency constant making MAD estimate a Gaussian standard deviation.
  constexpr double kMadScale = 1.4826;
  std::vector<double> column(static_cast<std::size_t>(x.rows()));
  std::vector<double> deviation(column.size());
  Index flagged = 0;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) column[static_cast<std::size_t>(i)] = x(i, j);
    const double med = median_in_place(column);
    for (Index i = 0; i < x.rows(); ++i) {
      deviation[static_cast<std::size_t>(i)] = std::abs(x(i, j) - med);
    }
    const double mad = median_in_place(deviation) * kMadScale;
    for (Index i = 0; i < x.rows(); ++i) {
      const double dev = std::abs(x(i, j) - med);
      if (mad == 0.0 ? dev > 0.0 : dev > z_cut * mad) ++flagged;
    }
  }
  return static_cast<double>(flagged) > max_fraction * static_cast<double>(x.size());
}

std::string to_string(Branch branch) {
  return branch == Branch::LowRank ? "low_rank" : "full_rank";
}

std::string to_string(FilterKind kind) {
  switch (kind) {
    case FilterKind::None:
      return "none";
    case FilterKind::Dft:
      return "dft";
    case FilterKind::Ialm:
      return "ialm";
  }
  return "unknown";
}

AdmdReport admd_fit(const SnapshotMatrix& x, const AdmdConfig& config) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();

  AdmdReport report;
  report.seed = config.seed;
  report.rng_algorithm = std::string(Rng::kAlgorithm);
  report.config_echo = config.describe();

  const RankClass rank_class = classify(x.data(), config.eps_rank, config.ratio_lowrank);
  report.rank_before = rank_class.rank;
  const RankRule rule = RankThreshold{config.eps_rank};

  if (rank_class.value == RankClassValue::LowRank) {
    report.branch = Branch::LowRank;
    report.q = config.q;
    const auto [x1, x2] = hankel_pair(x, DelayConfig{config.q});
    if (std::holds_alternative<NoSketch>(config.sketch)) {
      report.model = fit_dmd_pair(x1, x2, x.dt(), rule, x.rows());
      report.model.delay = config.q;
      report.measurements_used = x.rows();
    } else {
      const Index a = sketch_rows(config.sketch);
      if (a > x.rows()) {
        throw ParameterError("sketch dimension " + std::to_string(a) +
                             " exceeds the state dimension " + std::to_string(x.rows()));
      }
      const ProjectionOperator op = make_operator(config.sketch, x1.rows(), config.seed);
      report.sketch = op.kind();
      report.model = fit_sketched_dmd_pair(x1, x2, op, x.dt(), rule, x.rows(), config.q);
      report.measurements_used = a;
    }
  } else {
    report.branch = Branch::FullRank;
    report.q = 1;
    FilterChoice filter = config.fullrank_filter;
    if (std::holds_alternative<AutoFilter>(filter)) {
      filter = has_gross_outliers(x.data()) ? FilterChoice{RpcaParams{}}
                                            : FilterChoice{DftFilterPolicy{}};
    }
    Matrix processed;
    if (const auto* policy = std::get_if<DftFilterPolicy>(&filter)) {
      report.filter = FilterKind::Dft;
      processed = dft_filter(x.data(), *policy);
    } else {
      report.filter = FilterKind::Ialm;
      RpcaResult rpca = rpca_ialm(x.data(), std::get<RpcaParams>(filter));
      processed = std::move(rpca.low_rank);
      rpca.low_rank.resize(0, 0);
      rpca.sparse.resize(0, 0);
      report.rpca = std::move(rpca);
    }
    report.model = fit_dmd(SnapshotMatrix(std::move(processed), x.dt()), rule);
    report.measurements_used = x.rows();
  }

  report.rank_after = report.model.rank();
  report.error_series = error_series(report.model, x);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace admd
