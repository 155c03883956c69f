#include "method_spec.hpp"

#include "admd/delay_embedding.hpp"
#include "admd/errors.hpp"
#include "admd/evaluation.hpp"

#include <charconv>
#include <chrono>
#include <map>
#include <set>
#include <string_view>
#include <system_error>

namespace admd::cli {
namespace {

using KeyValues = std::map<std::string, std::string>;

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return std::string(s.substr(first, last - first + 1));
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ParameterError("method key '" + key + "': cannot parse '" + value + "'");
  }
  return out;
}

class Keys {
 public:
  explicit Keys(KeyValues kv) : kv_(std::move(kv)) {}

  std::optional<std::string> take(const std::string& key) {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return std::nullopt;
    std::string value = it->second;
    kv_.erase(it);
    return value;
  }

  template <class T>
  std::optional<T> take_number(const std::string& key) {
    const auto value = take(key);
    if (!value) return std::nullopt;
    return parse_number<T>(key, *value);
  }

  void reject_rest(const std::string& name) const {
    if (!kv_.empty()) {
      throw ParameterError("method '" + name + "' does not accept key '" + kv_.begin()->first +
                           "'");
    }
  }

 private:
  KeyValues kv_;
};

RankRule take_rank_rule(Keys& keys) {
  const auto eps = keys.take_number<double>("eps");
  const auto rank = keys.take_number<Index>("rank");
  if (eps && rank) throw ParameterError("eps and rank are mutually exclusive");
  if (rank) {
    if (*rank < 1) throw ParameterError("rank must be at least 1");
    return FixedRank{*rank};
  }
  const double e = eps.value_or(kDefaultRankTolerance);
  if (!(e > 0.0 && e < 1.0)) throw ParameterError("eps must lie in (0, 1)");
  return RankThreshold{e};
}

AdaptiveMethod parse_adaptive(const std::string& name, Keys& keys, std::uint64_t seed) {
  std::string sketch = "none";
  std::string filter = "auto";
  if (name == "admd-dft") filter = "dft";
  if (name == "admd-ialm") filter = "ialm";
  if (name == "admd-gaussian") sketch = "gaussian";
  if (name == "admd-achlioptas") sketch = "achlioptas";
  if (name == "admd-rowsample") sketch = "rowsample";
  sketch = keys.take("sketch").value_or(sketch);
  filter = keys.take("filter").value_or(filter);

  AdmdConfig config;
  config.seed = seed;
  config.eps_rank = keys.take_number<double>("eps").value_or(config.eps_rank);
  config.ratio_lowrank = keys.take_number<double>("ratio").value_or(config.ratio_lowrank);
  config.q = keys.take_number<Index>("q").value_or(config.q);

  const auto a = keys.take_number<Index>("a");
  const auto s = keys.take_number<int>("s");
  if (sketch == "none") {
    if (a || s) throw ParameterError("keys a and s need a sketch");
    config.sketch = NoSketch{};
  } else {
    if (!a) throw ParameterError("sketch '" + sketch + "' needs a=<measurements>");
    if (s && sketch != "achlioptas") throw ParameterError("key s applies to achlioptas only");
    if (sketch == "gaussian") {
      config.sketch = GaussianSketch{*a};
    } else if (sketch == "achlioptas") {
      config.sketch = AchlioptasSketch{*a, s.value_or(3)};
    } else if (sketch == "rowsample") {
      config.sketch = RowSampleSketch{*a};
    } else {
      throw ParameterError("unknown sketch '" + sketch + "'");
    }
  }

  const auto tau = keys.take_number<double>("tau");
  RpcaParams rpca;
  bool rpca_keys = false;
  auto rpca_key = [&](const char* key, auto& field) {
    using T = std::remove_reference_t<decltype(field)>;
    if (const auto v = keys.take_number<T>(key)) {
      field = *v;
      rpca_keys = true;
    }
  };
  rpca_key("lambda", rpca.lambda);
  rpca_key("mu0", rpca.mu0);
  rpca_key("rho", rpca.rho);
  rpca_key("tol", rpca.tol);
  rpca_key("max_iter", rpca.max_iter);

  if (tau && filter != "dft") throw ParameterError("key tau applies to filter=dft only");
  if (rpca_keys && filter != "ialm") {
    throw ParameterError("IALM keys (lambda, mu0, rho, tol, max_iter) need filter=ialm");
  }
  if (filter == "auto") {
    config.fullrank_filter = AutoFilter{};
  } else if (filter == "dft") {
    DftFilterPolicy policy;
    if (tau) policy.tau_rel = *tau;
    config.fullrank_filter = policy;
  } else if (filter == "ialm") {
    config.fullrank_filter = rpca;
  } else {
    throw ParameterError("unknown filter '" + filter + "'");
  }
  config.validate();
  return AdaptiveMethod{config};
}

}  // namespace

MethodSpec parse_method_spec(const std::string& text, std::uint64_t seed) {
  const auto colon = text.find(':');
  const std::string name = trim(std::string_view(text).substr(0, colon));
  KeyValues kv;
  if (colon != std::string::npos) {
    std::string_view rest = std::string_view(text).substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw ParameterError("method option '" + std::string(item) + "' is not key=value");
      }
      const std::string key = trim(item.substr(0, eq));
      if (key.empty() || !kv.emplace(key, trim(item.substr(eq + 1))).second) {
        throw ParameterError("method option '" + key + "' is empty or repeated");
      }
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
  }

  Keys keys(std::move(kv));
  MethodSpec spec;
  spec.label = text;
  if (name == "standard") {
    spec.method = StandardMethod{take_rank_rule(keys)};
  } else if (name == "delay") {
    DelayMethod d;
    d.q = keys.take_number<Index>("q").value_or(d.q);
    if (d.q < 1) throw ParameterError("q must be at least 1");
    d.rule = take_rank_rule(keys);
    spec.method = d;
  } else if (name == "admd" || name == "admd-dft" || name == "admd-ialm" ||
             name == "admd-gaussian" || name == "admd-achlioptas" || name == "admd-rowsample") {
    spec.method = parse_adaptive(name, keys, seed);
  } else {
    throw ParameterError("unknown method '" + name + "'");
  }
  keys.reject_rest(name);
  return spec;
}

bool MethodResult::converged() const {
  return !(admd && admd->rpca && !admd->rpca->converged);
}

MethodResult run_method(const SnapshotMatrix& x, const MethodSpec& spec) {
  const auto start = std::chrono::steady_clock::now();
  MethodResult result;
  result.label = spec.label;
  std::visit(
      [&](const auto& m) {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, StandardMethod>) {
          result.family = "standard";
          result.measurements_used = x.rows();
          result.model = fit_dmd(x, m.rule);
          result.errors = error_series(result.model, x);
        } else if constexpr (std::is_same_v<T, DelayMethod>) {
          result.family = "delay";
          result.measurements_used = x.rows();
          result.model = fit_delay_dmd(x, DelayConfig{m.q}, m.rule);
          result.errors = error_series(result.model, x);
        } else {
          result.family = "admd";
          AdmdReport report = admd_fit(x, m.config);
          result.measurements_used = report.measurements_used;
          result.model = std::move(report.model);
          result.errors = std::move(report.error_series);
          report.model = DmdModel{};
          report.error_series.clear();
          result.admd = std::move(report);
        }
      },
      spec.method);
  result.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace admd::cli
