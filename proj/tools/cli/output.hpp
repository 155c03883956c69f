#pragma once

#include "method_spec.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace admd::cli {

/// Shortest-safe decimal with 17 significant digits; "nan" / "inf" / "-inf"
/// for non-finite values.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

/// k, re_mu, im_mu, abs_mu, re_omega, im_omega, abs_b (k starts at 1).
std::string spectrum_csv(const DmdModel& model);
/// t, rel_error; undefined errors are written as nan.
std::string errors_csv(const std::vector<std::optional<double>>& errors, double dt);
/// name, measurements_used, rank, max_error, final_error.
std::string comparison_csv(const std::vector<MethodResult>& results);
/// k, sigma[, sigma_low_rank].
std::string singular_values_csv(const std::vector<double>& sigma,
                                const std::vector<double>* low_rank = nullptr);
/// `key = value` lines describing a fit; the config echo follows [config].
std::string report_text(const MethodResult& result, std::uint64_t seed);

/// `key = value` sidecar reader (comments with #, blank lines ignored).
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

}  // namespace admd::cli
