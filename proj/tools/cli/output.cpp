#include "output.hpp"

#include "admd/errors.hpp"
#include "admd/evaluation.hpp"
#include "admd/random.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace admd::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::optional<double> last_error(const std::vector<std::optional<double>>& errors) {
  if (errors.empty()) return std::nullopt;
  return errors.back();
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : "nan";
}

std::string spectrum_csv(const DmdModel& model) {
  const SpectrumReport s = spectrum_report(model);
  std::ostringstream os;
  os << "k,re_mu,im_mu,abs_mu,re_omega,im_omega,abs_b\n";
  for (std::size_t k = 0; k < s.discrete.size(); ++k) {
    os << k + 1 << ',' << format_double(s.discrete[k].re) << ','
       << format_double(s.discrete[k].im) << ',' << format_double(s.discrete[k].abs) << ','
       << format_double(s.continuous[k].re) << ',' << format_double(s.continuous[k].im) << ','
       << format_double(s.amplitudes[k]) << '\n';
  }
  return os.str();
}

std::string errors_csv(const std::vector<std::optional<double>>& errors, double dt) {
  std::ostringstream os;
  os << "t,rel_error\n";
  for (std::size_t j = 0; j < errors.size(); ++j) {
    os << format_double(static_cast<double>(j) * dt) << ',' << format_optional(errors[j]) << '\n';
  }
  return os.str();
}

std::string comparison_csv(const std::vector<MethodResult>& results) {
  std::ostringstream os;
  os << "name,measurements_used,rank,max_error,final_error\n";
  for (const MethodResult& r : results) {
    std::string name = r.label;
    if (name.find_first_of(",\"") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : name) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      name = quoted + "\"";
    }
    os << name << ',' << r.measurements_used << ',' << r.model.rank() << ','
       << format_optional(max_error(r.errors)) << ','
       << format_optional(last_error(r.errors)) << '\n';
  }
  return os.str();
}

std::string singular_values_csv(const std::vector<double>& sigma,
                                const std::vector<double>* low_rank) {
  std::ostringstream os;
  os << (low_rank ? "k,sigma,sigma_low_rank\n" : "k,sigma\n");
  for (std::size_t k = 0; k < sigma.size(); ++k) {
    os << k + 1 << ',' << format_double(sigma[k]);
    if (low_rank) os << ',' << format_double(k < low_rank->size() ? (*low_rank)[k] : 0.0);
    os << '\n';
  }
  return os.str();
}

std::string report_text(const MethodResult& r, std::uint64_t seed) {
  std::ostringstream os;
  os << "method = " << r.label << '\n';
  os << "family = " << r.family << '\n';
  if (r.admd) {
    const AdmdReport& a = *r.admd;
    os << "branch = " << to_string(a.branch) << '\n';
    os << "filter = " << to_string(a.filter) << '\n';
    os << "sketch = " << (a.sketch ? to_string(*a.sketch) : std::string("none")) << '\n';
    os << "q = " << a.q << '\n';
    os << "rank_before = " << a.rank_before << '\n';
  } else {
    os << "q = " << r.model.delay << '\n';
  }
  os << "rank = " << r.model.rank() << '\n';
  os << "measurements_used = " << r.measurements_used << '\n';
  os << "max_error = " << format_optional(max_error(r.errors)) << '\n';
  os << "final_error = " << format_optional(last_error(r.errors)) << '\n';
  if (r.admd && r.admd->rpca) {
    const RpcaResult& p = *r.admd->rpca;
    os << "rpca_iterations = " << p.iterations << '\n';
    os << "rpca_residual = " << format_double(p.residual) << '\n';
    os << "rpca_converged = " << (p.converged ? "true" : "false") << '\n';
  }
  os << "seed = " << seed << '\n';
  os << "rng_algorithm = " << Rng::kAlgorithm << '\n';
  os << "wall_time_seconds = " << format_double(r.wall_time_seconds) << '\n';
  if (r.admd) os << "[config]\n" << r.admd->config_echo;
  return os.str();
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace admd::cli
