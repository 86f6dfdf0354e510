// Copyright 2026 The hetcache Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetcache/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include <fmt/core.h>

#include "hetcache/allocation.hpp"
#include "hetcache/bounds.hpp"
#include "hetcache/errors.hpp"
#include "hetcache/pair_optimal.hpp"
#include "json.hpp"

namespace hetcache {

namespace {

constexpr std::pair<Scheme, std::string_view> kSchemeLabels[] = {
    {Scheme::PairOptimal, "pair-optimal"}, {Scheme::Pca, "pca"},         {Scheme::Oca, "oca"},
    {Scheme::Envelope, "envelope"},        {Scheme::Uncoded, "uncoded"}, {Scheme::Cutset, "cutset"},
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  if (trim(s).empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? s.npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ValidationError(fmt::format("key '{}': cannot parse '{}' as a number", key, text));
  }
  return value;
}

std::vector<double> parse_list(std::string_view text, std::string_view key) {
  std::vector<double> out;
  for (auto item : split(text, ',')) out.push_back(parse_number<double>(item, key));
  return out;
}

// "a:h:b" expands to a, a+h, ..., up to b; anything else is a comma list.
std::vector<double> parse_sweep(std::string_view text) {
  const auto range = split(text, ':');
  if (range.size() != 3) return parse_list(text, "sweep");
  const double a = parse_number<double>(range[0], "sweep");
  const double h = parse_number<double>(range[1], "sweep");
  const double b = parse_number<double>(range[2], "sweep");
  if (!(h > 0.0) || b < a) throw ValidationError(fmt::format("sweep range '{}' needs step > 0 and stop >= start", text));
  std::vector<double> out;
  for (long j = 0;; ++j) {
    const double v = a + static_cast<double>(j) * h;
    if (v > b + 1e-9 * std::max(1.0, std::abs(b))) break;
    out.push_back(v);
  }
  return out;
}

std::string join(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{:.17g}", xs[i]);
  }
  return out;
}

const RateCurve* find_curve(const std::vector<RateCurve>& curves, Scheme s) {
  const std::string label = scheme_label(s);
  for (const RateCurve& c : curves) {
    if (c.scheme == label) return &c;
  }
  return nullptr;
}

double round9(double v) { return std::strtod(format_number(v).c_str(), nullptr); }

}  // namespace

std::string scheme_label(Scheme s) {
  for (const auto& [scheme, label] : kSchemeLabels) {
    if (scheme == s) return std::string(label);
  }
  return "?";
}

Scheme parse_scheme(std::string_view label) {
  for (const auto& [scheme, name] : kSchemeLabels) {
    if (name == label) return scheme;
  }
  throw ValidationError(fmt::format(
      "unknown scheme '{}' (expected pair-optimal, pca, oca, envelope, uncoded or cutset)", label));
}

std::string cache_model_label(CacheModel m) {
  switch (m) {
    case CacheModel::Identical: return "identical";
    case CacheModel::Scaled: return "scaled";
    case CacheModel::Explicit: return "explicit";
  }
  return "?";
}

void ScenarioConfig::validate() const {
  if (num_files < 1 || num_users < 1) {
    throw ValidationError(fmt::format("num_files and num_users must be >= 1 (got {}, {})", num_files, num_users));
  }
  if (rates.empty() == distortions.empty()) {
    throw ValidationError("give exactly one of 'rates' or 'distortions'");
  }
  const std::size_t K = static_cast<std::size_t>(num_users);
  if (!rates.empty() && rates.size() != K) {
    throw ValidationError(fmt::format("'rates' has {} entries, num_users is {}", rates.size(), K));
  }
  if (!distortions.empty() && distortions.size() != K) {
    throw ValidationError(fmt::format("'distortions' has {} entries, num_users is {}", distortions.size(), K));
  }
  if (!(variance > 0.0)) throw ValidationError("variance must be > 0");
  if (cache_model == CacheModel::Scaled && !(cache_scale >= 0.0)) {
    throw ValidationError("cache_scale must be >= 0");
  }
  if (cache_model == CacheModel::Explicit) {
    if (cache_weights.size() != K) {
      throw ValidationError(fmt::format("'cache_weights' has {} entries, num_users is {}", cache_weights.size(), K));
    }
    for (double w : cache_weights) {
      if (!(w >= 0.0) || !std::isfinite(w)) throw ValidationError("cache weights must be finite and >= 0");
    }
  }
  for (double m : sweep) {
    if (!(m >= 0.0) || !std::isfinite(m)) throw ValidationError(fmt::format("sweep value {} must be >= 0", m));
  }
  if (schemes.empty()) throw ValidationError("scheme list is empty");
  if (std::find(schemes.begin(), schemes.end(), Scheme::PairOptimal) != schemes.end() &&
      (num_files != 2 || num_users != 2)) {
    throw ValidationError(fmt::format("pair-optimal needs num_files = num_users = 2, got N={} K={}",
                                      num_files, num_users));
  }
  if (block_len < 1) throw ValidationError("block_len must be >= 1");
  (void)rate_profile();  // surfaces ordering errors
}

RateProfile ScenarioConfig::rate_profile() const {
  if (!rates.empty()) return rate_profile_from_rates(rates, variance);
  return build_rate_profile(SystemConfig{num_files, num_users, variance, block_len}, distortions);
}

CacheProfile ScenarioConfig::caches_at(double m) const {
  CacheProfile c;
  for (int k = 1; k <= num_users; ++k) {
    switch (cache_model) {
      case CacheModel::Identical: c.capacities.push_back(m); break;
      case CacheModel::Scaled: c.capacities.push_back(cache_scale * k * m); break;
      case CacheModel::Explicit: c.capacities.push_back(cache_weights[static_cast<std::size_t>(k - 1)] * m); break;
    }
  }
  return c;
}

ScenarioConfig parse_scenario(std::string_view text) {
  ScenarioConfig cfg;
  std::set<std::string, std::less<>> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto eol = text.find('\n', start);
    const std::string_view raw = text.substr(start, eol == std::string_view::npos ? text.npos : eol - start);
    start = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line));
    }
    const std::string_view key = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (!seen.insert(std::string(key)).second) {
      throw ValidationError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    }
    try {
      if (key == "name") {
        cfg.name = std::string(value);
      } else if (key == "num_files") {
        cfg.num_files = parse_number<int>(value, key);
      } else if (key == "num_users") {
        cfg.num_users = parse_number<int>(value, key);
      } else if (key == "rates") {
        cfg.rates = parse_list(value, key);
      } else if (key == "distortions") {
        cfg.distortions = parse_list(value, key);
      } else if (key == "variance") {
        cfg.variance = parse_number<double>(value, key);
      } else if (key == "cache_model") {
        if (value == "identical") cfg.cache_model = CacheModel::Identical;
        else if (value == "scaled") cfg.cache_model = CacheModel::Scaled;
        else if (value == "explicit") cfg.cache_model = CacheModel::Explicit;
        else throw ValidationError(fmt::format("unknown cache_model '{}'", value));
      } else if (key == "cache_scale") {
        cfg.cache_scale = parse_number<double>(value, key);
      } else if (key == "cache_weights") {
        cfg.cache_weights = parse_list(value, key);
      } else if (key == "sweep") {
        cfg.sweep = parse_sweep(value);
      } else if (key == "schemes") {
        cfg.schemes.clear();
        for (auto item : split(value, ',')) cfg.schemes.push_back(parse_scheme(item));
      } else if (key == "block_len") {
        cfg.block_len = parse_number<std::int64_t>(value, key);
      } else if (key == "seed") {
        cfg.seed = parse_number<std::uint64_t>(value, key);
      } else {
        throw ValidationError(fmt::format("unknown key '{}'", key));
      }
    } catch (const ValidationError& e) {
      throw ValidationError(fmt::format("line {}: {}", line_no, e.what()));
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(fmt::format("cannot open config '{}'", path.string()));
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str());
  } catch (const ValidationError& e) {
    throw ValidationError(fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::string serialize_scenario(const ScenarioConfig& c) {
  std::string out;
  out += fmt::format("name = {}\n", c.name);
  out += fmt::format("num_files = {}\n", c.num_files);
  out += fmt::format("num_users = {}\n", c.num_users);
  out += fmt::format("rates = {}\n", join(c.rates));
  out += fmt::format("distortions = {}\n", join(c.distortions));
  out += fmt::format("variance = {:.17g}\n", c.variance);
  out += fmt::format("cache_model = {}\n", cache_model_label(c.cache_model));
  out += fmt::format("cache_scale = {:.17g}\n", c.cache_scale);
  out += fmt::format("cache_weights = {}\n", join(c.cache_weights));
  out += fmt::format("sweep = {}\n", join(c.sweep));
  std::string schemes;
  for (std::size_t i = 0; i < c.schemes.size(); ++i) schemes += (i ? ", " : "") + scheme_label(c.schemes[i]);
  out += fmt::format("schemes = {}\n", schemes);
  out += fmt::format("block_len = {}\n", c.block_len);
  out += fmt::format("seed = {}\n", c.seed);
  return out;
}

ScenarioConfig fig2_scenario() {
  ScenarioConfig c;
  c.name = "fig2-identical";
  c.num_files = 10;
  c.num_users = 10;
  for (int k = 1; k <= 10; ++k) c.rates.push_back(k);
  c.cache_model = CacheModel::Identical;
  for (int m = 0; m <= 100; ++m) c.sweep.push_back(m);
  c.schemes = {Scheme::Pca, Scheme::Oca, Scheme::Envelope, Scheme::Uncoded, Scheme::Cutset};
  return c;
}

ScenarioConfig fig3_scenario() {
  ScenarioConfig c = fig2_scenario();
  c.name = "fig3-scaled";
  c.cache_model = CacheModel::Scaled;
  c.cache_scale = 0.2;
  return c;
}

std::vector<RateCurve> run_scenario(const ScenarioConfig& config) {
  config.validate();
  const RateProfile rates = config.rate_profile();
  std::vector<double> axis = config.sweep;
  std::sort(axis.begin(), axis.end());
  const int N = config.num_files;

  auto wants = [&](Scheme s) {
    return std::find(config.schemes.begin(), config.schemes.end(), s) != config.schemes.end();
  };
  const bool need_pca = wants(Scheme::Pca) || wants(Scheme::Envelope);
  const bool need_oca = wants(Scheme::Oca) || wants(Scheme::Envelope);

  std::map<Scheme, RateCurve> curves;
  for (Scheme s : {Scheme::PairOptimal, Scheme::Pca, Scheme::Oca, Scheme::Uncoded, Scheme::Cutset}) {
    curves[s].scheme = scheme_label(s);
  }
  for (double m : axis) {
    const CacheProfile cache = config.caches_at(m);
    if (wants(Scheme::PairOptimal)) {
      const PairParams p{cache.capacities[0], cache.capacities[1], rates.rates[0], rates.rates[1]};
      const double rate = optimal_rate(p);
      // The closed form is only reported once the bit-level scheme meets it.
      const SystemConfig sys{2, 2, config.variance, config.block_len};
      const double n = static_cast<double>(config.block_len);
      for (const auto& d : {std::vector<int>{1, 2}, {2, 1}, {1, 1}, {2, 2}}) {
        const PairSimResult sim = simulate_pair(sys, p, DemandVector{d}, config.seed);
        if (!sim.decode_ok || static_cast<double>(sim.achieved_rate_bits) / n > rate + 8.0 / n + 1e-12) {
          throw InvariantError(fmt::format("pair scheme failed at M={} demand ({},{}): decode_ok={} bits={}",
                                           m, d[0], d[1], sim.decode_ok, sim.achieved_rate_bits));
        }
      }
      curves[Scheme::PairOptimal].points.push_back({m, rate});
    }
    if (need_pca) curves[Scheme::Pca].points.push_back({m, total_delivery_rate(pca(cache, rates), rates, N)});
    if (need_oca) curves[Scheme::Oca].points.push_back({m, total_delivery_rate(oca(cache, rates, N), rates, N)});
    if (wants(Scheme::Uncoded)) curves[Scheme::Uncoded].points.push_back({m, uncoded_rate(cache, rates, N)});
    if (wants(Scheme::Cutset)) curves[Scheme::Cutset].points.push_back({m, cutset_bound(cache, rates, N).value});
  }
  if (wants(Scheme::Envelope)) {
    const std::vector<RateCurve> both{curves[Scheme::Pca], curves[Scheme::Oca]};
    curves[Scheme::Envelope] = memory_sharing_envelope(both);
  }

  std::vector<RateCurve> out;
  std::set<Scheme> emitted;
  for (Scheme s : config.schemes) {
    if (emitted.insert(s).second) out.push_back(curves[s]);
  }
  return out;
}

std::vector<std::string> dominance_violations(const std::vector<RateCurve>& curves, double tol) {
  std::vector<std::string> out;
  const RateCurve* cut = find_curve(curves, Scheme::Cutset);
  const RateCurve* env = find_curve(curves, Scheme::Envelope);
  const RateCurve* pc = find_curve(curves, Scheme::Pca);
  const RateCurve* oc = find_curve(curves, Scheme::Oca);
  const RateCurve* unc = find_curve(curves, Scheme::Uncoded);

  auto check = [&](const RateCurve* lo, const RateCurve* hi) {
    if (!lo || !hi) return;
    for (std::size_t j = 0; j < std::min(lo->points.size(), hi->points.size()); ++j) {
      const double a = lo->points[j].rate;
      const double b = hi->points[j].rate;
      if (a > b + tol * std::max(1.0, std::abs(b))) {
        out.push_back(fmt::format("{} ({}) exceeds {} ({}) at M={}", lo->scheme, format_number(a), hi->scheme,
                                  format_number(b), format_number(lo->points[j].cache)));
      }
    }
  };
  for (const RateCurve& c : curves) {
    if (&c != cut) check(cut, &c);
  }
  check(env, pc);
  check(env, oc);
  if (unc) {
    // min(pca, oca) <= uncoded, whichever of the two are present
    RateCurve best{"min(pca,oca)", {}};
    const RateCurve* base = pc ? pc : oc;
    if (base) {
      best.points = base->points;
      if (pc && oc) {
        for (std::size_t j = 0; j < best.points.size() && j < oc->points.size(); ++j) {
          best.points[j].rate = std::min(best.points[j].rate, oc->points[j].rate);
        }
      }
      check(&best, unc);
    }
  }
  return out;
}

OutputFormat parse_output_format(std::string_view s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  throw ValidationError(fmt::format("unknown output format '{}' (csv or json)", s));
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  return fmt::format("{:.9g}", v);
}

void emit(const std::vector<RateCurve>& curves, OutputFormat format, std::ostream& out) {
  if (format == OutputFormat::Csv) {
    out << "scheme,M,rate\n";
    for (const RateCurve& c : curves) {
      std::vector<CurvePoint> pts = c.points;
      std::stable_sort(pts.begin(), pts.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.cache < b.cache; });
      for (const CurvePoint& p : pts) {
        out << c.scheme << ',' << format_number(p.cache) << ',' << format_number(p.rate) << '\n';
      }
    }
    return;
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const RateCurve& c : curves) {
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    std::vector<CurvePoint> sorted = c.points;
    std::stable_sort(sorted.begin(), sorted.end(), [](const CurvePoint& a, const CurvePoint& b) { return a.cache < b.cache; });
    for (const CurvePoint& p : sorted) pts.push_back({{"M", round9(p.cache)}, {"rate", round9(p.rate)}});
    doc.push_back({{"scheme", c.scheme}, {"points", std::move(pts)}});
  }
  out << doc.dump(2) << '\n';
}

void emit_to_file(const std::vector<RateCurve>& curves, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot open '{}' for writing", path.string()));
  emit(curves, format, out);
  out.flush();
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path.string()));
}

std::vector<RateCurve> parse_curves_json(std::string_view text) {
  std::vector<RateCurve> curves;
  try {
    const auto doc = nlohmann::json::parse(text);
    for (const auto& c : doc) {
      RateCurve curve{c.at("scheme").get<std::string>(), {}};
      for (const auto& p : c.at("points")) curve.points.push_back({p.at("M").get<double>(), p.at("rate").get<double>()});
      curves.push_back(std::move(curve));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(fmt::format("malformed curve JSON: {}", e.what()));
  }
  return curves;
}

}  // namespace hetcache
