// Copyright 2026 The dpprov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "dpprov/errors.h"
#include "dpprov/population.h"
#include "dpprov/population_io.h"
#include "dpprov/rng.h"

namespace dpprov {

Population::Population(std::vector<Consumer> consumers)
    : consumers_(std::move(consumers)) {
  if (consumers_.empty()) throw RangeError("population is empty");
  std::unordered_set<std::int64_t> ids;
  for (const Consumer& c : consumers_) {
    const std::string who = "consumer " + std::to_string(c.id);
    if (!ids.insert(c.id).second) throw RangeError(who + ": repeated id");
    if (c.bit > 1) throw RangeError(who + ": bit must be 0 or 1");
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) {
      throw RangeError(who + ": gamma must be positive");
    }
    if (!(c.eta >= 0.0) || !std::isfinite(c.eta)) {
      throw RangeError(who + ": eta must be nonnegative");
    }
    if (!(c.income > 0.0) || !std::isfinite(c.income)) {
      throw RangeError(who + ": income must be positive");
    }
    eta_bar_ = std::max(eta_bar_, c.eta);
    eta_sum_ += c.eta;
  }
}

std::vector<double> Population::Gammas() const {
  std::vector<double> out;
  out.reserve(consumers_.size());
  for (const Consumer& c : consumers_) out.push_back(c.gamma);
  return out;
}

std::vector<std::uint8_t> Population::Bits() const {
  std::vector<std::uint8_t> out;
  out.reserve(consumers_.size());
  for (const Consumer& c : consumers_) out.push_back(c.bit);
  return out;
}

Population PopulationFromGammas(const std::vector<double>& gammas) {
  std::vector<Consumer> consumers;
  consumers.reserve(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    consumers.push_back({static_cast<std::int64_t>(i), 0, gammas[i], 0.0, 1.0});
  }
  return Population(std::move(consumers));
}

void ValidateConfig(const PopulationConfig& config) {
  if (config.n < 2) throw ModelError("population needs n >= 2");
  if (!(config.bit_prevalence >= 0.0 && config.bit_prevalence <= 1.0)) {
    throw ModelError("bit prevalence must lie in [0, 1]");
  }
  if (!(config.gamma_bit_correlation >= -1.0 &&
        config.gamma_bit_correlation <= 1.0)) {
    throw ModelError("gamma-bit correlation must lie in [-1, 1]");
  }
  const EtaModel& eta = config.eta_model;
  if (!(eta.a > 0.0 && eta.b > 0.0)) throw ModelError("eta Beta shapes must be positive");
  if (!(eta.eta_bar > 0.0) || !std::isfinite(eta.eta_bar)) {
    throw ModelError("eta_bar must be positive");
  }
  if (!(config.income_model.sigma > 0.0) || !std::isfinite(config.income_model.mu)) {
    throw ModelError("income lognormal needs finite mu and sigma > 0");
  }
}

Population GeneratePopulation(const PopulationConfig& config) {
  ValidateConfig(config);
  Rng rng(config.seed);
  const double rho = config.gamma_bit_correlation;
  const double rho_c = std::sqrt(std::max(0.0, 1.0 - rho * rho));
  const double prevalence = config.bit_prevalence;
  std::vector<Consumer> consumers;
  consumers.reserve(config.n);
  for (std::int64_t i = 0; i < config.n; ++i) {
    const double u_gamma = rng.UniformOpen();
    const double w = rng.StandardNormal();
    const double u_eta = rng.UniformOpen();
    const double z_income = rng.StandardNormal();

    Consumer c;
    c.id = i;
    c.gamma = config.gamma_model.Quantile(u_gamma);
    const double latent = rho * NormalQuantile(u_gamma) + rho_c * w;
    if (prevalence <= 0.0) {
      c.bit = 0;
    } else if (prevalence >= 1.0) {
      c.bit = 1;
    } else {
      c.bit = latent > NormalQuantile(1.0 - prevalence) ? 1 : 0;
    }
    const double x =
        boost::math::ibeta_inv(config.eta_model.a, config.eta_model.b, u_eta);
    c.eta = config.eta_model.eta_bar * std::clamp(x, 0.0, 1.0);
    c.income = std::exp(config.income_model.mu +
                        config.income_model.sigma * z_income);
    consumers.push_back(c);
  }
  return Population(std::move(consumers));
}

namespace {

constexpr std::string_view kHeader = "id,bit,gamma,eta,income";

std::string FormatDouble(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

template <class T>
T ParseField(std::string_view text, const char* name, int line) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ParseError("cannot parse " + std::string(name) + " '" +
                         std::string(text) + "'",
                     line);
  }
  return value;
}

}  // namespace

void WritePopulationCsv(const Population& pop, std::ostream& out) {
  std::vector<const Consumer*> rows;
  for (const Consumer& c : pop.consumers()) rows.push_back(&c);
  std::sort(rows.begin(), rows.end(),
            [](const Consumer* a, const Consumer* b) { return a->id < b->id; });
  out << kHeader << '\n';
  for (const Consumer* c : rows) {
    out << c->id << ',' << static_cast<int>(c->bit) << ','
        << FormatDouble(c->gamma) << ',' << FormatDouble(c->eta) << ','
        << FormatDouble(c->income) << '\n';
  }
}

std::string PopulationCsv(const Population& pop) {
  std::ostringstream out;
  WritePopulationCsv(pop, out);
  return out.str();
}

void SavePopulation(const Population& pop, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  WritePopulationCsv(pop, out);
  if (!out) throw Error("write to " + path + " failed");
}

Population ReadPopulationCsv(std::istream& in) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError("missing header", line_no);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) {
    throw ParseError("expected header '" + std::string(kHeader) + "'", line_no);
  }
  std::vector<Consumer> consumers;
  std::int64_t last_id = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = SplitFields(line);
    if (fields.size() != 5) {
      throw ParseError("expected 5 fields, found " + std::to_string(fields.size()),
                       line_no);
    }
    Consumer c;
    c.id = ParseField<std::int64_t>(fields[0], "id", line_no);
    const int bit = ParseField<int>(fields[1], "bit", line_no);
    c.gamma = ParseField<double>(fields[2], "gamma", line_no);
    c.eta = ParseField<double>(fields[3], "eta", line_no);
    c.income = ParseField<double>(fields[4], "income", line_no);
    if (!consumers.empty() && c.id <= last_id) {
      throw ParseError("ids must be strictly ascending", line_no);
    }
    if (bit != 0 && bit != 1) throw RangeError("bit must be 0 or 1", line_no);
    if (!(c.gamma > 0.0) || !std::isfinite(c.gamma)) {
      throw RangeError("gamma must be positive", line_no);
    }
    if (!(c.eta >= 0.0) || !std::isfinite(c.eta)) {
      throw RangeError("eta must be nonnegative", line_no);
    }
    if (!(c.income > 0.0) || !std::isfinite(c.income)) {
      throw RangeError("income must be positive", line_no);
    }
    c.bit = static_cast<std::uint8_t>(bit);
    last_id = c.id;
    consumers.push_back(c);
  }
  if (consumers.size() < 2) {
    throw RangeError("population file has " + std::to_string(consumers.size()) +
                     " rows; at least 2 are required");
  }
  return Population(std::move(consumers));
}

Population LoadPopulation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return ReadPopulationCsv(in);
}

QuantileModel EmpiricalQuantileModel(const Population& pop) {
  if (pop.size() < 2) throw RangeError("empirical model needs at least 2 consumers");
  for (const Consumer& c : pop.consumers()) {
    if (!(c.gamma > 0.0)) throw RangeError("gamma must be positive");
  }
  return QuantileModel::Empirical(pop.Gammas());
}

}  // namespace dpprov
