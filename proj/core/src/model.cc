// Copyright 2026 The platgame Authors.
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

#include "platgame/model.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace platgame {

bool tied(double a, double b) {
  return std::abs(a - b) <= kTieTolerance * std::max(std::abs(a), std::abs(b));
}

ResponseModel ResponseModel::Exponential() { return ResponseModel(); }

ResponseModel ResponseModel::Power(std::vector<double> shape) {
  for (double k : shape) {
    if (!(k > 1.0) || !std::isfinite(k)) {
      throw std::invalid_argument("power response shape must be > 1");
    }
  }
  ResponseModel model;
  model.family_ = ResponseFamily::kPower;
  model.shape_ = std::move(shape);
  return model;
}

ResponseModel ResponseModel::Custom(Curve value, Curve derivative) {
  if (!value || !derivative) {
    throw std::invalid_argument("custom response needs value and derivative");
  }
  ResponseModel model;
  model.family_ = ResponseFamily::kCustom;
  model.value_ = std::move(value);
  model.derivative_ = std::move(derivative);
  return model;
}

std::string ResponseModel::tag() const {
  switch (family_) {
    case ResponseFamily::kExponential:
      return "exponential";
    case ResponseFamily::kPower:
      return "power";
    case ResponseFamily::kCustom:
      return "custom";
  }
  return "unknown";
}

double ResponseModel::Evaluate(std::span<const double> alpha,
                               std::size_t seller, double price) const {
  switch (family_) {
    case ResponseFamily::kExponential:
      return std::exp(-alpha[seller] * price);
    case ResponseFamily::kPower: {
      const double k = shape_[seller];
      return std::pow(1.0 + alpha[seller] * price / k, -k);
    }
    case ResponseFamily::kCustom:
      return value_(seller, price);
  }
  return 0.0;
}

double ResponseModel::Derivative(std::span<const double> alpha,
                                 std::size_t seller, double price) const {
  switch (family_) {
    case ResponseFamily::kExponential:
      return -alpha[seller] * std::exp(-alpha[seller] * price);
    case ResponseFamily::kPower: {
      const double k = shape_[seller];
      return -alpha[seller] * std::pow(1.0 + alpha[seller] * price / k, -k - 1);
    }
    case ResponseFamily::kCustom:
      return derivative_(seller, price);
  }
  return 0.0;
}

MarketInstance::MarketInstance(int n_sellers, int menu_size, double gamma,
                               std::vector<double> alpha,
                               std::vector<double> cost,
                               std::optional<double> p_max,
                               ResponseModel response)
    : n_sellers_(n_sellers),
      menu_size_(menu_size),
      gamma_(gamma),
      alpha_(std::move(alpha)),
      cost_(std::move(cost)),
      p_max_(0.0),
      response_(std::move(response)) {
  if (n_sellers_ < 1) throw std::invalid_argument("n_sellers must be >= 1");
  if (menu_size_ < 1 || menu_size_ > n_sellers_) {
    throw std::invalid_argument("menu_size must lie in [1, n_sellers]");
  }
  if (!(gamma_ >= 0.0 && gamma_ < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1)");
  }
  const auto n = static_cast<std::size_t>(n_sellers_);
  if (alpha_.size() != n || cost_.size() != n) {
    throw std::invalid_argument("alpha and cost need one entry per seller");
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (!(alpha_[a] > 0.0) || !std::isfinite(alpha_[a])) {
      throw std::invalid_argument("alpha must be positive and finite");
    }
    if (!(cost_[a] >= 0.0) || !std::isfinite(cost_[a])) {
      throw std::invalid_argument("cost must be non-negative and finite");
    }
  }
  p_max_ = p_max.value_or(DefaultPriceCap(alpha_));
  if (!(p_max_ > 0.0) || !std::isfinite(p_max_)) {
    throw std::invalid_argument("p_max must be positive and finite");
  }
  if (response_.family() == ResponseFamily::kPower &&
      response_.shape().size() != n) {
    throw std::invalid_argument("power response needs one shape per seller");
  }
}

MarketInstance MarketInstance::WithGamma(double gamma) const {
  MarketInstance copy = *this;
  if (!(gamma >= 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("gamma must lie in [0, 1)");
  }
  copy.gamma_ = gamma;
  return copy;
}

double MarketInstance::DefaultPriceCap(std::span<const double> alpha) {
  double widest = 0.0;
  for (double a : alpha) widest = std::max(widest, 1.0 / a);
  return 10.0 * widest;
}

CommissionProfile::CommissionProfile(std::vector<double> delta)
    : delta_(std::move(delta)) {
  for (double d : delta_) {
    if (!(d >= 0.0 && d <= 1.0)) {
      throw std::invalid_argument("commission must lie in [0, 1]");
    }
  }
}

CommissionProfile CommissionProfile::With(std::size_t a, double value) const {
  std::vector<double> next = delta_;
  next.at(a) = value;
  return CommissionProfile(std::move(next));
}

bool Menu::Contains(int seller) const {
  return std::find(order.begin(), order.end(), seller) != order.end();
}

std::optional<std::size_t> Menu::PositionOf(int seller) const {
  auto it = std::find(order.begin(), order.end(), seller);
  if (it == order.end()) return std::nullopt;
  return static_cast<std::size_t>(it - order.begin());
}

std::optional<double> RandomizedPolicy::SellerPrice(std::size_t entry,
                                                    int seller) const {
  const PricedMenu& priced = support.at(entry).priced;
  auto pos = priced.menu.PositionOf(seller);
  if (!pos) return std::nullopt;
  return priced.prices[*pos];
}

void RandomizedPolicy::Validate() const {
  if (support.empty()) throw std::invalid_argument("empty policy support");
  double total = 0.0;
  for (const Entry& e : support) {
    if (!(e.probability > 0.0)) {
      throw std::invalid_argument("policy probabilities must be positive");
    }
    if (e.priced.prices.size() != e.priced.menu.size()) {
      throw std::invalid_argument("one price per menu position required");
    }
    total += e.probability;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("policy probabilities must sum to one");
  }
}

void ValidateMenu(const MarketInstance& instance, const Menu& menu) {
  if (menu.size() != static_cast<std::size_t>(instance.menu_size())) {
    throw std::invalid_argument("menu length must equal menu_size");
  }
  std::vector<bool> seen(static_cast<std::size_t>(instance.n_sellers()));
  for (int a : menu.order) {
    if (a < 0 || a >= instance.n_sellers()) {
      throw std::invalid_argument("menu references an unknown seller");
    }
    if (seen[static_cast<std::size_t>(a)]) {
      throw std::invalid_argument("menu repeats a seller");
    }
    seen[static_cast<std::size_t>(a)] = true;
  }
}

void ValidatePricedMenu(const MarketInstance& instance,
                        const PricedMenu& priced) {
  ValidateMenu(instance, priced.menu);
  if (priced.prices.size() != priced.menu.size()) {
    throw std::invalid_argument("one price per menu position required");
  }
  for (double p : priced.prices) {
    if (!(p >= 0.0 && p <= instance.p_max())) {
      throw std::invalid_argument("price outside [0, p_max]");
    }
  }
}

void ValidateProfile(const MarketInstance& instance,
                     const CommissionProfile& delta) {
  if (delta.size() != static_cast<std::size_t>(instance.n_sellers())) {
    throw std::invalid_argument("commission profile needs one entry per seller");
  }
}

std::vector<double> Eta(const MarketInstance& instance) {
  std::vector<double> eta(instance.alpha().size());
  for (std::size_t a = 0; a < eta.size(); ++a) {
    eta[a] = 1.0 - instance.cost(a) * instance.alpha(a);
  }
  return eta;
}

double GammaTilde(const MarketInstance& instance) {
  if (!instance.exponential()) {
    throw std::invalid_argument(
        "gamma_tilde is only defined for the exponential response");
  }
  return instance.gamma() * (1.0 - std::exp(-1.0));
}

}  // namespace platgame
