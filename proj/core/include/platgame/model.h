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

#ifndef PLATGAME_MODEL_H_
#define PLATGAME_MODEL_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace platgame {

// Relative tolerance used whenever two platform rewards or two ranking
// indices are considered equal (optimizer sets, f* bins).
inline constexpr double kTieTolerance = 1e-9;

// True when `a` and `b` agree to kTieTolerance relative to the larger one.
bool tied(double a, double b);

enum class ResponseFamily {
  kExponential,  // beta(p) = exp(-alpha p)
  kPower,        // beta(p) = (1 + alpha p / k)^(-k), k > 1
  kCustom,       // user supplied value and derivative
};

/// Purchase probability of a seller's item as a function of its price.
///
/// All families satisfy beta(0) = 1 and are strictly decreasing. The power
/// family keeps beta'(0) = -alpha, so alpha is the price sensitivity at zero
/// in every built-in family; it tends to the exponential family as k grows.
class ResponseModel {
 public:
  using Curve = std::function<double(std::size_t seller, double price)>;

  static ResponseModel Exponential();
  static ResponseModel Power(std::vector<double> shape);
  // `derivative` must be d value / d price. Both must accept every seller
  // index of the instance the model is attached to.
  static ResponseModel Custom(Curve value, Curve derivative);

  ResponseFamily family() const { return family_; }
  std::string tag() const;
  const std::vector<double>& shape() const { return shape_; }

  double Evaluate(std::span<const double> alpha, std::size_t seller,
                  double price) const;
  double Derivative(std::span<const double> alpha, std::size_t seller,
                    double price) const;

 private:
  ResponseFamily family_ = ResponseFamily::kExponential;
  std::vector<double> shape_;
  Curve value_;
  Curve derivative_;
};

/// All exogenous parameters of one market. Immutable once built.
class MarketInstance {
 public:
  // Validates and throws std::invalid_argument on any violated invariant.
  // A missing p_max defaults to 10 * max_a(1 / alpha_a).
  MarketInstance(int n_sellers, int menu_size, double gamma,
                 std::vector<double> alpha, std::vector<double> cost,
                 std::optional<double> p_max = std::nullopt,
                 ResponseModel response = ResponseModel::Exponential());

  int n_sellers() const { return n_sellers_; }
  int menu_size() const { return menu_size_; }
  double gamma() const { return gamma_; }
  double p_max() const { return p_max_; }
  const std::vector<double>& alpha() const { return alpha_; }
  const std::vector<double>& cost() const { return cost_; }
  double alpha(std::size_t a) const { return alpha_[a]; }
  double cost(std::size_t a) const { return cost_[a]; }
  const ResponseModel& response() const { return response_; }
  bool exponential() const {
    return response_.family() == ResponseFamily::kExponential;
  }

  double Beta(std::size_t seller, double price) const {
    return response_.Evaluate(alpha_, seller, price);
  }
  double BetaDerivative(std::size_t seller, double price) const {
    return response_.Derivative(alpha_, seller, price);
  }

  // Same market with another continuation probability (p_max is kept).
  MarketInstance WithGamma(double gamma) const;

  static double DefaultPriceCap(std::span<const double> alpha);

 private:
  int n_sellers_;
  int menu_size_;
  double gamma_;
  std::vector<double> alpha_;
  std::vector<double> cost_;
  double p_max_;
  ResponseModel response_;
};

/// Commission vector chosen by the sellers; every entry lies in [0, 1].
class CommissionProfile {
 public:
  CommissionProfile() = default;
  explicit CommissionProfile(std::vector<double> delta);

  std::size_t size() const { return delta_.size(); }
  double operator[](std::size_t a) const { return delta_[a]; }
  const std::vector<double>& values() const { return delta_; }

  // Copy with seller `a` moved to `value`.
  CommissionProfile With(std::size_t a, double value) const;

  friend bool operator==(const CommissionProfile&,
                         const CommissionProfile&) = default;

 private:
  std::vector<double> delta_;
};

/// Sellers in display order, zero based.
struct Menu {
  std::vector<int> order;

  std::size_t size() const { return order.size(); }
  bool Contains(int seller) const;
  // Position (zero based) of `seller`, if displayed.
  std::optional<std::size_t> PositionOf(int seller) const;

  friend bool operator==(const Menu&, const Menu&) = default;
  friend auto operator<=>(const Menu&, const Menu&) = default;
};

struct PricedMenu {
  Menu menu;
  std::vector<double> prices;  // price at each position
};

/// Finite distribution over priced menus (the fair randomized policy).
struct RandomizedPolicy {
  struct Entry {
    PricedMenu priced;
    double probability = 0.0;
  };
  std::vector<Entry> support;

  // Price at which `seller` is offered under support entry `entry`.
  std::optional<double> SellerPrice(std::size_t entry, int seller) const;
  // Throws std::invalid_argument unless probabilities are positive and sum
  // to one within 1e-12.
  void Validate() const;
};

// Checks menu length, distinct in-range sellers and price bounds.
void ValidateMenu(const MarketInstance& instance, const Menu& menu);
void ValidatePricedMenu(const MarketInstance& instance,
                        const PricedMenu& priced);
void ValidateProfile(const MarketInstance& instance,
                     const CommissionProfile& delta);

// eta_a = 1 - c_a * alpha_a: the highest commission seller a sustains with
// non-negative margin at its stand-alone optimal price.
std::vector<double> Eta(const MarketInstance& instance);

// gamma * (1 - 1/e). Only defined for the exponential response.
double GammaTilde(const MarketInstance& instance);

}  // namespace platgame

#endif  // PLATGAME_MODEL_H_
