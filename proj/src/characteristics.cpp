#include "theta2/characteristics.hpp"

#include "theta2/errors.hpp"

#include <sstream>

namespace theta2 {

Characteristic::Characteristic(std::vector<std::uint8_t> delta_prime,
                               std::vector<std::uint8_t> delta_dprime)
    : dp_(std::move(delta_prime)), dpp_(std::move(delta_dprime)) {
  if (dp_.empty() || dp_.size() != dpp_.size())
    throw Error("domain", "characteristic bit vectors must be nonempty and of equal length");
  for (auto b : dp_)
    if (b > 1) throw Error("domain", "characteristic entries must be bits");
  for (auto b : dpp_)
    if (b > 1) throw Error("domain", "characteristic entries must be bits");
}

Characteristic Characteristic::zero(int g) {
  if (g <= 0) throw Error("domain", "genus must be positive");
  return Characteristic(std::vector<std::uint8_t>(g, 0), std::vector<std::uint8_t>(g, 0));
}

RVector Characteristic::eps_prime() const {
  RVector v(genus());
  for (int i = 0; i < genus(); ++i) v[i] = 0.5 * dp_[i];
  return v;
}

RVector Characteristic::eps_dprime() const {
  RVector v(genus());
  for (int i = 0; i < genus(); ++i) v[i] = 0.5 * dpp_[i];
  return v;
}

std::string Characteristic::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < genus(); ++i) os << (i ? " " : "") << int(dp_[i]);
  os << " | ";
  for (int i = 0; i < genus(); ++i) os << (i ? " " : "") << int(dpp_[i]);
  os << ']';
  return os.str();
}

Parity parity(const Characteristic& delta) {
  int dot = 0;
  for (int i = 0; i < delta.genus(); ++i)
    dot ^= delta.delta_prime()[i] & delta.delta_dprime()[i];
  return dot == 0 ? Parity::Even : Parity::Odd;
}

Characteristic direct_sum(const Characteristic& d1, const Characteristic& d2) {
  std::vector<std::uint8_t> dp = d1.delta_prime();
  dp.insert(dp.end(), d2.delta_prime().begin(), d2.delta_prime().end());
  std::vector<std::uint8_t> dpp = d1.delta_dprime();
  dpp.insert(dpp.end(), d2.delta_dprime().begin(), d2.delta_dprime().end());
  return Characteristic(std::move(dp), std::move(dpp));
}

std::pair<Characteristic, Characteristic> split(const Characteristic& delta, int g1) {
  const int g = delta.genus();
  if (g1 <= 0 || g1 >= g) throw Error("domain", "split point must satisfy 0 < g1 < g");
  const auto& dp = delta.delta_prime();
  const auto& dpp = delta.delta_dprime();
  Characteristic first({dp.begin(), dp.begin() + g1}, {dpp.begin(), dpp.begin() + g1});
  Characteristic second({dp.begin() + g1, dp.end()}, {dpp.begin() + g1, dpp.end()});
  return {std::move(first), std::move(second)};
}

std::vector<Characteristic> enumerate_characteristics(int g) {
  if (g <= 0) throw Error("domain", "genus must be positive");
  if (g > 4) throw Error("resource-limit", "characteristic enumeration is capped at genus 4");
  std::vector<Characteristic> out;
  out.reserve(std::size_t(1) << (2 * g));
  for (std::uint32_t idx = 0; idx < (1u << (2 * g)); ++idx) {
    std::vector<std::uint8_t> dp(g), dpp(g);
    for (int j = 0; j < g; ++j) dp[j] = (idx >> (2 * g - 1 - j)) & 1u;
    for (int j = 0; j < g; ++j) dpp[j] = (idx >> (g - 1 - j)) & 1u;
    out.emplace_back(std::move(dp), std::move(dpp));
  }
  return out;
}

CVector half_period(const Characteristic& delta, const PeriodMatrix& omega) {
  if (delta.genus() != omega.genus())
    throw Error("domain", "characteristic and period matrix genus mismatch");
  CVector ep = delta.eps_prime().cast<cdouble>();
  return ep + row_times(delta.eps_dprime().cast<cdouble>(), omega.mat());
}

} // namespace theta2
