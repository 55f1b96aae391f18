#ifndef THETA2_CHARACTERISTICS_HPP
#define THETA2_CHARACTERISTICS_HPP

#include "theta2/siegel.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace theta2 {

enum class Parity { Even, Odd };

// Theta characteristic delta = (delta', delta'') in (1/2)Z^{2g}/Z^{2g},
// identified with F_2^{2g}: bit 1 encodes the coordinate 1/2.  Values are
// immutable after construction and compared bitwise.
class Characteristic {
public:
  Characteristic(std::vector<std::uint8_t> delta_prime, std::vector<std::uint8_t> delta_dprime);

  static Characteristic zero(int g);

  int genus() const { return static_cast<int>(dp_.size()); }
  const std::vector<std::uint8_t>& delta_prime() const { return dp_; }
  const std::vector<std::uint8_t>& delta_dprime() const { return dpp_; }

  // Half-integer coordinate vectors eps' = delta'/2, eps'' = delta''/2.
  RVector eps_prime() const;
  RVector eps_dprime() const;

  bool operator==(const Characteristic&) const = default;

  std::string str() const; // e.g. "[1 1 | 0 1]"

private:
  std::vector<std::uint8_t> dp_, dpp_;
};

// Even iff the F_2 dot product delta' . delta'' vanishes.
Parity parity(const Characteristic& delta);

// Concatenation of the delta' parts and of the delta'' parts.
Characteristic direct_sum(const Characteristic& d1, const Characteristic& d2);

// Inverse of direct_sum: first factor gets genus g1.
std::pair<Characteristic, Characteristic> split(const Characteristic& delta, int g1);

// All 2^{2g} characteristics in lexicographic order of the concatenated bit
// string (delta' first).  Desk scale: g <= 4.
std::vector<Characteristic> enumerate_characteristics(int g);

// The 2-torsion point eps' + eps'' * Omega (row convention).
CVector half_period(const Characteristic& delta, const PeriodMatrix& omega);

} // namespace theta2

#endif
