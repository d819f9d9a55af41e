#ifndef QFRICTION_CONSTANTS_HPP
#define QFRICTION_CONSTANTS_HPP

namespace qfriction::constants {

// CODATA 2018 exact / recommended values, SI.
inline constexpr double hbar = 1.054571817e-34;               // J s
inline constexpr double electron_volt = 1.602176634e-19;      // J
inline constexpr double speed_of_light = 299792458.0;         // m/s
inline constexpr double vacuum_permittivity = 8.8541878128e-12;  // F/m
inline constexpr double electron_mass = 9.1093837015e-31;     // kg

inline constexpr double pi = 3.141592653589793238462643383279503;
inline constexpr double euler_gamma = 0.577215664901532860606512090082402;

}  // namespace qfriction::constants

#endif
