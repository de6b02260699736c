#ifndef IMIN_ENERGY_HPP
#define IMIN_ENERGY_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "imin/errors.hpp"

namespace imin {

// First-order radio model. Coefficients are kept in the units they are quoted
// in (nJ/bit, pJ/bit/m^2) so that energies are formed in picojoules and
// converted to joules by a single division.
struct RadioParams {
    double elec_nj_per_bit = 50.0;    // E, electronics energy per bit (TX and RX)
    double amp_pj_per_bit_m2 = 10.0;  // epsilon, amplifier energy per bit per m^2
    std::uint64_t packet_bits = 1000; // m

    double elec() const { return elec_nj_per_bit * 1e-9; }  // J/bit
    double amp() const { return amp_pj_per_bit_m2 * 1e-12; } // J/bit/m^2

    // Throws InvalidArgument unless elec > 0, amp > 0 and packet_bits >= 1.
    void validate() const;
};

// E_TX(m, d) = m*E + m*eps*d^2, in joules. Throws NegativeDistance for d < 0.
double tx_energy(const RadioParams& params, double distance_m);

// E_RX(m) = m*E, in joules.
double rx_energy(const RadioParams& params);

struct HopEnergy {
    double tx = 0.0;
    double rx = 0.0;
};

struct EnergyReport {
    double tx_energy = 0.0;
    double rx_energy = 0.0;
    double total = 0.0;
    std::vector<HopEnergy> per_hop;
};

// Charges tx_energy at the sender and rx_energy at the receiver of every hop.
EnergyReport route_energy(const RadioParams& params, std::span<const double> hop_distances_m);

} // namespace imin

#endif // IMIN_ENERGY_HPP
