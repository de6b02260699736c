#include "imin/energy.hpp"

#include <cmath>
#include <string>

#include "imin/errors.hpp"

namespace imin {

namespace {
constexpr double kPicojoulesPerJoule = 1e12;
constexpr double kPicojoulesPerNanojoule = 1e3;
} // namespace

void RadioParams::validate() const {
    if (!(elec_nj_per_bit > 0.0) || !std::isfinite(elec_nj_per_bit))
        throw InvalidArgument("radio electronics energy must be positive");
    if (!(amp_pj_per_bit_m2 > 0.0) || !std::isfinite(amp_pj_per_bit_m2))
        throw InvalidArgument("radio amplifier coefficient must be positive");
    if (packet_bits < 1)
        throw InvalidArgument("packet must carry at least one bit");
}

double tx_energy(const RadioParams& params, double distance_m) {
    if (distance_m < 0.0 || std::isnan(distance_m))
        throw NegativeDistance("transmission distance must be non-negative, got " +
                               std::to_string(distance_m));
    const auto m = static_cast<double>(params.packet_bits);
    const double pj = m * params.elec_nj_per_bit * kPicojoulesPerNanojoule +
                      m * params.amp_pj_per_bit_m2 * distance_m * distance_m;
    return pj / kPicojoulesPerJoule;
}

double rx_energy(const RadioParams& params) {
    const auto m = static_cast<double>(params.packet_bits);
    return m * params.elec_nj_per_bit * kPicojoulesPerNanojoule / kPicojoulesPerJoule;
}

EnergyReport route_energy(const RadioParams& params, std::span<const double> hop_distances_m) {
    EnergyReport report;
    report.per_hop.reserve(hop_distances_m.size());
    const double rx = rx_energy(params);
    for (double d : hop_distances_m) {
        const HopEnergy hop{tx_energy(params, d), rx};
        report.tx_energy += hop.tx;
        report.rx_energy += hop.rx;
        report.per_hop.push_back(hop);
    }
    report.total = report.tx_energy + report.rx_energy;
    return report;
}

} // namespace imin
