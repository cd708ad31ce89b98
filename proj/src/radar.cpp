#include "stripsar/radar.hpp"

#include <cmath>
#include <stdexcept>

namespace stripsar {

void RadarParams::validate() const {
    auto positive = [](double x, const char* name) {
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::invalid_argument(std::string("RadarParams: ") + name +
                                        " must be positive and finite");
    };
    positive(fc, "fc");
    positive(fr, "fr");
    positive(prf, "prf");
    positive(beta, "beta");
    positive(chirp, "chirp");
    positive(v, "v");
    positive(bandwidth, "bandwidth");
    positive(r0, "r0");
    if (bandwidth > fr)
        throw std::invalid_argument(
            "RadarParams: bandwidth exceeds the range sampling rate");
}

std::string RadarParams::consistency_warning() const {
    double implied = beta * chirp;
    if (std::abs(implied - bandwidth) > 0.01 * bandwidth)
        return "beta * chirp = " + std::to_string(implied) +
               " Hz disagrees with bandwidth = " + std::to_string(bandwidth) +
               " Hz by more than 1%";
    return {};
}

RadarParams RadarParams::ers2() {
    RadarParams p;
    p.fc = 5.3e9;
    p.fr = 18.97e6;
    p.prf = 1679.0;
    p.chirp = 37.1e-6;
    p.bandwidth = 15.545e6;
    p.beta = p.bandwidth / p.chirp;
    p.v = 7120.0;
    p.r0 = 830.9e3;
    return p;
}

}  // namespace stripsar
