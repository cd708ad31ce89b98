#include "stripsar/complex_matrix.hpp"

#include <stdexcept>
#include <string>

namespace stripsar {

const char* domain_name(Domain d) {
    switch (d) {
        case Domain::signal: return "signal";
        case Domain::range_dechirped: return "range_dechirped";
        case Domain::freq2d: return "freq2d";
        case Domain::stolt_mapped: return "stolt_mapped";
    }
    return "?";
}

void require_domain(const ComplexMatrix& m, Domain expected, const char* op) {
    if (m.empty())
        throw std::invalid_argument(std::string(op) + ": empty matrix");
    if (m.domain != expected)
        throw std::invalid_argument(std::string(op) + ": expected " +
                                    domain_name(expected) + " input, got " +
                                    domain_name(m.domain));
}

}  // namespace stripsar
