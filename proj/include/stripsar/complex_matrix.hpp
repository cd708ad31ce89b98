#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace stripsar {

using cplx = std::complex<double>;

// Which processing stage a matrix currently represents. Stage functions
// check the tag on entry and retag on exit so that out-of-order calls are
// caught immediately instead of producing garbage images.
enum class Domain {
    signal,           // complex samples over (slow time eta, fast time t)
    range_dechirped,  // range-compressed signal, still in the time domain
    freq2d,           // two-dimensional spectrum over (f_eta, f_t)
    stolt_mapped,     // spectrum after Stolt remapping, uniform in f'_t
};

const char* domain_name(Domain d);

// Row-major grid of complex samples. Each row is one azimuth line (slow
// time), each column one range bin (fast time). t0/eta0 anchor the grid in
// absolute time so focusing can place targets at their true slant range.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t n_az, std::size_t n_rg, cplx fill = {})
        : n_az_(n_az), n_rg_(n_rg), data_(n_az * n_rg, fill) {}

    std::size_t n_az() const { return n_az_; }
    std::size_t n_rg() const { return n_rg_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    cplx& at(std::size_t az, std::size_t rg) { return data_[az * n_rg_ + rg]; }
    const cplx& at(std::size_t az, std::size_t rg) const { return data_[az * n_rg_ + rg]; }

    cplx* row(std::size_t az) { return data_.data() + az * n_rg_; }
    const cplx* row(std::size_t az) const { return data_.data() + az * n_rg_; }

    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    Domain domain = Domain::signal;
    double t0 = 0.0;    // fast time of the first range sample [s]
    double eta0 = 0.0;  // slow time of the first azimuth line [s]

  private:
    std::size_t n_az_ = 0;
    std::size_t n_rg_ = 0;
    std::vector<cplx> data_;
};

// Throws std::invalid_argument unless m is non-empty and tagged `expected`.
void require_domain(const ComplexMatrix& m, Domain expected, const char* op);

}  // namespace stripsar
