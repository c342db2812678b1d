// SPDX-License-Identifier: Apache-2.0
//
// uavpdc - pilot decontamination for massive MIMO networks with UAVs
// Copyright (C) 2026 The uavpdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "uavpdc/detector.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace
{
    // FFTW's planner is not re-entrant; execution of an existing plan is.
    std::mutex &planner_mutex()
    {
        static std::mutex m;
        return m;
    }

    struct FftwBuffer
    {
        fftw_complex *data = nullptr;
        explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n))
        {
            if (data == nullptr)
                throw std::bad_alloc();
        }
        ~FftwBuffer() { fftw_free(data); }
        FftwBuffer(const FftwBuffer &) = delete;
        FftwBuffer &operator=(const FftwBuffer &) = delete;
        std::complex<double> *complex() { return reinterpret_cast<std::complex<double> *>(data); }
    };

    // Per-thread FFT work space, grown on demand.
    struct FftScratch
    {
        std::unique_ptr<FftwBuffer> x, X, work, result;
        std::size_t length = 0, total = 0;

        void reserve(std::size_t M, std::size_t columns)
        {
            if (length < M)
            {
                x = std::make_unique<FftwBuffer>(M);
                X = std::make_unique<FftwBuffer>(M);
                length = M;
            }
            if (total < M * columns)
            {
                work = std::make_unique<FftwBuffer>(M * columns);
                result = std::make_unique<FftwBuffer>(M * columns);
                total = M * columns;
            }
        }
    };

    FftScratch &scratch()
    {
        thread_local FftScratch s;
        return s;
    }

    // Largest rotation-Gram table kept in memory, in complex entries.
    constexpr std::size_t max_gram_entries = std::size_t(1) << 23;
    // peaks this far below the first one are rounding residue of exact subtractions
    constexpr double residual_floor = 1e-20;

    double pattern_gain(const uavpdc::ChannelVector &a, const uavpdc::ChannelVector &b)
    {
        const double M = (double)a.n_elem;
        return std::norm(arma::cdot(a, b)) / (M * M);
    }

    // Smallest offset at which the normalized array gain drops to one half.
    template <class Probe>
    double half_power_offset(Probe probe, double max_offset)
    {
        const int steps = 4000;
        double lo = 0.0, hi = max_offset;
        for (int s = 1; s <= steps; ++s)
        {
            const double x = max_offset * s / steps;
            if (probe(x) <= 0.5)
            {
                hi = x;
                lo = max_offset * (s - 1) / steps;
                break;
            }
        }
        for (int it = 0; it < 60; ++it)
        {
            const double mid = 0.5 * (lo + hi);
            (probe(mid) <= 0.5 ? hi : lo) = mid;
        }
        return hi;
    }
} // namespace

// ---------- Grid ----------

double uavpdc::AngularGrid::theta(std::size_t i) const
{
    return (double)i * std::numbers::pi / (2.0 * (double)n_theta);
}

double uavpdc::AngularGrid::phi(std::size_t j) const
{
    return -std::numbers::pi + 2.0 * std::numbers::pi * (double)j / (double)n_phi;
}

double uavpdc::AngularGrid::theta_step() const
{
    return std::numbers::pi / (2.0 * (double)n_theta);
}

double uavpdc::AngularGrid::phi_step() const
{
    return 2.0 * std::numbers::pi / (double)n_phi;
}

void uavpdc::AngularGrid::validate() const
{
    if (n_theta < 1 || n_phi < 1)
        throw std::invalid_argument("Angular grid needs at least one point per dimension.");
}

uavpdc::Beamwidths uavpdc::array_beamwidths(const ArrayGeometry &array)
{
    array.validate();
    const double half_pi = 0.5 * std::numbers::pi;

    const ChannelVector zenith = steering_vector(array, {0.0, 0.0});
    const double el = half_power_offset([&](double d)
                                        { return pattern_gain(zenith, steering_vector(array, {d, 0.0})); },
                                        half_pi);

    const ChannelVector horizon = steering_vector(array, {half_pi, 0.0});
    const double az = half_power_offset([&](double d)
                                        { return pattern_gain(horizon, steering_vector(array, {half_pi, d})); },
                                        std::numbers::pi);
    return {2.0 * el, 2.0 * az};
}

bool uavpdc::grid_resolves_beams(const AngularGrid &grid, const ArrayGeometry &array)
{
    const Beamwidths bw = array_beamwidths(array);
    return grid.theta_step() < bw.elevation && grid.phi_step() < bw.azimuth;
}

// ---------- Matched-filter bank ----------

struct uavpdc::MatchedFilterBank::Impl
{
    ArrayGeometry array;
    AngularGrid grid;
    bool fft = false;

    // Direct route: M x (n_theta * n_phi) steering table, column i * n_phi + j.
    arma::cx_mat table;

    // FFT route. Cell (i, j = s*q + r) has steering vector b_{i,r} cyclically shifted by q,
    // so a^H h over q is the circular cross-correlation of h with b_{i,r}.
    std::size_t offsets = 0; // s = n_phi / M
    arma::cx_mat kernels;    // column i*s + r: conj(DFT(b_{i,r})) / M
    arma::cx_mat bases;      // column i*s + r: b_{i,r}
    // gram[i*s + r] = correlate(b_{i,r}); a(i', j)^H a(i, s*q + r) is its entry at (i', j - s*q).
    std::vector<arma::cx_mat> gram;
    fftw_plan forward = nullptr;
    fftw_plan backward = nullptr;

    ~Impl()
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        if (forward)
            fftw_destroy_plan(forward);
        if (backward)
            fftw_destroy_plan(backward);
    }
};

uavpdc::MatchedFilterBank::MatchedFilterBank(const ArrayGeometry &array, const AngularGrid &grid, SpectrumRoute route)
    : impl_(std::make_unique<Impl>())
{
    array.validate();
    grid.validate();
    impl_->array = array;
    impl_->grid = grid;

    const std::size_t M = array.num_antennas;
    const bool compatible = grid.n_phi % M == 0;
    if (route == SpectrumRoute::Fft && !compatible)
        throw std::invalid_argument("FFT spectrum route needs the azimuth point count to be a multiple of M.");
    impl_->fft = route == SpectrumRoute::Fft || (route == SpectrumRoute::Auto && compatible);

    if (!impl_->fft)
    {
        impl_->table.set_size(M, grid.num_cells());
        for (std::size_t i = 0; i < grid.n_theta; ++i)
            for (std::size_t j = 0; j < grid.n_phi; ++j)
                impl_->table.col(i * grid.n_phi + j) = steering_vector(array, grid.cell(i, j));
        return;
    }

    const std::size_t s = grid.n_phi / M;
    const std::size_t columns = grid.n_theta * s;
    impl_->offsets = s;
    impl_->kernels.set_size(M, columns);
    impl_->bases.set_size(M, columns);
    for (std::size_t i = 0; i < grid.n_theta; ++i)
        for (std::size_t r = 0; r < s; ++r)
        {
            impl_->bases.col(i * s + r) = steering_vector(array, grid.cell(i, r));
            impl_->kernels.col(i * s + r) = arma::conj(arma::fft(impl_->bases.col(i * s + r))) / (double)M;
        }

    {
        FftwBuffer in(M * columns), out(M * columns);
        const int n = (int)M;
        std::lock_guard<std::mutex> lock(planner_mutex());
        impl_->forward = fftw_plan_dft_1d(n, in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
        impl_->backward = fftw_plan_many_dft(1, &n, (int)columns, in.data, nullptr, 1, n, out.data, nullptr, 1, n,
                                             FFTW_BACKWARD, FFTW_ESTIMATE);
        if (impl_->forward == nullptr || impl_->backward == nullptr)
            throw std::runtime_error("FFTW planning failed.");
    }

    if (columns * grid.num_cells() <= max_gram_entries)
    {
        impl_->gram.reserve(columns);
        for (std::size_t c = 0; c < columns; ++c)
            impl_->gram.push_back(correlate(impl_->bases.col(c)));
    }
}

uavpdc::MatchedFilterBank::~MatchedFilterBank() = default;
uavpdc::MatchedFilterBank::MatchedFilterBank(MatchedFilterBank &&) noexcept = default;
uavpdc::MatchedFilterBank &uavpdc::MatchedFilterBank::operator=(MatchedFilterBank &&) noexcept = default;

const uavpdc::ArrayGeometry &uavpdc::MatchedFilterBank::array() const { return impl_->array; }
const uavpdc::AngularGrid &uavpdc::MatchedFilterBank::grid() const { return impl_->grid; }
bool uavpdc::MatchedFilterBank::uses_fft() const { return impl_->fft; }

uavpdc::ChannelVector uavpdc::MatchedFilterBank::steering(std::size_t i, std::size_t j) const
{
    const AngularGrid &g = impl_->grid;
    if (i >= g.n_theta || j >= g.n_phi)
        throw std::out_of_range("Grid cell index out of range.");
    if (!impl_->fft)
        return impl_->table.col(i * g.n_phi + j);
    // a(i, s*q + r)[m] = b_{i,r}[m - q]
    const std::size_t s = impl_->offsets;
    return arma::shift(impl_->bases.col(i * s + j % s), (arma::sword)(j / s));
}

bool uavpdc::MatchedFilterBank::supports_incremental_update() const
{
    return !impl_->gram.empty();
}

void uavpdc::MatchedFilterBank::subtract_component(arma::cx_mat &correlation, std::size_t i, std::size_t j,
                                                   std::complex<double> gain) const
{
    const AngularGrid &g = impl_->grid;
    if (impl_->gram.empty())
        throw std::logic_error("This matched-filter bank keeps no rotation table.");
    if (i >= g.n_theta || j >= g.n_phi)
        throw std::out_of_range("Grid cell index out of range.");
    if (correlation.n_rows != g.n_theta || correlation.n_cols != g.n_phi)
        throw std::invalid_argument("Correlation matrix does not match the grid.");

    const std::size_t s = impl_->offsets;
    const std::size_t M = impl_->array.num_antennas;
    const arma::cx_mat &G = impl_->gram[i * s + j % s];
    const std::size_t qc = j / s;
    const std::size_t rows = g.n_theta;
    for (std::size_t q = 0; q < M; ++q)
    {
        const std::size_t src = s * ((q + M - qc) % M);
        std::complex<double> *dst = correlation.colptr(s * q);
        const std::complex<double> *from = G.colptr(src);
        for (std::size_t k = 0; k < s * rows; ++k)
            dst[k] -= gain * from[k];
    }
}

arma::cx_mat uavpdc::MatchedFilterBank::correlate(const ChannelVector &estimate) const
{
    const std::size_t M = impl_->array.num_antennas;
    const AngularGrid &g = impl_->grid;
    if (estimate.n_elem != M)
        throw std::invalid_argument("Estimate length does not match the array size.");

    arma::cx_mat corr(g.n_theta, g.n_phi);
    if (!impl_->fft)
    {
        const arma::cx_rowvec c = estimate.t() * impl_->table; // conj(a^H h)
        for (std::size_t i = 0; i < g.n_theta; ++i)
            for (std::size_t j = 0; j < g.n_phi; ++j)
                corr(i, j) = std::conj(c(i * g.n_phi + j));
        return corr;
    }

    const std::size_t s = impl_->offsets;
    const std::size_t columns = g.n_theta * s;
    FftScratch &buf = scratch();
    buf.reserve(M, columns);
    FftwBuffer &x = *buf.x, &X = *buf.X, &work = *buf.work, &result = *buf.result;
    std::memcpy(x.data, estimate.memptr(), M * sizeof(fftw_complex));
    fftw_execute_dft(impl_->forward, x.data, X.data);

    const std::complex<double> *Xc = X.complex();
    std::complex<double> *w = work.complex();
    for (std::size_t col = 0; col < columns; ++col)
    {
        const std::complex<double> *k = impl_->kernels.colptr(col);
        std::complex<double> *dst = w + col * M;
        for (std::size_t m = 0; m < M; ++m)
            dst[m] = Xc[m] * k[m];
    }
    fftw_execute_dft(impl_->backward, work.data, result.data);

    const std::complex<double> *res = result.complex();
    for (std::size_t i = 0; i < g.n_theta; ++i)
        for (std::size_t r = 0; r < s; ++r)
        {
            const std::complex<double> *src = res + (i * s + r) * M;
            for (std::size_t q = 0; q < M; ++q)
                corr(i, s * q + r) = src[q];
        }
    return corr;
}

// ---------- Detection ----------

arma::mat uavpdc::matched_filter_spectrum(const ChannelVector &estimate, const MatchedFilterBank &bank)
{
    return arma::square(arma::abs(bank.correlate(estimate))) / (double)bank.array().num_antennas;
}

double uavpdc::detection_threshold(const arma::mat &spectrum, double kappa)
{
    if (!(kappa > 0.0))
        throw std::invalid_argument("Threshold factor kappa must be positive.");
    if (spectrum.n_elem == 0)
        throw std::invalid_argument("Empty spectrum.");
    return kappa * arma::accu(spectrum) / (double)spectrum.n_elem;
}

std::complex<double> uavpdc::fit_los_gain(const ChannelVector &estimate, const ChannelVector &steering)
{
    if (estimate.n_elem != steering.n_elem || steering.n_elem == 0)
        throw std::invalid_argument("Estimate and steering vector lengths differ.");
    return arma::cdot(steering, estimate) / (double)steering.n_elem;
}

uavpdc::SpectrumPeak uavpdc::spectrum_peak(const arma::mat &spectrum)
{
    SpectrumPeak best;
    best.value = -1.0;
    for (arma::uword i = 0; i < spectrum.n_rows; ++i)
        for (arma::uword j = 0; j < spectrum.n_cols; ++j)
            if (spectrum(i, j) > best.value)
                best = {i, j, spectrum(i, j)};
    return best;
}

uavpdc::ChannelVector uavpdc::LoSComponent::reconstruct(const ArrayGeometry &array) const
{
    return gain * steering_vector(array, aoa);
}

uavpdc::DetectionOutcome uavpdc::successive_detection(const ChannelVector &estimate, const MatchedFilterBank &bank,
                                                      const DetectorConfig &config)
{
    if (config.max_iterations < 1)
        throw std::invalid_argument("max_iterations must be at least 1.");
    if (estimate.n_elem != bank.array().num_antennas)
        throw std::invalid_argument("Estimate length does not match the array size.");

    const double M = (double)bank.array().num_antennas;
    const AngularGrid &grid = bank.grid();
    const bool incremental = bank.supports_incremental_update();

    DetectionOutcome out;
    out.residual = estimate;
    arma::cx_mat corr = bank.correlate(estimate);
    double floor = 0.0;
    while (true)
    {
        // argmax (row-major first on ties) and sum of T = |corr|^2 / M in one column-major pass
        SpectrumPeak peak;
        peak.value = -1.0;
        double sum = 0.0;
        for (arma::uword j = 0; j < corr.n_cols; ++j)
        {
            const std::complex<double> *col = corr.colptr(j);
            for (arma::uword i = 0; i < corr.n_rows; ++i)
            {
                const double t = std::norm(col[i]) / M;
                sum += t;
                if (t > peak.value || (t == peak.value && i < peak.theta_index))
                    peak = {i, j, t};
            }
        }
        if (out.components.empty())
            floor = residual_floor * peak.value;
        const double zeta = config.kappa * sum / (double)corr.n_elem;
        if (!(peak.value > zeta) || peak.value <= floor)
            break;
        if (out.components.size() >= config.max_iterations)
        {
            out.truncated = true;
            break;
        }

        LoSComponent c;
        c.aoa = grid.cell(peak.theta_index, peak.phi_index);
        c.gain = corr(peak.theta_index, peak.phi_index) / M; // a^H residual / M
        c.peak_value = peak.value;
        c.theta_index = peak.theta_index;
        c.phi_index = peak.phi_index;
        out.residual -= c.gain * bank.steering(peak.theta_index, peak.phi_index);
        out.components.push_back(c);

        if (incremental)
            bank.subtract_component(corr, c.theta_index, c.phi_index, c.gain);
        else
            corr = bank.correlate(out.residual);
    }
    return out;
}

void uavpdc::write_spectrum_csv(std::ostream &out, const arma::mat &spectrum, const AngularGrid &grid)
{
    if (spectrum.n_rows != grid.n_theta || spectrum.n_cols != grid.n_phi)
        throw std::invalid_argument("Spectrum shape does not match the grid.");
    out << "theta,phi,T\n";
    for (std::size_t i = 0; i < grid.n_theta; ++i)
        for (std::size_t j = 0; j < grid.n_phi; ++j)
            out << grid.theta(i) << ',' << grid.phi(j) << ',' << spectrum(i, j) << '\n';
}
