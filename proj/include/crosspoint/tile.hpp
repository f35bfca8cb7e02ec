/*
 * (C) Copyright 2026 the crosspoint authors.
 * Licensed under the Apache License, Version 2.0; see
 * http://www.apache.org/licenses/LICENSE-2.0 for the full text.
 */

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "crosspoint/device.hpp"
#include "crosspoint/rng.hpp"

namespace crosspoint {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Stochastic pulse-train parameters for the parallel rank-one update.
/// Column j of the input fires per time slot with probability
/// min(1, amp_x*|x_j|), row i with min(1, amp_d*|d_i|); a coincidence applies
/// one unit pulse. Over bl slots the expected per-element change is
/// -sign * eta_eff * x_j * d_i with eta_eff = bl * amp_x * amp_d * dw0,
/// as long as no probability clips at 1.
template <typename Scalar = double>
struct PulseUpdateConfig {
  int bl{10};
  Scalar amp_x{1};
  Scalar amp_d{1};

  Scalar eta_eff(Scalar dw0) const { return Scalar(bl) * amp_x * amp_d * dw0; }

  // Splits a target learning rate evenly across both pulse trains.
  static PulseUpdateConfig for_learning_rate(Scalar eta, int bl, Scalar dw0) {
    const Scalar amp = std::sqrt(eta / (Scalar(bl) * dw0));
    return PulseUpdateConfig{bl, amp, amp};
  }

  bool valid() const { return bl >= 1 && amp_x > Scalar(0) && amp_d > Scalar(0); }
};

/// A dense array of crosspoint devices stored in differential weight
/// coordinates: `weight` is the readable value w - ref, `drift_center` is
/// w_sym - ref, and `lo`/`hi` are the clipping bounds shifted by ref. Pulse
/// dynamics are invariant under this shift, and the analog read becomes a
/// single matrix product with no temporary.
template <typename Scalar = double>
class DeviceArray {
 public:
  DeviceArray() = default;

  DeviceArray(Eigen::Index rows, Eigen::Index cols, const DeviceState<Scalar>& tmpl,
              const NoiseModel<Scalar>& noise, RandomStream& rng, Scalar ref_offset = Scalar(0)) {
    weight_ = MatrixX<Scalar>::Constant(rows, cols, tmpl.w - ref_offset);
    drift_center_ = MatrixX<Scalar>::Constant(rows, cols, tmpl.w_sym - ref_offset);
    step_size_ = MatrixX<Scalar>::Constant(rows, cols, tmpl.dw0);
    kappa_ = MatrixX<Scalar>::Constant(rows, cols, tmpl.kappa);
    lo_ = MatrixX<Scalar>::Constant(rows, cols, tmpl.w_min - ref_offset);
    hi_ = MatrixX<Scalar>::Constant(rows, cols, tmpl.w_max - ref_offset);
    if (noise.sigma_d2d_dw0 > Scalar(0) || noise.sigma_d2d_wsym > Scalar(0)) {
      for (Eigen::Index j = 0; j < cols; ++j) {
        for (Eigen::Index i = 0; i < rows; ++i) {
          const DeviceState<Scalar> d = sample_device(tmpl, noise, rng);
          step_size_(i, j) = d.dw0;
          drift_center_(i, j) = d.w_sym - ref_offset;
        }
      }
    }
  }

  Eigen::Index rows() const { return weight_.rows(); }
  Eigen::Index cols() const { return weight_.cols(); }

  const MatrixX<Scalar>& weight() const { return weight_; }
  MatrixX<Scalar>& weight() { return weight_; }
  const MatrixX<Scalar>& drift_center() const { return drift_center_; }
  MatrixX<Scalar>& drift_center() { return drift_center_; }
  const MatrixX<Scalar>& step_size() const { return step_size_; }
  MatrixX<Scalar>& step_size() { return step_size_; }
  const MatrixX<Scalar>& kappa() const { return kappa_; }
  MatrixX<Scalar>& kappa() { return kappa_; }
  const MatrixX<Scalar>& lower_bound() const { return lo_; }
  MatrixX<Scalar>& lower_bound() { return lo_; }
  const MatrixX<Scalar>& upper_bound() const { return hi_; }
  MatrixX<Scalar>& upper_bound() { return hi_; }

  bool uniform_symmetric() const { return (kappa_.array() == Scalar(0)).all(); }

  /// One pulse on element (i, j); factor carries cycle-to-cycle noise.
  void pulse_at(Eigen::Index i, Eigen::Index j, int direction, Scalar factor = Scalar(1)) {
    Scalar& w = weight_(i, j);
    const Scalar d = pulse_delta(w, drift_center_(i, j), step_size_(i, j), kappa_(i, j),
                                 direction, factor);
    w = std::clamp(w + d, lo_(i, j), hi_(i, j));
  }

  /// Rebases the array so the current weights read as zero: the reference
  /// absorbs the present conductance. Returns the per-element shift applied
  /// (the old weights), which the caller adds to its reference matrix.
  MatrixX<Scalar> rebase_to_zero() {
    MatrixX<Scalar> shift = weight_;
    drift_center_ -= shift;
    lo_ -= shift;
    hi_ -= shift;
    weight_.setZero();
    return shift;
  }

  /// Reconstructs the absolute device state of element (i, j) given the
  /// reference value that was subtracted out.
  DeviceState<Scalar> device_at(Eigen::Index i, Eigen::Index j, Scalar ref) const {
    DeviceState<Scalar> s;
    s.w = weight_(i, j) + ref;
    s.w_sym = drift_center_(i, j) + ref;
    s.dw0 = step_size_(i, j);
    s.kappa = kappa_(i, j);
    s.w_min = lo_(i, j) + ref;
    s.w_max = hi_(i, j) + ref;
    return s;
  }

 private:
  MatrixX<Scalar> weight_, drift_center_, step_size_, kappa_, lo_, hi_;
};

namespace detail {

// Firing columns/rows for one pulse-train slot. Entries with p <= 0 never
// fire and consume no draws; entries with p >= 1 always fire and consume no
// draws; only fractional probabilities draw.
template <typename Scalar>
struct TrainSide {
  std::vector<Eigen::Index> index;   // candidates with p > 0
  std::vector<Scalar> prob;          // their probabilities
  std::vector<int> sign;             // sign of the encoded value
  std::vector<Eigen::Index> fired;   // scratch, rebuilt per slot

  void build(const Scalar* v, Eigen::Index n, Scalar amp) {
    index.clear();
    prob.clear();
    sign.clear();
    for (Eigen::Index k = 0; k < n; ++k) {
      const Scalar a = std::abs(v[k]);
      if (a <= Scalar(0)) continue;
      index.push_back(k);
      prob.push_back(std::min(Scalar(1), amp * a));
      sign.push_back(v[k] > Scalar(0) ? +1 : -1);
    }
    fired.reserve(index.size());
  }

  void draw(RandomStream& rng) {
    fired.clear();
    for (std::size_t k = 0; k < index.size(); ++k) {
      if (prob[k] >= Scalar(1) || rng.uniform01() < static_cast<double>(prob[k])) {
        fired.push_back(static_cast<Eigen::Index>(k));
      }
    }
  }
};

// Core coincidence loop shared by the generic and structured entry points.
// Draw order per slot: all column candidates in ascending index, then all row
// candidates; pulses apply in (column, row) lexicographic order.
template <typename Scalar>
void run_pulse_trains(DeviceArray<Scalar>& dev, TrainSide<Scalar>& cols, TrainSide<Scalar>& rows,
                      int bl, int sign, Scalar sigma_c2c, RandomStream& rng) {
  for (int t = 0; t < bl; ++t) {
    cols.draw(rng);
    rows.draw(rng);
    for (Eigen::Index jc : cols.fired) {
      const Eigen::Index j = cols.index[jc];
      const int sj = cols.sign[jc];
      for (Eigen::Index ir : rows.fired) {
        const Eigen::Index i = rows.index[ir];
        const int dir = -sign * sj * rows.sign[ir];
        const Scalar f = static_cast<Scalar>(
            detail::c2c_factor(rng, static_cast<double>(sigma_c2c)));
        dev.pulse_at(i, j, dir, f);
      }
    }
  }
}

}  // namespace detail

/// Analog matrix-vector product y = W x with independent additive read noise
/// per output element.
template <typename Scalar>
VectorX<Scalar> analog_forward(const MatrixX<Scalar>& w, const VectorX<Scalar>& x,
                               Scalar sigma_read, RandomStream& rng) {
  if (x.size() != w.cols()) throw std::invalid_argument("analog_forward: size mismatch");
  VectorX<Scalar> y = w * x;
  if (sigma_read > Scalar(0)) {
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      y(i) += sigma_read * static_cast<Scalar>(rng.normal());
    }
  }
  return y;
}

/// Analog transpose read z = W^T d with read noise.
template <typename Scalar>
VectorX<Scalar> analog_backward(const MatrixX<Scalar>& w, const VectorX<Scalar>& d,
                                Scalar sigma_read, RandomStream& rng) {
  if (d.size() != w.rows()) throw std::invalid_argument("analog_backward: size mismatch");
  VectorX<Scalar> z = w.transpose() * d;
  if (sigma_read > Scalar(0)) {
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      z(i) += sigma_read * static_cast<Scalar>(rng.normal());
    }
  }
  return z;
}

/// Fully parallel stochastic rank-one update. The outer product x d^T is
/// never formed: per slot, columns and rows fire independently and each
/// coincidence applies one device pulse of direction -sign*sgn(x_j)*sgn(d_i).
/// sign = +1 is the descent convention (expected change -eta_eff*x_j*d_i).
template <typename Scalar>
void stochastic_update(DeviceArray<Scalar>& dev, const VectorX<Scalar>& x,
                       const VectorX<Scalar>& d, const PulseUpdateConfig<Scalar>& cfg, int sign,
                       Scalar sigma_c2c, RandomStream& rng) {
  if (x.size() != dev.cols() || d.size() != dev.rows()) {
    throw std::invalid_argument("stochastic_update: size mismatch");
  }
  detail::TrainSide<Scalar> cols, rows;
  cols.build(x.data(), x.size(), cfg.amp_x);
  rows.build(d.data(), d.size(), cfg.amp_d);
  detail::run_pulse_trains(dev, cols, rows, cfg.bl, sign, sigma_c2c, rng);
}

/// A crossbar tile: a device array read differentially against a fixed
/// reference. The reference is only rewritten by zero_shift_init.
template <typename Scalar = double>
class Tile {
 public:
  Tile() = default;

  Tile(Eigen::Index rows, Eigen::Index cols, const DeviceState<Scalar>& tmpl,
       const NoiseModel<Scalar>& noise, RandomStream& rng)
      : devices_(rows, cols, tmpl, noise, rng),
        ref_(MatrixX<Scalar>::Zero(rows, cols)),
        noise_(noise) {}

  Eigen::Index rows() const { return devices_.rows(); }
  Eigen::Index cols() const { return devices_.cols(); }

  DeviceArray<Scalar>& devices() { return devices_; }
  const DeviceArray<Scalar>& devices() const { return devices_; }
  const MatrixX<Scalar>& reference() const { return ref_; }
  MatrixX<Scalar>& reference() { return ref_; }
  const NoiseModel<Scalar>& noise() const { return noise_; }
  NoiseModel<Scalar>& noise() { return noise_; }

  VectorX<Scalar> forward(const VectorX<Scalar>& x, RandomStream& rng) const {
    return analog_forward(devices_.weight(), x, noise_.sigma_read, rng);
  }

  VectorX<Scalar> backward(const VectorX<Scalar>& d, RandomStream& rng) const {
    return analog_backward(devices_.weight(), d, noise_.sigma_read, rng);
  }

  void stochastic_update(const VectorX<Scalar>& x, const VectorX<Scalar>& d,
                         const PulseUpdateConfig<Scalar>& cfg, int sign, RandomStream& rng) {
    crosspoint::stochastic_update(devices_, x, d, cfg, sign, noise_.sigma_c2c, rng);
  }

  /// Relaxes every device toward its symmetry point with n_pulses pulses of
  /// uniformly random direction, then copies the resulting conductances into
  /// the reference so all differential weights read as zero. Returns false
  /// (no convergence guarantee) if any device is symmetric. Devices iterate
  /// in column-major order, one direction draw per pulse.
  [[nodiscard]] bool zero_shift_init(long n_pulses, RandomStream& rng) {
    const bool ok = !(devices_.kappa().array() == Scalar(0)).any();
    const Scalar sigma_c2c = noise_.sigma_c2c;
    for (Eigen::Index j = 0; j < devices_.cols(); ++j) {
      for (Eigen::Index i = 0; i < devices_.rows(); ++i) {
        for (long p = 0; p < n_pulses; ++p) {
          const int dir = rng.rademacher();
          const Scalar f =
              static_cast<Scalar>(detail::c2c_factor(rng, static_cast<double>(sigma_c2c)));
          devices_.pulse_at(i, j, dir, f);
        }
      }
    }
    ref_ += devices_.rebase_to_zero();
    return ok;
  }

  /// Diagnostic exact read of the differential weights; training never uses
  /// this (the algorithms only see noisy analog products).
  const MatrixX<Scalar>& read_weights() const { return devices_.weight(); }

 private:
  DeviceArray<Scalar> devices_;
  MatrixX<Scalar> ref_;
  NoiseModel<Scalar> noise_;
};

}  // namespace crosspoint
