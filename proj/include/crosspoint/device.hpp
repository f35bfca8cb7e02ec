/*
 * (C) Copyright 2026 the crosspoint authors.
 * Licensed under the Apache License, Version 2.0; see
 * http://www.apache.org/licenses/LICENSE-2.0 for the full text.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "crosspoint/rng.hpp"

namespace crosspoint {

/// One crosspoint element in normalized weight units. The conductance w is
/// modulated by unit pulses whose magnitude depends linearly on the distance
/// from the symmetry point w_sym: an up pulse moves by
/// dw0*(1 - kappa*(w - w_sym)) and a down pulse by -dw0*(1 + kappa*(w - w_sym)).
/// At w = w_sym both directions have magnitude dw0; kappa = 0 is the ideal
/// symmetric device. Step magnitudes floor at zero past saturation, which
/// gives the soft-bounds behavior; w is additionally hard-clipped to
/// [w_min, w_max].
template <typename Scalar = double>
struct DeviceState {
  Scalar w{0};
  Scalar w_sym{0};
  Scalar dw0{static_cast<Scalar>(1e-3)};
  Scalar kappa{0};
  Scalar w_min{-1};
  Scalar w_max{1};

  bool valid() const {
    return dw0 > Scalar(0) && kappa >= Scalar(0) && kappa <= Scalar(1) &&
           w_min < w_sym && w_sym < w_max && w >= w_min && w <= w_max;
  }
};

/// Stochastic nonidealities of an array of devices. Device-to-device terms
/// are drawn once at construction; cycle-to-cycle noise multiplies every
/// pulse; read noise is additive per analog output element.
template <typename Scalar = double>
struct NoiseModel {
  Scalar sigma_d2d_dw0{0};   // relative spread of dw0
  Scalar sigma_d2d_wsym{0};  // absolute spread of w_sym
  Scalar sigma_c2c{0};       // relative spread per pulse, truncated at 3 sigma
  Scalar sigma_read{0};      // additive per output element

  bool valid() const {
    return sigma_d2d_dw0 >= Scalar(0) && sigma_d2d_wsym >= Scalar(0) &&
           sigma_c2c >= Scalar(0) && sigma_read >= Scalar(0);
  }
};

/// A pulse train with m + n increments and n decrements; m is the persistent
/// surplus. The persistence ratio m/(m+2n) measures how much directional
/// signal survives averaging.
struct PulseSequenceStats {
  long m{0};
  long n{0};

  double persistence_ratio() const {
    const long total = m + 2 * n;
    return total > 0 ? static_cast<double>(m) / static_cast<double>(total) : 0.0;
  }
};

namespace detail {

// Multiplicative cycle-to-cycle factor, truncated at +/-3 sigma so a noise
// draw can never invert the pulse direction (requires sigma < 1/3).
inline double c2c_factor(RandomStream& rng, double sigma) {
  if (sigma <= 0.0) return 1.0;
  const double g = std::clamp(rng.normal() * sigma, -3.0 * sigma, 3.0 * sigma);
  return 1.0 + g;
}

}  // namespace detail

/// Signed conductance change of a single pulse before clipping. direction is
/// +1 (increment) or -1 (decrement); factor carries cycle-to-cycle noise.
template <typename Scalar>
inline Scalar pulse_delta(Scalar w, Scalar w_sym, Scalar dw0, Scalar kappa,
                          int direction, Scalar factor = Scalar(1)) {
  const Scalar m = dw0 * std::max(Scalar(0), Scalar(1) - Scalar(direction) * kappa * (w - w_sym));
  return Scalar(direction) * m * factor;
}

/// Applies one pulse to a device, drawing cycle-to-cycle noise if requested.
template <typename Scalar>
inline DeviceState<Scalar> pulse(DeviceState<Scalar> s, int direction, RandomStream& rng,
                                 Scalar sigma_c2c = Scalar(0)) {
  const Scalar f = static_cast<Scalar>(detail::c2c_factor(rng, static_cast<double>(sigma_c2c)));
  s.w = std::clamp(s.w + pulse_delta(s.w, s.w_sym, s.dw0, s.kappa, direction, f), s.w_min, s.w_max);
  return s;
}

/// Mean signed displacement per pulse under equiprobable random directions:
/// -dw0*kappa*(w - w_sym). Zero exactly at the symmetry point, and the bridge
/// between the discrete pulse model and its continuum drift term.
template <typename Scalar>
inline Scalar asymmetry_drift(const DeviceState<Scalar>& s) {
  return -s.dw0 * s.kappa * (s.w - s.w_sym);
}

/// Draws one device realization from a template: dw0 gets a relative
/// device-to-device factor (floored at 5% of the template value), w_sym an
/// absolute shift clipped strictly inside the bounds.
template <typename Scalar>
inline DeviceState<Scalar> sample_device(const DeviceState<Scalar>& tmpl,
                                         const NoiseModel<Scalar>& noise, RandomStream& rng) {
  DeviceState<Scalar> s = tmpl;
  if (noise.sigma_d2d_dw0 > Scalar(0)) {
    const Scalar f = Scalar(1) + static_cast<Scalar>(rng.normal()) * noise.sigma_d2d_dw0;
    s.dw0 = std::max(tmpl.dw0 * Scalar(0.05), tmpl.dw0 * f);
  }
  if (noise.sigma_d2d_wsym > Scalar(0)) {
    const Scalar margin = (tmpl.w_max - tmpl.w_min) * Scalar(1e-6);
    s.w_sym = std::clamp(tmpl.w_sym + static_cast<Scalar>(rng.normal()) * noise.sigma_d2d_wsym,
                         tmpl.w_min + margin, tmpl.w_max - margin);
  }
  return s;
}

/// Applies a sequence of (m + n) up and n down pulses in uniformly random
/// order. With kappa = 0 the net displacement is exactly m*dw0; with kappa > 0
/// and long balanced sequences the device relaxes to the vicinity of w_sym.
template <typename Scalar>
inline DeviceState<Scalar> random_pulse_relaxation(DeviceState<Scalar> s,
                                                   const PulseSequenceStats& stats,
                                                   RandomStream& rng,
                                                   Scalar sigma_c2c = Scalar(0)) {
  long up = stats.m + stats.n;
  long down = stats.n;
  while (up + down > 0) {
    const double p_up = static_cast<double>(up) / static_cast<double>(up + down);
    int dir;
    if (rng.uniform01() < p_up) {
      dir = +1;
      --up;
    } else {
      dir = -1;
      --down;
    }
    s = pulse(s, dir, rng, sigma_c2c);
  }
  return s;
}

}  // namespace crosspoint
