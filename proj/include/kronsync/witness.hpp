#pragma once

#include "kronsync/dynamics.hpp"
#include "kronsync/spectral.hpp"

namespace kronsync {

/// Constructive disproof of synchronization: a periodic solution of the
/// coupled dynamics whose oscillators never agree. Built from a boundary
/// vector ybar with Gamma ybar = j*mu*ybar, ybar outside span{1}, a
/// frequency omega with (K - omega^2 M + mu B B^T) singular, and a mode
/// eta in that nullspace scaled to B^T eta = 1. The trajectory
/// x(t) = Re(e^{j omega t} ybar (x) eta) solves the network equations with
/// interior values g(t) = Re(e^{j omega t} gbar).
struct WitnessSolution {
  double mu = 0.0;     // imaginary part of the deciding eigenvalue
  double omega = 0.0;  // oscillation frequency of the witness
  ComplexVector ybar;  // q, unit norm
  ComplexVector gbar;  // p-q, lift of ybar
  ComplexVector ubar;  // q, steady inputs: -mu * ybar
  Vector eta;          // n, B^T eta = 1
  ComplexVector xbar;  // q*n, ybar (x) eta
  Vector x0, v0, g0;   // start state: Re xbar, -omega Im xbar, Re gbar
};

/// Preconditions: verdict comes from reduced.Gamma and says "does not
/// synchronize" (else VerdictIsSync). When the deciding eigenvalue sits at
/// the origin with multiplicity, ybar is taken from the nullspace of Gamma
/// deflated against the all-ones direction. Throws NoResonance or
/// EtaNotScalable when no visible mode exists at any admissible frequency
/// (cannot happen for valid definite oscillators; kept as guards).
WitnessSolution witness_nonsync(const BlockPartition& blocks,
                                const OscillatorModel& osc,
                                const ReducedCoupling& reduced,
                                const SpectralVerdict& verdict,
                                double rank_tol = 1e-10);

}  // namespace kronsync
