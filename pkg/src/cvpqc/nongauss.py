"""Even coherent states and how well they mimic weakly squeezed vacua.

Covers the small-parameter overlap between the two families, the
first-order truncation of the squeezer, quadrature-variance closed forms,
and the realization of a displacement by mixing with a strong coherent
ancilla on a highly reflective beam splitter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fock import (
    DEFAULT_TAIL_TOL,
    DensityOperator,
    FockCutoff,
    PureState,
    SqueezeParam,
    TailMassError,
    annihilation,
    beam_splitter,
    coherent_amplitudes,
    displacement_operator,
    quadrature_variance,
    squeeze_operator,
    squeezed_vacuum_state,
    tensor,
    wrap_angle,
)


@dataclass(frozen=True)
class EvenCoherentParam:
    """Amplitude of the symmetric superposition: beta = beta_mag e^{i varphi}."""

    beta_mag: float
    varphi: float = 0.0

    def __post_init__(self):
        if self.beta_mag < 0:
            raise ValueError(f"amplitude magnitude must be >= 0, got {self.beta_mag}")
        object.__setattr__(self, "varphi", wrap_angle(self.varphi))

    @property
    def beta(self) -> complex:
        return self.beta_mag * np.exp(1j * self.varphi)


@dataclass(frozen=True)
class BeamSplitterRealization:
    """Mixing with a coherent ancilla: transmission T for the ancilla arm.

    The signal survives with amplitude sqrt(1-T), so small T means a nearly
    transparent pass for the signal; the ancilla contributes the effective
    displacement sqrt(T) * gamma.
    """

    transmission: float
    ancilla_amp: complex

    def __post_init__(self):
        if not 0.0 < self.transmission <= 1.0:
            raise ValueError(f"transmission must lie in (0, 1], got {self.transmission}")

    @property
    def effective_displacement(self) -> complex:
        return math.sqrt(self.transmission) * complex(self.ancilla_amp)


def even_coherent_state(param: EvenCoherentParam, cutoff: FockCutoff,
                        tail_tol: float = DEFAULT_TAIL_TOL) -> PureState:
    """(|beta> + |-beta>) / sqrt(2 (1 + e^{-2|beta|^2})); odd levels exactly zero."""
    b2 = param.beta_mag ** 2
    raw = coherent_amplitudes(param.beta, cutoff).copy()
    raw[1::2] = 0.0  # enforce parity exactly instead of relying on cancellation
    raw[0::2] *= 2.0
    raw /= math.sqrt(2.0 * (1.0 + math.exp(-2.0 * b2)))
    nrm2 = float(np.vdot(raw, raw).real)
    tail = max(0.0, 1.0 - nrm2)
    if tail > tail_tol:
        raise TailMassError(tail, tail_tol, f"even coherent state |beta|={param.beta_mag}")
    return PureState(raw / math.sqrt(nrm2), cutoff, tail_mass=tail)


def matching_varphi(phi_xi: float):
    """The two amplitude arguments that align an even coherent state with a
    squeezed vacuum of argument phi_xi: (phi_xi +/- pi) / 2."""
    return wrap_angle((phi_xi + math.pi) / 2.0), wrap_angle((phi_xi - math.pi) / 2.0)


def overlap_even_vs_squeezed(param: EvenCoherentParam, xi: SqueezeParam,
                             cutoff: FockCutoff,
                             tail_tol: float = DEFAULT_TAIL_TOL):
    """(exact, approx) squared overlap between the even coherent state and the
    squeezed vacuum.

    ``exact`` sums the truncated Fock series; ``approx`` is the first-order
    small-parameter form 1 - |beta|^2 r cos(2 varphi - phi).  The two agree
    to the neglected O(r^2, |beta|^4) terms near the matching angles.
    """
    ec = even_coherent_state(param, cutoff, tail_tol)
    sv = squeezed_vacuum_state(xi, cutoff, tail_tol)
    exact = float(abs(np.vdot(ec.amplitudes, sv.amplitudes)) ** 2)
    approx = 1.0 - param.beta_mag ** 2 * xi.r * math.cos(2.0 * param.varphi - xi.phi)
    return exact, approx


def truncated_squeeze_operator(xi: SqueezeParam, cutoff: FockCutoff) -> np.ndarray:
    """First-order squeezer: 1 + (conj(xi)/2) a^2 - (xi/2) a+^2."""
    a = annihilation(cutoff)
    z = xi.xi
    eye = np.eye(cutoff.dim, dtype=complex)
    return eye + (np.conj(z) / 2.0) * (a @ a) - (z / 2.0) * (a.conj().T @ a.conj().T)


def truncated_squeeze_check(xi: SqueezeParam, cutoff: FockCutoff) -> float:
    """Norm of (full squeezer - first-order squeezer) on the low Fock block.

    Restricted to levels n <= n_max/3 so the comparison is free of
    truncation-boundary artifacts; the value scales as O(r^2).
    """
    full = squeeze_operator(xi, cutoff)
    trunc = truncated_squeeze_operator(xi, cutoff)
    lo = cutoff.n_max // 3 + 1
    return float(np.linalg.norm(full[:lo, :lo] - trunc[:lo, :lo]))


# ---------------------------------------------------------------------------
# quadrature-variance closed forms


def squeezed_vacuum_variance(xi: SqueezeParam, theta: float) -> float:
    """(1/4)[cosh 2r - sinh 2r cos(2 theta - phi)], exact at every angle."""
    return 0.25 * (math.cosh(2.0 * xi.r)
                   - math.sinh(2.0 * xi.r) * math.cos(2.0 * theta - xi.phi))


def squeezed_vacuum_variance_approx(xi: SqueezeParam, theta: float) -> float:
    """First order in r: (1/4)[1 - 2r cos(2 theta - phi)]; extremes (1 -+ 2r)/4."""
    return 0.25 * (1.0 - 2.0 * xi.r * math.cos(2.0 * theta - xi.phi))


def even_variance_closed_form(param: EvenCoherentParam, theta) -> np.ndarray:
    """(1/4)[1 + 2|b|^2 cos(2 theta - 2 varphi) + 2|b|^2 tanh(|b|^2)] per theta."""
    t = np.asarray(theta, dtype=float)
    b2 = param.beta_mag ** 2
    return 0.25 * (1.0 + 2.0 * b2 * np.cos(2.0 * t - 2.0 * param.varphi)
                   + 2.0 * b2 * math.tanh(b2))


def even_variance_approx(param: EvenCoherentParam, theta) -> np.ndarray:
    """Small-amplitude form (1/4)[1 + 2|b|^2 cos(2 theta - 2 varphi)]; extremes (1 +- 2|b|^2)/4."""
    t = np.asarray(theta, dtype=float)
    b2 = param.beta_mag ** 2
    return 0.25 * (1.0 + 2.0 * b2 * np.cos(2.0 * t - 2.0 * param.varphi))


def quadrature_variance_even(param: EvenCoherentParam, cutoff: FockCutoff, thetas,
                             tail_tol: float = DEFAULT_TAIL_TOL):
    """(exact, closed_form) variance of the even coherent state, per angle."""
    state = even_coherent_state(param, cutoff, tail_tol)
    t = np.atleast_1d(np.asarray(thetas, dtype=float))
    exact = np.array([quadrature_variance(state, th) for th in t])
    closed = even_variance_closed_form(param, t)
    if np.isscalar(thetas) or np.asarray(thetas).ndim == 0:
        return float(exact[0]), float(closed.reshape(-1)[0])
    return exact, closed


# ---------------------------------------------------------------------------
# displacement from a strong ancilla


def displacement_via_beamsplitter(realization: BeamSplitterRealization,
                                  input_state: PureState, cutoff: FockCutoff,
                                  tail_tol: float = DEFAULT_TAIL_TOL):
    """Mix the input with the coherent ancilla and keep the signal arm.

    Returns (signal-arm reduced state, fidelity against the ideally displaced
    input).  With the effective displacement held fixed, the fidelity climbs
    toward 1 as the transmission shrinks, because the signal amplitude
    sqrt(1-T) approaches unity.
    """
    if input_state.modes != 1 or input_state.cutoff != cutoff:
        raise ValueError("input must be a single-mode state at the given cutoff")
    T = realization.transmission
    gamma = complex(realization.ancilla_amp)

    anc_raw = coherent_amplitudes(gamma, cutoff)
    anc_tail = max(0.0, 1.0 - float(np.vdot(anc_raw, anc_raw).real))
    if anc_tail > tail_tol:
        raise TailMassError(anc_tail, tail_tol,
                            f"ancilla gamma={gamma} at T={T} (raise the cutoff)")
    ancilla = PureState(anc_raw / math.sqrt(1.0 - anc_tail), cutoff, tail_mass=anc_tail)

    both = tensor(input_state, ancilla)
    # signal arm picks up sqrt(1-T) of itself and sqrt(T) of the ancilla
    mixed = beam_splitter(-math.asin(math.sqrt(T)), cutoff).apply(both)

    d = cutoff.dim
    psi = mixed.amplitudes.reshape(d, d)
    rho = psi @ psi.conj().T
    signal = DensityOperator(rho, cutoff, validate=False)

    ideal = displacement_operator(realization.effective_displacement, cutoff) \
        @ input_state.amplitudes
    ideal = ideal / np.linalg.norm(ideal)
    fid = float((ideal.conj() @ rho @ ideal).real / np.trace(rho).real)
    return signal, fid
