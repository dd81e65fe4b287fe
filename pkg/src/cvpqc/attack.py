"""Passive eavesdropping on one channel branch with a 50:50 beam splitter.

The tap sends half of the signal to an eavesdropper arm.  For a coherent
input the two output arms are an unentangled product, so the tap leaves
no correlation trace; squeezing the input changes that, and the reduced
states of both arms become mixed.  Everything here works on the pure
two-mode output, so reduced-state entropy is an exact entanglement
measure rather than a proxy bound.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fock import (
    DEFAULT_TAIL_TOL,
    FockCutoff,
    PureState,
    SqueezeParam,
    apply_mode_operator,
    beam_splitter_5050,
    coherent_amplitudes,
    squeeze_operator,
    squeezed_coherent_state,
    tensor,
    two_mode_squeezer,
    vacuum,
    von_neumann_entropy,
)

_SQRT2 = np.sqrt(2.0)


@dataclass(frozen=True)
class AttackReport:
    """Tap outcome for one input.

    ``entanglement_proxy`` is the von Neumann entropy (bits) of the
    receiver's reduced state; the global two-mode output is pure, so this
    is the exact entanglement entropy between the two arms (preferred here
    over negativity-style measures, which add nothing for pure states).
    ``bob_fidelity_vs_expected`` compares the receiver arm against the
    undisturbed local target: the input with its amplitude and squeezing
    both cut in half by the tap.
    """

    input_kind: str  # "coherent" or "squeezed_coherent"
    alpha: complex
    xi: SqueezeParam
    bob_reduced_purity: float
    eve_reduced_purity: float
    bob_fidelity_vs_expected: float
    entanglement_proxy: float
    tail_mass: float


def _tap_output(alpha: complex, xi: SqueezeParam, cutoff: FockCutoff,
                tail_tol: float) -> PureState:
    signal = squeezed_coherent_state(xi, alpha, cutoff, tail_tol=tail_tol)
    both = tensor(signal, vacuum(cutoff))
    return beam_splitter_5050(cutoff).apply(both)


def attack(alpha: complex, xi: SqueezeParam, cutoff: FockCutoff,
           tail_tol: float = DEFAULT_TAIL_TOL) -> AttackReport:
    """Send squeeze(displace(|0>)) through the 50:50 tap and report both arms."""
    out = _tap_output(alpha, xi, cutoff, tail_tol)
    d = cutoff.dim
    psi = out.amplitudes.reshape(d, d)  # [receiver, eavesdropper]
    rho_b = psi @ psi.conj().T
    rho_e = psi.T @ psi.conj()

    expected = squeezed_coherent_state(xi.half(), alpha / _SQRT2, cutoff,
                                       tail_tol=tail_tol)
    v = expected.amplitudes
    fid = float((v.conj() @ rho_b @ v).real)

    return AttackReport(
        input_kind="coherent" if xi.r == 0.0 else "squeezed_coherent",
        alpha=complex(alpha),
        xi=xi,
        bob_reduced_purity=float(np.linalg.norm(rho_b) ** 2),
        eve_reduced_purity=float(np.linalg.norm(rho_e) ** 2),
        bob_fidelity_vs_expected=fid,
        entanglement_proxy=von_neumann_entropy(rho_b),
        tail_mass=out.tail_mass,
    )


@dataclass(frozen=True)
class DecompositionReport:
    """Fit of the factorized tap model against direct simulation.

    The model: local squeezers at half strength on both arms, a two-mode
    squeezer at half strength across them, and equal displacements on both
    arms.  Two displacement conventions are scored, amplitude/2 and
    amplitude/sqrt(2); ``best`` is the larger fidelity.
    """

    alpha: complex
    xi: SqueezeParam
    fidelity_half: float
    fidelity_sqrt2: float

    @property
    def best(self) -> float:
        return max(self.fidelity_half, self.fidelity_sqrt2)

    def __float__(self) -> float:
        return self.best


def _factorized_model(alpha_each: complex, xi: SqueezeParam,
                      cutoff: FockCutoff) -> PureState:
    """Local-squeeze(half) x2 . two-mode-squeeze(half) . displace(each arm)."""
    half = xi.half()
    c = coherent_amplitudes(alpha_each, cutoff)
    both = PureState(np.kron(c, c), cutoff, modes=2,
                     tail_mass=max(0.0, 1.0 - float(np.vdot(c, c).real ** 2)))
    state = two_mode_squeezer(half, cutoff).apply(both)
    s = squeeze_operator(half, cutoff)
    state = apply_mode_operator(s, state, 0)
    return apply_mode_operator(s, state, 1)


def verify_decomposition(alpha: complex, xi: SqueezeParam, cutoff: FockCutoff,
                         tail_tol: float = DEFAULT_TAIL_TOL) -> DecompositionReport:
    """Score the factorized tap model under both displacement conventions."""
    lhs = _tap_output(alpha, xi, cutoff, tail_tol)

    def score(amp_each: complex) -> float:
        rhs = _factorized_model(amp_each, xi, cutoff)
        num = abs(np.vdot(lhs.amplitudes, rhs.amplitudes)) ** 2
        den = float(np.vdot(rhs.amplitudes, rhs.amplitudes).real)
        return float(num / den) if den > 0 else 0.0

    return DecompositionReport(
        alpha=complex(alpha), xi=xi,
        fidelity_half=score(alpha / 2.0),
        fidelity_sqrt2=score(alpha / _SQRT2),
    )
