"""Truncated Fock-basis linear algebra for one or two bosonic modes.

Everything is a dense complex array over the number basis |0>..|n_max>
(per mode).  Truncation is the dominant numerical hazard, so state
constructors measure the probability weight they lose (the tail mass)
and refuse to proceed when it exceeds a caller-supplied budget.

Conventions used throughout:
    D(alpha) = exp(alpha a+ - conj(alpha) a)
    S(xi)    = exp((conj(xi) a^2 - xi a+^2) / 2),  xi = r e^{i phi}
    X_theta  = (a e^{-i theta} + a+ e^{i theta}) / 2
Entropies are in bits (log base 2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.special import eval_genlaguerre, gammaln

DEFAULT_TAIL_TOL = 1e-8

# eigenvalues below this are treated as exact zeros in entropies
ENTROPY_CLIP = 1e-14

_TWO_PI = 2.0 * math.pi

# aliases documenting intent in signatures; no behavior of their own
DisplacementParam = complex
QuadratureAngle = float


class TailMassError(ValueError):
    """Raised when a construction loses more probability to truncation than allowed."""

    def __init__(self, tail: float, tol: float, what: str):
        self.tail = float(tail)
        self.tol = float(tol)
        self.what = what
        super().__init__(
            f"truncation tail mass {tail:.3e} exceeds tolerance {tol:.3e} for {what}"
        )

    def __reduce__(self):
        # survives pickling through worker pools
        return (TailMassError, (self.tail, self.tol, self.what))


def wrap_angle(x: float) -> float:
    """Map an angle into [0, 2*pi)."""
    y = math.fmod(float(x), _TWO_PI)
    return y + _TWO_PI if y < 0.0 else y


@dataclass(frozen=True)
class FockCutoff:
    """Highest retained Fock level; basis dimension is n_max + 1 per mode."""

    n_max: int

    def __post_init__(self):
        if not isinstance(self.n_max, (int, np.integer)) or self.n_max < 0:
            raise ValueError(f"n_max must be a non-negative integer, got {self.n_max!r}")

    @property
    def dim(self) -> int:
        return self.n_max + 1

    def levels(self) -> np.ndarray:
        return np.arange(self.dim)


def heuristic_cutoff(b: float) -> int:
    """Cutoff rule n_max = ceil((b + 4*sqrt(b))^2) for disk-radius / amplitude scale b."""
    b = float(b)
    if b <= 0:
        raise ValueError("scale must be positive")
    return int(math.ceil((b + 4.0 * math.sqrt(b)) ** 2))


@dataclass(frozen=True)
class SqueezeParam:
    """Squeezing parameter xi = r e^{i phi} with r >= 0 and phi in [0, 2*pi)."""

    r: float
    phi: float = 0.0

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"squeezing magnitude must be >= 0, got {self.r}")
        object.__setattr__(self, "phi", wrap_angle(self.phi))

    @property
    def xi(self) -> complex:
        return self.r * np.exp(1j * self.phi)

    def half(self) -> "SqueezeParam":
        return SqueezeParam(self.r / 2.0, self.phi)


def _check_same_cutoff(a, b):
    if a.cutoff != b.cutoff:
        raise ValueError(f"cross-cutoff operation rejected: {a.cutoff} vs {b.cutoff}")


@dataclass
class PureState:
    """Normalized state vector in the truncated basis.

    ``tail_mass`` records the probability weight lost to truncation at
    construction time (before renormalization).  Treated as immutable;
    the amplitude buffer is write-locked.
    """

    amplitudes: np.ndarray
    cutoff: FockCutoff
    modes: int = 1
    tail_mass: float = 0.0

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex)
        expected = self.cutoff.dim ** self.modes
        if self.modes not in (1, 2):
            raise ValueError(f"modes must be 1 or 2, got {self.modes}")
        if amp.shape != (expected,):
            raise ValueError(f"amplitude vector must have shape ({expected},), got {amp.shape}")
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "PureState") -> complex:
        _check_same_cutoff(self, other)
        if self.modes != other.modes:
            raise ValueError("mode-count mismatch")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def density_operator(self) -> "DensityOperator":
        m = np.outer(self.amplitudes, self.amplitudes.conj())
        return DensityOperator(m, self.cutoff, self.modes, validate=False)


def _finish_state(raw: np.ndarray, cutoff: FockCutoff, tail_tol: float, what: str,
                  modes: int = 1) -> PureState:
    """Tail-check raw amplitudes, then normalize."""
    nrm2 = float(np.vdot(raw, raw).real)
    tail = max(0.0, 1.0 - nrm2)
    if tail > tail_tol:
        raise TailMassError(tail, tail_tol, what)
    return PureState(raw / math.sqrt(nrm2), cutoff, modes=modes, tail_mass=tail)


@dataclass
class DensityOperator:
    """Hermitian PSD matrix with recorded mass (trace; < 1 quantifies truncation loss)."""

    matrix: np.ndarray
    cutoff: FockCutoff
    modes: int = 1
    mass: float = field(default=0.0)

    HERMITICITY_TOL = 1e-12
    EIG_FLOOR = -1e-10

    def __init__(self, matrix, cutoff: FockCutoff, modes: int = 1, validate: bool = True):
        m = np.asarray(matrix, dtype=complex)
        d = cutoff.dim ** modes
        if m.shape != (d, d):
            raise ValueError(f"matrix must be {d}x{d} for this cutoff, got {m.shape}")
        if validate:
            herm = float(np.max(np.abs(m - m.conj().T)))
            if herm > self.HERMITICITY_TOL:
                raise ValueError(f"matrix not Hermitian: max |M - M+| = {herm:.3e}")
            lo = float(np.linalg.eigvalsh(m)[0])
            if lo < self.EIG_FLOOR:
                raise ValueError(f"matrix not positive semidefinite: min eigenvalue {lo:.3e}")
        tr = complex(np.trace(m))
        if abs(tr.imag) > 1e-10:
            raise ValueError(f"trace has imaginary part {tr.imag:.3e}")
        if tr.real > 1.0 + 1e-9 or tr.real <= 0.0:
            raise ValueError(f"trace {tr.real!r} outside (0, 1]")
        m = m.copy()
        m.setflags(write=False)
        self.matrix = m
        self.cutoff = cutoff
        self.modes = modes
        self.mass = tr.real


# ---------------------------------------------------------------------------
# ladder operators and elementary states


def annihilation(cutoff: FockCutoff) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, cutoff.dim, dtype=float)), 1).astype(complex)


def creation(cutoff: FockCutoff) -> np.ndarray:
    return annihilation(cutoff).conj().T


def vacuum(cutoff: FockCutoff, modes: int = 1) -> PureState:
    if modes not in (1, 2):
        raise ValueError(f"modes must be 1 or 2, got {modes}")
    amp = np.zeros(cutoff.dim ** modes, dtype=complex)
    amp[0] = 1.0
    return PureState(amp, cutoff, modes=modes, tail_mass=0.0)


def fock_state(n: int, cutoff: FockCutoff) -> PureState:
    if not 0 <= n <= cutoff.n_max:
        raise ValueError(f"level {n} outside cutoff {cutoff.n_max}")
    amp = np.zeros(cutoff.dim, dtype=complex)
    amp[n] = 1.0
    return PureState(amp, cutoff, tail_mass=0.0)


def coherent_amplitudes(alpha: complex, cutoff: FockCutoff) -> np.ndarray:
    """Exact amplitudes e^{-|a|^2/2} a^n / sqrt(n!), truncated (not renormalized)."""
    n = cutoff.levels()
    if alpha == 0:
        amp = np.zeros(cutoff.dim, dtype=complex)
        amp[0] = 1.0
        return amp
    # log-space magnitudes keep large |alpha| from overflowing the factorial ratio
    logmag = n * math.log(abs(alpha)) - 0.5 * gammaln(n + 1) - abs(alpha) ** 2 / 2.0
    return np.exp(logmag) * np.exp(1j * n * np.angle(alpha))


def coherent_state(alpha: complex, cutoff: FockCutoff,
                   tail_tol: float = DEFAULT_TAIL_TOL) -> PureState:
    raw = coherent_amplitudes(alpha, cutoff)
    return _finish_state(raw, cutoff, tail_tol, f"coherent state alpha={alpha}")


# ---------------------------------------------------------------------------
# displacement and squeezing


def displacement_operator(alpha: complex, cutoff: FockCutoff,
                          method: str = "laguerre") -> np.ndarray:
    """Matrix of D(alpha) in the truncated basis.

    ``laguerre`` fills the analytic elements
        <m|D|n> = sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2)
    for m >= n (the m < n triangle follows from D(alpha)+ = D(-alpha)).
    ``exponential`` exponentiates the truncated generator and is kept as a
    cross-check; the two agree on the interior of the basis.
    """
    if method == "exponential":
        a = annihilation(cutoff)
        return expm(alpha * a.conj().T - np.conj(alpha) * a)
    if method != "laguerre":
        raise ValueError(f"unknown method {method!r}")
    if alpha == 0:
        return np.eye(cutoff.dim, dtype=complex)
    m = cutoff.levels()[:, None]
    n = cutoff.levels()[None, :]
    lo = np.minimum(m, n)
    k = np.abs(m - n)
    x = abs(alpha) ** 2
    base = np.exp(0.5 * (gammaln(lo + 1) - gammaln(lo + k + 1)) - x / 2.0)
    lag = eval_genlaguerre(lo, k, x)
    power = np.where(m >= n, alpha ** (m - n + 0j), (-np.conj(alpha)) ** (n - m + 0j))
    return base * lag * power


def squeeze_operator(xi: SqueezeParam, cutoff: FockCutoff) -> np.ndarray:
    """Matrix exponential of the quadratic generator (exactly anti-Hermitian, so unitary)."""
    a = annihilation(cutoff)
    adag = a.conj().T
    z = xi.xi
    return expm((np.conj(z) * (a @ a) - z * (adag @ adag)) / 2.0)


def squeezed_vacuum_amplitudes(xi: SqueezeParam, cutoff: FockCutoff) -> np.ndarray:
    """Analytic series: c_{2n} = (1/sqrt(cosh r)) sqrt((2n)!)/(2^n n!) (-e^{i phi} tanh r)^n.

    Built by the stable term ratio; serves as the oracle for squeeze_operator's
    vacuum column.
    """
    c = np.zeros(cutoff.dim, dtype=complex)
    c[0] = 1.0 / math.sqrt(math.cosh(xi.r))
    t = -np.exp(1j * xi.phi) * math.tanh(xi.r)
    for n in range(0, (cutoff.dim - 1) // 2):
        c[2 * n + 2] = c[2 * n] * t * math.sqrt((2 * n + 1) * (2 * n + 2)) / (2 * (n + 1))
    return c


def squeezed_vacuum_state(xi: SqueezeParam, cutoff: FockCutoff,
                          tail_tol: float = DEFAULT_TAIL_TOL) -> PureState:
    raw = squeezed_vacuum_amplitudes(xi, cutoff)
    return _finish_state(raw, cutoff, tail_tol, f"squeezed vacuum r={xi.r}, phi={xi.phi}")


def squeezed_coherent_state(xi: SqueezeParam, alpha: complex, cutoff: FockCutoff,
                            tail_tol: float = DEFAULT_TAIL_TOL) -> PureState:
    """S(xi) D(alpha) |0>, built operationally."""
    raw = squeeze_operator(xi, cutoff) @ coherent_amplitudes(alpha, cutoff)
    return _finish_state(raw, cutoff, tail_tol,
                         f"squeezed coherent r={xi.r}, phi={xi.phi}, alpha={alpha}")


def squeezed_coherent_closed_form(xi: SqueezeParam, alpha: complex,
                                  cutoff: FockCutoff) -> np.ndarray:
    """Closed-form amplitudes of S(xi) D(alpha) |0> via complex-argument Hermite polynomials.

        <m| . > = (nu/(2 cosh r))^{m/2} / sqrt(cosh r * m!)
                  * exp[-(|alpha|^2 - conj(nu) alpha^2 / cosh r)/2]
                  * H_m(alpha / sqrt(2 nu cosh r)),      nu = e^{i phi} sinh r.

    The H_m branch ambiguity cancels against (nu)^{m/2} since H_m(-x) = (-1)^m H_m(x).
    Used as the independent oracle for the operational construction.
    """
    if xi.r == 0.0:
        return coherent_amplitudes(alpha, cutoff)
    nu = np.exp(1j * xi.phi) * math.sinh(xi.r)
    ch = math.cosh(xi.r)
    pref = np.exp(-0.5 * (abs(alpha) ** 2 - np.conj(nu) * alpha ** 2 / ch))
    x = alpha / np.sqrt(2.0 * nu * ch)
    d = cutoff.dim
    herm = np.zeros(d, dtype=complex)
    herm[0] = 1.0
    if d > 1:
        herm[1] = 2.0 * x
    for m in range(1, d - 1):
        herm[m + 1] = 2.0 * x * herm[m] - 2.0 * m * herm[m - 1]
    m = cutoff.levels()
    scale = (nu / (2.0 * ch)) ** (m / 2.0) / math.sqrt(ch) * np.exp(-0.5 * gammaln(m + 1))
    return scale * pref * herm


# ---------------------------------------------------------------------------
# two-mode machinery

# Mode ordering: amplitude index i*dim + j means |i>_0 (x) |j>_1.


def tensor(a: PureState, b: PureState) -> PureState:
    _check_same_cutoff(a, b)
    if a.modes != 1 or b.modes != 1:
        raise ValueError("tensor expects two single-mode states")
    amp = np.kron(a.amplitudes, b.amplitudes)
    tail = a.tail_mass + b.tail_mass
    return PureState(amp, a.cutoff, modes=2, tail_mass=tail)


class TwoModeUnitary:
    """Two-mode unitary stored block-diagonally over a conserved index.

    ``key`` maps a basis pair (i, j) to its conserved block label (i+j for
    photon-number-conserving generators, i-j for pair creation/annihilation).
    Each block is exactly unitary, so the whole operator is; dense
    materialization is only for small cutoffs.
    """

    def __init__(self, cutoff: FockCutoff, blocks, conserved: str):
        self.cutoff = cutoff
        self.blocks = blocks  # label -> (i-index array, block matrix)
        self.conserved = conserved

    def apply(self, state: PureState) -> PureState:
        if state.modes != 2 or state.cutoff != self.cutoff:
            raise ValueError("expects a two-mode state at the same cutoff")
        d = self.cutoff.dim
        psi = state.amplitudes.reshape(d, d)
        out = np.zeros_like(psi)
        for _, (idx, blk) in self.blocks.items():
            jdx = self._partner(idx, _)
            out[idx, jdx] = blk @ psi[idx, jdx]
        return PureState(out.reshape(-1), self.cutoff, modes=2,
                         tail_mass=state.tail_mass)

    def _partner(self, idx, label):
        return label - idx if self.conserved == "sum" else idx - label

    def inverse(self) -> "TwoModeUnitary":
        inv = {lab: (idx, blk.conj().T) for lab, (idx, blk) in self.blocks.items()}
        return TwoModeUnitary(self.cutoff, inv, self.conserved)

    def dense(self) -> np.ndarray:
        """Full (dim^2 x dim^2) matrix. O(dim^4) memory; intended for small cutoffs."""
        d = self.cutoff.dim
        out = np.zeros((d * d, d * d), dtype=complex)
        for lab, (idx, blk) in self.blocks.items():
            jdx = self._partner(idx, lab)
            rows = idx * d + jdx
            out[np.ix_(rows, rows)] = blk
        return out


@lru_cache(maxsize=16)
def beam_splitter(theta: float, cutoff: FockCutoff) -> TwoModeUnitary:
    """exp[theta (a0 a1+ - a0+ a1)]; mode-0 annihilation maps to a0 cos + a1 sin.

    Conserves total photon number, so it is exponentiated block-by-block
    (each block exactly unitary).  Cached; treat the result as read-only.
    """
    d = cutoff.dim
    blocks = {}
    for s in range(2 * d - 1):
        lo, hi = max(0, s - (d - 1)), min(s, d - 1)
        idx = np.arange(lo, hi + 1)
        gen = np.zeros((len(idx), len(idx)))
        for a_, i in enumerate(idx):
            j = s - i
            if i - 1 >= lo:
                gen[a_ - 1, a_] += math.sqrt(i) * math.sqrt(j + 1)  # a0 a1+
            if i + 1 <= hi:
                gen[a_ + 1, a_] -= math.sqrt(i + 1) * math.sqrt(j)  # -a0+ a1
        blocks[s] = (idx, expm(theta * gen).astype(complex))
    return TwoModeUnitary(cutoff, blocks, "sum")


def beam_splitter_5050(cutoff: FockCutoff) -> TwoModeUnitary:
    """50:50 mixer: |alpha> (x) |0>  ->  |alpha/sqrt2> (x) |alpha/sqrt2>."""
    return beam_splitter(math.pi / 4.0, cutoff)


@lru_cache(maxsize=16)
def two_mode_squeezer(zeta: SqueezeParam, cutoff: FockCutoff) -> TwoModeUnitary:
    """exp[conj(z) a0 a1 - z a0+ a1+]; conserves the photon-number difference.

    Cached; treat the result as read-only.
    """
    d = cutoff.dim
    z = zeta.xi
    blocks = {}
    for diff in range(-(d - 1), d):
        idx = np.arange(diff, d) if diff >= 0 else np.arange(0, d + diff)
        gen = np.zeros((len(idx), len(idx)), dtype=complex)
        for a_, i in enumerate(idx):
            j = i - diff
            if a_ - 1 >= 0:
                gen[a_ - 1, a_] += np.conj(z) * math.sqrt(i) * math.sqrt(j)
            if a_ + 1 < len(idx):
                gen[a_ + 1, a_] -= z * math.sqrt(i + 1) * math.sqrt(j + 1)
        blocks[diff] = (idx, expm(gen))
    return TwoModeUnitary(cutoff, blocks, "difference")


def apply_mode_operator(op: np.ndarray, state: PureState, mode: int) -> PureState:
    """Apply a single-mode operator to one mode of a two-mode state."""
    if state.modes != 2:
        raise ValueError("expects a two-mode state")
    d = state.cutoff.dim
    if op.shape != (d, d):
        raise ValueError("operator dimension does not match the cutoff")
    psi = state.amplitudes.reshape(d, d)
    out = op @ psi if mode == 0 else psi @ op.T
    return PureState(out.reshape(-1), state.cutoff, modes=2, tail_mass=state.tail_mass)


def schmidt_coefficients(state: PureState) -> np.ndarray:
    """Singular values of the mode-0/mode-1 split of a two-mode pure state."""
    if state.modes != 2:
        raise ValueError("expects a two-mode state")
    d = state.cutoff.dim
    return np.linalg.svd(state.amplitudes.reshape(d, d), compute_uv=False)


def entanglement_entropy(state: PureState) -> float:
    """Entropy (bits) of either reduced state of a two-mode pure state."""
    w = schmidt_coefficients(state) ** 2
    w = w[w > ENTROPY_CLIP]
    return float(-(w * np.log2(w)).sum() + 0.0)  # +0.0 folds -0.0 into 0.0


# ---------------------------------------------------------------------------
# metrics


def _as_matrix(x) -> np.ndarray:
    return x.matrix if isinstance(x, DensityOperator) else np.asarray(x, dtype=complex)


def hs_distance(rho1, rho2) -> float:
    """sqrt(tr (rho1 - rho2)^2); equals the Frobenius norm for Hermitian arguments.

    Orthogonal pure states are at distance sqrt(2).
    """
    m1, m2 = _as_matrix(rho1), _as_matrix(rho2)
    if m1.shape != m2.shape:
        raise ValueError(f"dimension mismatch: {m1.shape} vs {m2.shape}")
    if isinstance(rho1, DensityOperator) and isinstance(rho2, DensityOperator):
        _check_same_cutoff(rho1, rho2)
    return float(np.linalg.norm(m1 - m2))


def fidelity(a, b) -> float:
    """Uhlmann fidelity; cheap paths for pure arguments."""
    if isinstance(a, PureState) and isinstance(b, PureState):
        return float(abs(a.overlap(b)) ** 2)
    if isinstance(b, PureState):
        a, b = b, a
    if isinstance(a, PureState):
        v = a.amplitudes
        return float((v.conj() @ _as_matrix(b) @ v).real)
    m1, m2 = _as_matrix(a), _as_matrix(b)
    w, v = np.linalg.eigh(m1)
    w = np.clip(w, 0.0, None)
    sq = (v * np.sqrt(w)) @ v.conj().T
    inner = sq @ m2 @ sq
    ev = np.clip(np.linalg.eigvalsh(inner), 0.0, None)
    return float(np.sqrt(ev).sum() ** 2)


def von_neumann_entropy(rho) -> float:
    """-tr rho log2 rho with eigenvalues below the clip treated as exact zeros."""
    w = np.linalg.eigvalsh(_as_matrix(rho))
    w = w[w > ENTROPY_CLIP]
    return float(-(w * np.log2(w)).sum() + 0.0)


def purity(rho) -> float:
    m = _as_matrix(rho)
    return float(np.linalg.norm(m) ** 2)  # tr rho^2 for Hermitian rho


def partial_trace(rho: DensityOperator, mode: int) -> DensityOperator:
    """Reduced state of mode ``mode`` (0 or 1) of a two-mode density operator."""
    if rho.modes != 2:
        raise ValueError("partial trace expects a two-mode density operator")
    if mode not in (0, 1):
        raise ValueError("mode must be 0 or 1")
    d = rho.cutoff.dim
    m = rho.matrix.reshape(d, d, d, d)  # [i, j, i', j']
    red = np.trace(m, axis1=1, axis2=3) if mode == 0 else np.trace(m, axis1=0, axis2=2)
    return DensityOperator(red, rho.cutoff, modes=1, validate=False)


def mode_moments(state: PureState):
    """(<a>, <a^2>, <a+ a>) of a single-mode pure state, from amplitude shifts."""
    if state.modes != 1:
        raise ValueError("expects a single-mode state")
    c = state.amplitudes
    n = np.arange(c.shape[0], dtype=float)
    ea = complex(np.sum(np.conj(c[:-1]) * np.sqrt(n[1:]) * c[1:]))
    ea2 = complex(np.sum(np.conj(c[:-2]) * np.sqrt((n[:-2] + 1) * (n[:-2] + 2)) * c[2:]))
    en = float(np.sum(n * np.abs(c) ** 2))
    return ea, ea2, en


def quadrature_variance(state: PureState, theta: float,
                        tail_tol: float = 1e-6) -> float:
    """Var X_theta from <a>, <a^2>, <a+ a>; vacuum gives 1/4."""
    if state.tail_mass > tail_tol:
        raise TailMassError(state.tail_mass, tail_tol, "quadrature variance input")
    ea, ea2, en = mode_moments(state)
    ex = (ea * np.exp(-1j * theta)).real
    ex2 = (2.0 * (ea2 * np.exp(-2j * theta)).real + 2.0 * en + 1.0) / 4.0
    return float(ex2 - ex * ex)
