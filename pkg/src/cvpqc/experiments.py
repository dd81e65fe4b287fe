"""Experiment drivers: turn a config into (columns, rows).

Each experiment is a planner that expands the config grids into task
tuples plus a compute function mapping one task to its output rows.
Tasks and rows hold only plain scalars so they cross process boundaries,
and tasks are generated in a fixed grid order, so output is deterministic
for a given config regardless of worker count.
"""
from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

# the package re-exports the attack() function under the submodule's name,
# so bind the function directly instead of going through the package attribute
from .attack import attack as tap_attack
from . import channel, nongauss
from .fock import (FockCutoff, SqueezeParam, quadrature_variance,
                   squeezed_vacuum_state, vacuum)
from .config import ExperimentConfig, resolve_cutoff


@dataclass(frozen=True)
class Experiment:
    name: str
    columns: tuple
    plan: callable
    compute: callable


# --- mmstate ---------------------------------------------------------------


def _plan_mmstate(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    return [(b, n_max, cfg.tail_tol) for b in cfg.b_list]


def _compute_mmstate(task):
    b, n_max, tail_tol = task
    mm = channel.maximally_mixed(b, FockCutoff(n_max), tail_tol)
    diag = mm.matrix.diagonal().real
    return [(b, n_max, tail_tol, n, float(diag[n]), mm.mass)
            for n in range(n_max + 1)]


# --- conformation (ring geometry / angular weights) -------------------------


def _plan_conformation(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    p_sel = tuple(cfg.p_list) if cfg.p_list is not None else None
    return [(N, b, r, phi, n_max, p_sel)
            for N in cfg.N_list for b in cfg.b_list
            for r in cfg.r_list for phi in cfg.phi_list]


def _compute_conformation(task):
    N, b, r, phi, n_max, p_sel = task
    xi = SqueezeParam(r, phi)
    rows = []
    for p in (p_sel if p_sel is not None else range(1, N + 1)):
        if p > N:
            continue
        spec = channel.ConformationSpec(N, b, p)
        for q, theta in enumerate(spec.angles(), start=1):
            alpha = spec.radius * complex(math.cos(theta), math.sin(theta))
            rows.append((N, b, r, phi, n_max, p, q, spec.radius, float(theta),
                         channel.k_factor(xi, float(theta)),
                         channel.vacuum_weight(xi, alpha)))
    return rows


# --- convergence sweeps ------------------------------------------------------


def _plan_convergence(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    return [(N, b, 0.0, 0.0, n_max, cfg.tail_tol)
            for b in cfg.b_list for N in cfg.N_list]


def _plan_squeezed_convergence(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    return [(N, b, r, phi, n_max, cfg.tail_tol)
            for b in cfg.b_list for r in cfg.r_list
            for phi in cfg.phi_list for N in cfg.N_list]


def _compute_convergence(task):
    N, b, r, phi, n_max, tail_tol = task
    row = channel.convergence_sweep([N], b, SqueezeParam(r, phi),
                                    FockCutoff(n_max), tail_tol)[0]
    return [(row.N, row.b, row.r, row.phi, row.cutoff, row.d_hs,
             row.d_hs_times_Np1, row.triangle_bound, row.entropy)]


# --- beam-splitter tap -------------------------------------------------------


def _plan_attack(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    return [(a, r, phi, n_max, cfg.tail_tol)
            for a in cfg.alpha_list for r in cfg.r_list for phi in cfg.phi_list]


def _compute_attack(task):
    a, r, phi, n_max, tail_tol = task
    rep = tap_attack(complex(a), SqueezeParam(r, phi),
                     FockCutoff(n_max), tail_tol)
    return [(rep.input_kind, rep.alpha.real, rep.alpha.imag, r, phi, n_max,
             rep.bob_reduced_purity, rep.eve_reduced_purity,
             rep.entanglement_proxy, rep.bob_fidelity_vs_expected)]


# --- even-coherent vs squeezed-vacuum overlap --------------------------------


def _plan_overlap(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    return [(r, phi, bm, vp, n_max, cfg.tail_tol)
            for r in cfg.r_list for phi in cfg.phi_list
            for bm in cfg.beta_mag_list for vp in cfg.varphi_list]


def _compute_overlap(task):
    r, phi, bm, vp, n_max, tail_tol = task
    exact, approx = nongauss.overlap_even_vs_squeezed(
        nongauss.EvenCoherentParam(bm, vp), SqueezeParam(r, phi),
        FockCutoff(n_max), tail_tol)
    return [(r, phi, bm, vp, n_max, exact, approx, abs(exact - approx))]


# --- quadrature variances ----------------------------------------------------


def _plan_variance(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    sv = [("squeezed_vacuum", r, phi, 0.0, 0.0, th, n_max, cfg.tail_tol)
          for r in cfg.r_list for phi in cfg.phi_list for th in cfg.theta_list]
    ec = [("even_coherent", 0.0, 0.0, bm, vp, th, n_max, cfg.tail_tol)
          for bm in cfg.beta_mag_list for vp in cfg.varphi_list
          for th in cfg.theta_list]
    return sv + ec


def _compute_variance(task):
    kind, r, phi, bm, vp, theta, n_max, tail_tol = task
    cut = FockCutoff(n_max)
    if kind == "squeezed_vacuum":
        xi = SqueezeParam(r, phi)
        exact = quadrature_variance(squeezed_vacuum_state(xi, cut, tail_tol), theta)
        closed = nongauss.squeezed_vacuum_variance(xi, theta)
        approx = nongauss.squeezed_vacuum_variance_approx(xi, theta)
    else:
        param = nongauss.EvenCoherentParam(bm, vp)
        exact, closed = nongauss.quadrature_variance_even(param, cut, theta, tail_tol)
        approx = float(nongauss.even_variance_approx(param, theta))
    return [(kind, r, phi, bm, vp, theta, n_max, float(exact), float(closed),
             float(approx), abs(float(exact) - float(closed)))]


# --- displacement from a strong ancilla --------------------------------------


def _plan_displacement_bs(cfg: ExperimentConfig):
    n_max = resolve_cutoff(cfg)
    return [(cfg.input_kind, cfg.input_beta_mag, cfg.input_varphi,
             t, cfg.eff_re, cfg.eff_im, n_max, cfg.tail_tol)
            for t in cfg.T_list]


def _compute_displacement_bs(task):
    kind, bm, vp, t, eff_re, eff_im, n_max, tail_tol = task
    cut = FockCutoff(n_max)
    state = (vacuum(cut) if kind == "vacuum"
             else nongauss.even_coherent_state(nongauss.EvenCoherentParam(bm, vp),
                                               cut, tail_tol))
    gamma = complex(eff_re, eff_im) / math.sqrt(t)
    real = nongauss.BeamSplitterRealization(t, gamma)
    _, fid = nongauss.displacement_via_beamsplitter(real, state, cut, tail_tol)
    return [(kind, bm, vp, t, gamma.real, gamma.imag, eff_re, eff_im, n_max, fid)]


REGISTRY = {
    "mmstate": Experiment(
        "mmstate",
        ("b", "cutoff", "tail_tol", "n", "weight", "mass"),
        _plan_mmstate, _compute_mmstate),
    "conformation": Experiment(
        "conformation",
        ("N", "b", "r", "phi", "cutoff", "p", "q", "r_p", "theta_pq",
         "k_factor", "vacuum_weight"),
        _plan_conformation, _compute_conformation),
    "convergence": Experiment(
        "convergence",
        ("N", "b", "r", "phi", "cutoff", "d_hs", "d_hs_times_Np1",
         "triangle_bound", "entropy"),
        _plan_convergence, _compute_convergence),
    "squeezed_convergence": Experiment(
        "squeezed_convergence",
        ("N", "b", "r", "phi", "cutoff", "d_hs", "d_hs_times_Np1",
         "triangle_bound", "entropy"),
        _plan_squeezed_convergence, _compute_convergence),
    "attack": Experiment(
        "attack",
        ("input_kind", "alpha_re", "alpha_im", "r", "phi", "cutoff",
         "bob_purity", "eve_purity", "ent_proxy", "fidelity"),
        _plan_attack, _compute_attack),
    "nongauss_overlap": Experiment(
        "nongauss_overlap",
        ("r", "phi_xi", "beta_mag", "varphi", "cutoff", "exact", "approx",
         "abs_err"),
        _plan_overlap, _compute_overlap),
    "nongauss_variance": Experiment(
        "nongauss_variance",
        ("kind", "r", "phi_xi", "beta_mag", "varphi", "theta", "cutoff",
         "exact", "closed_form", "approx", "abs_err"),
        _plan_variance, _compute_variance),
    "displacement_bs": Experiment(
        "displacement_bs",
        ("input_kind", "input_beta_mag", "input_varphi", "T", "gamma_re",
         "gamma_im", "eff_re", "eff_im", "cutoff", "fidelity"),
        _plan_displacement_bs, _compute_displacement_bs),
}


def execute(cfg: ExperimentConfig, workers: int = 1):
    """Expand the grid and evaluate it; returns (columns, rows) in grid order."""
    exp = REGISTRY[cfg.experiment]
    tasks = exp.plan(cfg)
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(exp.compute, tasks))
    else:
        chunks = [exp.compute(t) for t in tasks]
    return list(exp.columns), [row for chunk in chunks for row in chunk]
