"""Reduced density matrices, pairwise concurrence and tangles.

Two-qubit matrices use the index ``2*bit(first) + bit(second)`` with a set bit
meaning spin up, so index 3 is ``|up up>`` and index 0 is ``|down down>``.
Total-S_z conservation makes every pair matrix of this model an X-state:

    u  = <uu|rho|uu>     w1 = <ud|rho|ud>     v = <dd|rho|dd>
    w2 = <du|rho|du>     offdiag = <du|rho|ud>
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .model import SITE_BIT, ModelParams
from .spectrum import analytic_energies, coefficients

PAIRS = ("AC", "BC", "AB")
XSTATE_PATTERN_TOL = 1e-10
PURITY_GUARD = 1e-8

SIGMA_YY = np.array([[0, 0, 0, -1],
                     [0, 0, 1, 0],
                     [0, 1, 0, 0],
                     [-1, 0, 0, 0]], dtype=float)

# axis of each site in rho.reshape(2, 2, 2, ...): A, C, B
_AXIS = {site: 2 - bit for site, bit in SITE_BIT.items()}


class XStateStructureError(ValueError):
    """Entries outside the X pattern are non-zero; usually a basis-ordering bug."""


class OutOfRegimeError(ValueError):
    pass


def _normalize_keep(keep: str) -> tuple[str, ...]:
    keep = keep.upper()
    if not 1 <= len(keep) <= 2 or any(s not in _AXIS for s in keep) or len(set(keep)) != len(keep):
        raise ValueError(f"keep must name one site or a pair of distinct sites from A, B, C, got {keep!r}")
    return tuple(keep)


def partial_trace(rho: np.ndarray, keep: str) -> np.ndarray:
    """Reduce an 8x8 density matrix to the named pair (``"AC"``) or site (``"C"``).

    A pair result is ordered (first site, second site) as written in ``keep``.
    """
    sites = _normalize_keep(keep)
    rho = np.asarray(rho)
    if rho.shape != (8, 8):
        raise ValueError(f"partial_trace needs an 8x8 matrix, got {rho.shape}")
    t = rho.reshape((2,) * 6)
    ket = [_AXIS[s] for s in sites]
    gone = [ax for ax in range(3) if ax not in ket]
    letters = "abc"
    row = list(letters)
    col = [ch.upper() for ch in letters]
    for ax in gone:
        col[ax] = row[ax]
    out = "".join(letters[ax] for ax in ket) + "".join(letters[ax].upper() for ax in ket)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, t)
    d = 2 ** len(sites)
    return reduced.reshape(d, d)


@dataclass(frozen=True)
class XStateElements:
    u: float
    v: float
    w1: float
    w2: float
    offdiag: float
    scale: float = 1.0

    def normalized(self) -> "XStateElements":
        z = self.scale
        return XStateElements(self.u / z, self.v / z, self.w1 / z, self.w2 / z, self.offdiag / z, 1.0)

    def as_matrix(self) -> np.ndarray:
        m = np.zeros((4, 4), dtype=np.result_type(self.offdiag, float))
        m[3, 3], m[2, 2], m[1, 1], m[0, 0] = self.u, self.w1, self.w2, self.v
        m[1, 2] = self.offdiag
        m[2, 1] = np.conj(self.offdiag)
        return m / self.scale


def xstate_elements(rho4: np.ndarray) -> XStateElements:
    rho4 = np.asarray(rho4)
    if rho4.shape != (4, 4):
        raise ValueError(f"expected a 4x4 matrix, got {rho4.shape}")
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = False
    mask[1, 2] = mask[2, 1] = False
    stray = np.max(np.abs(rho4[mask]))
    if stray >= XSTATE_PATTERN_TOL:
        raise XStateStructureError(f"matrix is not an X-state: stray element of size {stray:.3e}")
    off = rho4[1, 2]
    if np.iscomplexobj(off) and abs(off.imag) < 1e-15:
        off = off.real
    return XStateElements(float(rho4[3, 3].real), float(rho4[0, 0].real),
                          float(rho4[2, 2].real), float(rho4[1, 1].real),
                          off if np.iscomplexobj(off) else float(off))


def concurrence_xstate(e: XStateElements) -> float:
    return 2.0 / e.scale * max(0.0, abs(e.offdiag) - math.sqrt(e.u * e.v))


def wootters_lambdas(rho4: np.ndarray) -> np.ndarray:
    """Square roots of the eigenvalues of rho (sy x sy) rho* (sy x sy), descending.

    Computed as the singular values of ``W^T (sy x sy) W`` with ``rho = W W^+``;
    this avoids taking square roots of round-off sized eigenvalues of the
    non-Hermitian product.
    """
    rho4 = np.asarray(rho4)
    herm = 0.5 * (rho4 + rho4.conj().T)
    evals, evecs = np.linalg.eigh(herm)
    w = evecs * np.sqrt(np.clip(evals, 0.0, None))
    tau = w.T @ SIGMA_YY @ w
    return np.linalg.svd(tau, compute_uv=False)


def concurrence_wootters(rho4: np.ndarray) -> float:
    lam = wootters_lambdas(rho4)
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def one_tangle(rho2: np.ndarray) -> float:
    rho2 = np.asarray(rho2)
    if rho2.shape != (2, 2):
        raise ValueError(f"one_tangle needs a 2x2 matrix, got {rho2.shape}")
    return float(4.0 * np.linalg.det(rho2).real)


def pair_concurrence(rho8: np.ndarray, pair: str, check: bool = True) -> float:
    """Concurrence of a pair from the X-state formula, cross-checked with Wootters."""
    rho4 = partial_trace(rho8, pair)
    c = concurrence_xstate(xstate_elements(rho4))
    if check:
        cw = concurrence_wootters(rho4)
        if abs(c - cw) > 1e-10:
            raise AssertionError(f"{pair}: X-state concurrence {c!r} disagrees with Wootters {cw!r}")
    return c


@dataclass(frozen=True)
class EntanglementReport:
    c_ac: float
    c_bc: float
    c_ab: float
    tau1: dict = field(default_factory=dict)
    tau2: dict = field(default_factory=dict)
    residual: dict = field(default_factory=dict)
    purity: float = 1.0
    # residual entanglement is an entanglement measure only for pure states
    residual_is_monotone: bool = True
    wootters_gap: float = 0.0

    def concurrence(self, pair: str) -> float:
        pair = pair.upper()
        key = {"AC": "c_ac", "CA": "c_ac", "BC": "c_bc", "CB": "c_bc", "AB": "c_ab", "BA": "c_ab"}[pair]
        return getattr(self, key)


def report(rho8: np.ndarray, pure: bool | None = None) -> EntanglementReport:
    """Pair concurrences, one-tangles and residual entanglement of a 3-qubit state.

    Concurrences come from the X-state formula when the pair matrix has X
    structure and from the Wootters construction otherwise; the two are
    required to agree within 1e-10.
    """
    rho8 = np.asarray(rho8)
    purity = float(np.trace(rho8 @ rho8).real)
    if pure is None:
        pure = purity > 1 - PURITY_GUARD
    conc = {}
    gap = 0.0
    for pair in PAIRS:
        rho4 = partial_trace(rho8, pair)
        cw = concurrence_wootters(rho4)
        try:
            c = concurrence_xstate(xstate_elements(rho4))
        except XStateStructureError:
            c = cw
        gap = max(gap, abs(c - cw))
        conc[pair] = c
    if gap > 1e-10:
        raise AssertionError(f"X-state and Wootters concurrences differ by {gap:.3e}")
    pair_c = {frozenset(p): c for p, c in conc.items()}
    tau1, tau2, residual = {}, {}, {}
    for site in "ACB":
        tau1[site] = one_tangle(partial_trace(rho8, site))
        tau2[site] = sum(pair_c[frozenset((site, other))] ** 2 for other in "ACB" if other != site)
        residual[site] = tau1[site] - tau2[site]
    return EntanglementReport(conc["AC"], conc["BC"], conc["AB"], tau1, tau2, residual,
                              purity, bool(pure), gap)


def closed_form_ground(p: ModelParams) -> tuple[float, float]:
    """Ground-state ``(C_AC, C_AB)`` from the closed forms.

    Zero field with ``-2 < x``: the psi3/psi5 mixture. Positive field below the
    critical field: pure psi5. Zero field with ``x < -2``: the separable
    psi1/psi8 mixture, for which both concurrences vanish.
    """
    co = coefficients(p.x)
    inv_a2 = co.edge_plus ** 2
    r_a2 = abs(co.edge_plus * co.centre_plus)
    r2_a2 = co.centre_plus ** 2
    e = analytic_energies(p.x, p.y)
    if p.y == 0:
        gap = e[0] - e[2]
        if abs(gap) <= 1e-9 * max(1.0, abs(e[0])):
            raise OutOfRegimeError(f"x={p.x} sits on the zero-field level crossing")
        if gap < 0:
            return 0.0, 0.0
        return (2 * max(0.0, r_a2 - 0.5 * inv_a2),
                2 * max(0.0, inv_a2 - 0.5 * r2_a2))
    if p.y < 0:
        raise OutOfRegimeError("closed forms cover y >= 0 only")
    if not e[4] < e[7] - 1e-9 * max(1.0, abs(e[7])):
        raise OutOfRegimeError(f"(x={p.x}, y={p.y}) is not in the pure psi5 ground regime")
    return 2 * r_a2, 2 * inv_a2


def _element_coefficients(p: ModelParams, pair: str) -> dict[str, np.ndarray]:
    """Each thermal pair element as ``sum_k coef[k] * exp(-E_k/T)`` over psi1..psi8.

    Zero field uses the reduced forms in which E2 = E7 = 0 have been merged.
    The populations ``w1``/``w2`` follow from the same level amplitudes.
    """
    pair = pair.upper()
    if pair not in ("AC", "CA", "BC", "CB", "AB", "BA"):
        raise ValueError(f"unknown pair {pair!r}")
    co = coefficients(p.x)
    ea, ca = co.edge_plus ** 2, co.centre_plus ** 2
    eb, cb = co.edge_minus ** 2, co.centre_minus ** 2
    pa = co.edge_plus * co.centre_plus    # -R/A^2
    pb = co.edge_minus * co.centre_minus  # -S/B^2
    zero_field = p.y == 0
    #                 e1   e2    e3   e4   e5   e6   e7    e8
    if pair in ("AB", "BA"):
        u = [1, 0, ca, cb, 0, 0, 0, 0]
        v = [0, 0, 0, 0, ca, cb, 0, 1]
        if zero_field:
            off = [0, -1, 2 * ea, 2 * eb, 0, 0, 0, 0]
        else:
            off = [0, -0.5, ea, eb, ea, eb, -0.5, 0]
        w1 = w2 = [0, 0.5, ea, eb, ea, eb, 0.5, 0]
    else:
        if zero_field:
            u = v = [1, 0.5, ea, eb, 0, 0, 0, 0]
            off = [0, 0, 2 * pa, 2 * pb, 0, 0, 0, 0]
        else:
            u = [1, 0.5, ea, eb, 0, 0, 0, 0]
            v = [0, 0, 0, 0, ea, eb, 0.5, 1]
            off = [0, 0, pa, pb, pa, pb, 0, 0]
        w1 = [0, 0, ca, cb, ea, eb, 0.5, 0]
        w2 = [0, 0.5, ea, eb, ca, cb, 0, 0]
        if pair in ("CA", "CB"):
            w1, w2 = w2, w1
    return {k: np.array(c, dtype=float) for k, c in
            (("u", u), ("v", v), ("w1", w1), ("w2", w2), ("offdiag", off))}


def _check_temps(temps) -> np.ndarray:
    temps = np.atleast_1d(np.asarray(temps, dtype=float))
    if np.any(temps <= 0):
        raise ValueError("temperatures must be positive")
    return temps


def thermal_xstate_arrays(p: ModelParams, temps, pair: str) -> dict:
    """Unnormalized thermal pair elements for an array of temperatures.

    Boltzmann factors are shifted by the ground energy, so ``scale`` is the
    partition function times ``exp(E_min/T)``.
    """
    temps = _check_temps(temps)
    coefs = _element_coefficients(p, pair)
    energies = analytic_energies(p.x, p.y)
    wts = np.exp(-(energies - energies.min())[None, :] / temps[:, None])
    out = {k: wts @ c for k, c in coefs.items()}
    out["scale"] = wts.sum(axis=1)
    return out


def _log_combination(coef: np.ndarray, log_w: np.ndarray) -> np.ndarray:
    """``log |sum_k coef_k exp(log_w_k)|`` row-wise, without underflow."""
    def lse(mask):
        if not mask.any():
            return np.full(log_w.shape[0], -np.inf)
        terms = np.log(np.abs(coef[mask]))[None, :] + log_w[:, mask]
        top = terms.max(axis=1)
        return top + np.log(np.exp(terms - top[:, None]).sum(axis=1))

    pos, neg = lse(coef > 0), lse(coef < 0)
    hi, lo = np.maximum(pos, neg), np.minimum(pos, neg)
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(np.isinf(hi), -np.inf, hi + np.log1p(-np.exp(lo - hi)))


def thermal_log_elements(p: ModelParams, temps, pair: str) -> dict:
    """Logarithms of ``u``, ``v``, ``|offdiag|`` and ``Z`` (ground-shifted)."""
    temps = _check_temps(temps)
    coefs = _element_coefficients(p, pair)
    energies = analytic_energies(p.x, p.y)
    log_w = -(energies - energies.min())[None, :] / temps[:, None]
    out = {k: _log_combination(coefs[k], log_w) for k in ("u", "v", "offdiag")}
    top = log_w.max(axis=1)
    out["scale"] = top + np.log(np.exp(log_w - top[:, None]).sum(axis=1))
    return out


def closed_form_thermal_elements(p: ModelParams, temperature: float, pair: str) -> XStateElements:
    arr = thermal_xstate_arrays(p, [temperature], pair)
    return XStateElements(*(float(arr[k][0]) for k in ("u", "v", "w1", "w2", "offdiag", "scale")))


def thermal_concurrence(p: ModelParams, temps, pair: str) -> np.ndarray:
    """Closed-form thermal concurrence for an array of temperatures."""
    lg = thermal_log_elements(p, temps, pair)
    coherence = np.exp(lg["offdiag"] - lg["scale"])
    population = np.exp(0.5 * (lg["u"] + lg["v"]) - lg["scale"])
    return 2.0 * np.maximum(0.0, coherence - population)


def thermal_log_margin(p: ModelParams, temps, pair: str) -> np.ndarray:
    """``log|offdiag| - log sqrt(u v)``: positive exactly where the pair is entangled."""
    lg = thermal_log_elements(p, temps, pair)
    with np.errstate(invalid="ignore"):
        out = lg["offdiag"] - 0.5 * (lg["u"] + lg["v"])
    # 0/0 only when both vanish identically; treat as not entangled
    return np.where(np.isnan(out), -np.inf, out)


def thermal_margin(p: ModelParams, temps, pair: str) -> np.ndarray:
    """``(|offdiag| - sqrt(u v)) / Z``, half the pre-max concurrence."""
    lg = thermal_log_elements(p, temps, pair)
    return np.exp(lg["offdiag"] - lg["scale"]) - np.exp(0.5 * (lg["u"] + lg["v"]) - lg["scale"])


def ghz_state() -> np.ndarray:
    vec = np.zeros(8)
    vec[0] = vec[7] = 1 / math.sqrt(2)
    return vec


def w_state() -> np.ndarray:
    vec = np.zeros(8)
    vec[[3, 5, 6]] = 1 / math.sqrt(3)
    return vec
