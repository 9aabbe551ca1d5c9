"""Upper and lower bounds on sup (lambda_1 + lambda_n)/n over graphs of odd girth >= k."""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np
from scipy.optimize import minimize

from oddgirth.errors import (
    InternalConsistencyError,
    InvalidParameter,
    NumericalDomainError,
)
from oddgirth.graph import OddGirth

POWER_TRACE_SLACK = 1e-9
GIRTH7_CUBIC = (54.0, 423.0, -700.0, 27.0)
GIRTH7_AGREEMENT_TOL = 1e-6


class BoundKind(str, enum.Enum):
    PROP32_UPPER = "Prop32Upper"
    LAMBERT_UPPER = "LambertUpper"
    CYCLE_LOWER = "CycleLower"
    GIRTH7_UPPER = "Girth7Upper"
    FOLDED_CUBE_LOWER = "FoldedCubeLower"
    TRIVIAL_UPPER = "TrivialUpper"
    COMPLETE_LOWER = "CompleteLower"
    SRG_LOWER = "SrgLower"

    @property
    def is_upper(self) -> bool:
        return self.value.endswith("Upper")


@dataclass(frozen=True)
class BoundResult:
    kind: BoundKind
    k: int
    value: float
    ell: Optional[int] = None
    witness: dict[str, Any] = field(default_factory=dict)


def _check_odd_k(k: int, minimum: int) -> None:
    if k < minimum or k % 2 == 0:
        raise InvalidParameter(f"odd girth must be an odd integer >= {minimum}, got {k}")


# --- trace inequality --------------------------------------------------------


def lemma31_rhs(lambda1: float, lambdan: float, n: int, ell: int) -> float:
    """-lambda_n^(2l-1) n / (lambda_1^(2l-1) - lambda_n^(2l-1))."""
    e = 2 * ell - 1
    return -(lambdan**e) * n / (lambda1**e - lambdan**e)


def lemma31_check(lambda1: float, lambdan: float, n: int, ell: int) -> bool:
    """Whether lambda_1 <= lemma31_rhs(...) up to a 1e-9 slack.

    Must hold for every graph of odd girth >= 2*ell + 3.
    """
    if ell < 1:
        raise InvalidParameter(f"ell must be >= 1, got {ell}")
    if n < 1:
        raise InvalidParameter(f"n must be >= 1, got {n}")
    if not (lambda1 > 0 > lambdan):
        raise InvalidParameter(
            f"need lambda_1 > 0 > lambda_n, got lambda_1={lambda1}, lambda_n={lambdan}"
        )
    return lambda1 <= lemma31_rhs(lambda1, lambdan, n, ell) + POWER_TRACE_SLACK


# --- root-based bound --------------------------------------------------------


def g_poly(x: float, ell: int) -> float:
    return x ** (2 * ell) + 2 * ell * x - 2 * ell + 1


def find_x0(ell: int) -> float:
    """Unique root in (0, 1) of x^(2l) + 2l x - 2l + 1 (bisection, then Newton)."""
    if ell < 1:
        raise InvalidParameter(f"ell must be >= 1, got {ell}")
    lo, hi = 0.0, 1.0
    # g is increasing on (0, 1) with g(0) < 0 < g(1)
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if g_poly(mid, ell) < 0:
            lo = mid
        else:
            hi = mid
    x = 0.5 * (lo + hi)
    for _ in range(5):
        dg = 2 * ell * x ** (2 * ell - 1) + 2 * ell
        step = g_poly(x, ell) / dg
        x -= step
        if abs(step) < 1e-17:
            break
    return x


def prop32_bound(ell: int) -> BoundResult:
    """1 - (2l/(2l-1)) x0, valid for odd girth >= 2l + 3."""
    x0 = find_x0(ell)
    value = 1 - (2 * ell / (2 * ell - 1)) * x0
    return BoundResult(BoundKind.PROP32_UPPER, 2 * ell + 3, value, ell, {"x0": x0})


def prop32_objective(x: float, ell: int) -> float:
    """x^(2l-1)(1-x)/(1+x^(2l-1)); its maximum on (0, 1) is the Prop. bound."""
    p = x ** (2 * ell - 1)
    return p * (1 - x) / (1 + p)


# --- Lambert W ---------------------------------------------------------------


def lambert_w(x: float) -> float:
    """Principal branch of the inverse of w -> w e^w, restricted to x >= 0 (Halley)."""
    if x < 0 or math.isnan(x):
        raise InvalidParameter(f"lambert_w is restricted to x >= 0, got {x}")
    if x == 0:
        return 0.0
    w = math.log1p(x)
    for _ in range(100):
        ew = math.exp(w)
        f = w * ew - x
        wp1 = w + 1
        step = f / (ew * wp1 - (w + 2) * f / (2 * wp1))
        w -= step
        if abs(step) <= 4e-16 * (1 + abs(w)):
            break
    return w


W_INV_E = lambert_w(1 / math.e)


def lambert_upper_bound(k: int) -> BoundResult:
    """W(1/e)/(k-4) for odd k >= 5."""
    _check_odd_k(k, 5)
    return BoundResult(BoundKind.LAMBERT_UPPER, k, W_INV_E / (k - 4), (k - 3) // 2, {"W(1/e)": W_INV_E})


def lambert_proof_x1(ell: int) -> float:
    """(l - a)/l with a = (W(1/e) + 1)/2; a strict lower bound for find_x0(l)."""
    a = (W_INV_E + 1) / 2
    return (ell - a) / ell


# --- cycles ------------------------------------------------------------------


def cycle_lower_bound(k: int) -> BoundResult:
    """2(1 - cos(pi/k))/k, attained by the odd cycle C_k."""
    _check_odd_k(k, 3)
    value = 2 * (1 - math.cos(math.pi / k)) / k
    return BoundResult(BoundKind.CYCLE_LOWER, k, value, witness={"graph": f"{k}-cycle"})


# --- odd girth 7 -------------------------------------------------------------


def _girth7_radicand(delta, alpha, printed: bool = False):
    d, a = delta, alpha
    r = a**4 + 6 * a**3 * d + 9 * a**2 * d**2 - 12 * a**2 * d
    if not printed:
        r = r - 4 * a * d**2 + 4 * a * d
    return r


def _girth7_value(delta, alpha, printed: bool = False):
    d, a = delta, alpha
    root = np.sqrt(_girth7_radicand(d, a, printed))
    return d * (1 - (a * a - a * d + root) / (2 * a * (1 - d - a)))


def girth7_quotient(delta, alpha, lambda1: float = 1.0) -> np.ndarray:
    """The 3x3 weight-quotient matrix of the distance partition as a function of (delta, alpha)."""
    d, a = delta, alpha
    r = (a - d) / (1 - d - a)
    return lambda1 * np.array([[0.0, 1.0, 0.0], [d / a, 0.0, 1 - d / a], [0.0, r, 1 - r]])


def girth7_least_eigenvalue(delta, alpha) -> np.ndarray:
    """Least eigenvalue of girth7_quotient(delta, alpha) with lambda_1 = 1, vectorised.

    Uses the symmetric similar matrix diag(w)^(1/2) M diag(w)^(-1/2) with
    class weights w = (delta, alpha, 1 - delta - alpha).
    """
    d = np.asarray(delta, dtype=float)
    a = np.asarray(alpha, dtype=float)
    d, a = np.broadcast_arrays(d, a)
    r = (a - d) / (1 - d - a)
    b = np.zeros(d.shape + (3, 3))
    b[..., 0, 1] = b[..., 1, 0] = np.sqrt(d / a)
    b[..., 1, 2] = b[..., 2, 1] = np.sqrt((1 - d / a) * r)
    b[..., 2, 2] = 1 - r
    return np.linalg.eigvalsh(b)[..., 0]


def girth7_objective(delta: float, alpha: float) -> float:
    """delta * (1 + lambda_3(M)/lambda_1) in closed form, on 0 < delta < alpha < 1/2."""
    if not (0 < delta < alpha < 0.5):
        raise InvalidParameter(f"need 0 < delta < alpha < 1/2, got delta={delta}, alpha={alpha}")
    rad = _girth7_radicand(delta, alpha)
    if rad < 0:
        raise NumericalDomainError(f"negative radicand {rad} at delta={delta}, alpha={alpha}")
    return float(_girth7_value(delta, alpha))


def cubic_roots(a: float, b: float, c: float, d: float) -> list[float]:
    """Real roots of a x^3 + b x^2 + c x + d, descending, Newton-polished."""
    if a == 0:
        raise InvalidParameter("leading coefficient must be nonzero")
    shift = b / (3 * a)
    p = (3 * a * c - b * b) / (3 * a * a)
    q = (2 * b**3 - 9 * a * b * c + 27 * a * a * d) / (27 * a**3)
    disc = -(4 * p**3 + 27 * q * q)
    if disc > 0:
        m = 2 * math.sqrt(-p / 3)
        phi = math.acos(max(-1.0, min(1.0, 3 * q / (p * m))))
        ts = [m * math.cos((phi - 2 * math.pi * j) / 3) for j in range(3)]
    else:
        s = math.sqrt(max(q * q / 4 + p**3 / 27, 0.0))
        ts = [math.copysign(abs(-q / 2 + s) ** (1 / 3), -q / 2 + s)
              + math.copysign(abs(-q / 2 - s) ** (1 / 3), -q / 2 - s)]
    roots = []
    for t in ts:
        x = t - shift
        for _ in range(8):
            fx = ((a * x + b) * x + c) * x + d
            dfx = (3 * a * x + 2 * b) * x + c
            if dfx == 0:
                break
            step = fx / dfx
            x -= step
            if abs(step) <= 1e-16 * max(1.0, abs(x)):
                break
        roots.append(x)
    return sorted(roots, reverse=True)


def _grid(step: float):
    ticks = np.arange(1, int(round(0.5 / step))) * step
    dd, aa = np.meshgrid(ticks, ticks, indexing="ij")
    return dd, aa, dd < aa


def girth7_grid_search(step: float = 1e-3, printed: bool = False):
    """Grid maximum of the objective; returns (value, delta, alpha, max |closed form - eigensolve|).

    Ties go to the smallest delta, then the smallest alpha (row-major argmax).
    """
    dd, aa, mask = _grid(step)
    with np.errstate(invalid="ignore", divide="ignore"):
        vals = np.where(mask, _girth7_value(dd, aa, printed), -np.inf)
    vals = np.where(np.isnan(vals), -np.inf, vals)
    i = np.unravel_index(np.argmax(vals), vals.shape)
    mismatch = float("nan")
    if not printed:
        eig = girth7_least_eigenvalue(dd[mask], aa[mask])
        mismatch = float(np.max(np.abs(dd[mask] * (1 + eig) - vals[mask])))
    return float(vals[i]), float(dd[i]), float(aa[i]), mismatch


def _refine(delta: float, alpha: float, printed: bool = False):
    def neg(x):
        d, a = x
        if not (0 < d < a < 0.5):
            return np.inf
        with np.errstate(invalid="ignore"):
            v = _girth7_value(d, a, printed)
        return np.inf if np.isnan(v) else -float(v)

    res = minimize(
        neg,
        np.array([delta, alpha]),
        method="Nelder-Mead",
        options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 20000, "initial_simplex": None},
    )
    return -float(res.fun), float(res.x[0]), float(res.x[1])


@functools.lru_cache(maxsize=4)
def girth7_upper_bound(step: float = 1e-3) -> BoundResult:
    """Upper bound for odd girth 7, computed twice and cross-checked.

    (a) the second-largest real root of 54x^3 + 423x^2 - 700x + 27;
    (b) grid search of the objective followed by Nelder-Mead refinement.
    """
    roots = cubic_roots(*GIRTH7_CUBIC)
    if len(roots) != 3:
        raise InternalConsistencyError(f"expected three real roots, got {roots}")
    cubic = roots[1]

    grid_val, grid_d, grid_a, mismatch = girth7_grid_search(step)
    if not mismatch <= 1e-9:
        raise InternalConsistencyError(
            f"closed-form objective and 3x3 eigensolve disagree by {mismatch}"
        )
    val, d_opt, a_opt = _refine(grid_d, grid_a)
    if abs(val - cubic) > GIRTH7_AGREEMENT_TOL:
        raise InternalConsistencyError(
            f"optimised objective {val} and cubic root {cubic} differ by {abs(val - cubic)}"
        )

    printed_grid = girth7_grid_search(step, printed=True)
    printed_val = _refine(printed_grid[1], printed_grid[2], printed=True)[0]
    witness = {
        "cubic_roots": roots,
        "delta": d_opt,
        "alpha": a_opt,
        "optimised_value": val,
        "grid_value": grid_val,
        "grid_point": (grid_d, grid_a),
        "grid_step": step,
        "closed_form_vs_eigensolve": mismatch,
        "cancelled_radicand_maximum": printed_val,
    }
    return BoundResult(BoundKind.GIRTH7_UPPER, 7, cubic, 2, witness)


# --- lower-bound witnesses ---------------------------------------------------


def folded_cube_lower_bound() -> BoundResult:
    """(lambda_1 + lambda_n)/n of the folded 7-cube from its character spectrum."""
    from oddgirth.graph import folded_cube_generators
    from oddgirth.spectral import cayley_f2_spectrum

    sp = cayley_f2_spectrum(6, folded_cube_generators(7))
    value = (sp.largest + sp.smallest) / len(sp)
    return BoundResult(BoundKind.FOLDED_CUBE_LOWER, 7, value, witness={"graph": "folded 7-cube"})


def higman_sims_lower_bound() -> BoundResult:
    from oddgirth.spectral import HIGMAN_SIMS, srg_spectrum

    value = srg_spectrum(HIGMAN_SIMS).ratio(HIGMAN_SIMS.n)
    return BoundResult(BoundKind.SRG_LOWER, 5, value, witness={"graph": "Higman-Sims graph"})


# --- table -------------------------------------------------------------------


def best_upper_bound(k) -> BoundResult:
    """Smallest known upper bound applying to every graph of odd girth >= k.

    ``k`` may be an int or an OddGirth; an infinite odd girth gives 0 (bipartite).
    """
    if isinstance(k, OddGirth):
        if k.is_infinite:
            return BoundResult(BoundKind.TRIVIAL_UPPER, 0, 0.0, witness={"source": "bipartite"})
        k = k.value
    _check_odd_k(k, 3)
    if k == 3:
        return BoundResult(BoundKind.TRIVIAL_UPPER, 3, 1.0, witness={"source": "trivial"})
    candidates = [prop32_bound((k - 3) // 2), lambert_upper_bound(k)]
    if k >= 7:
        candidates.append(girth7_upper_bound())
    best = min(candidates, key=lambda b: b.value)
    if best.k != k:
        best = BoundResult(best.kind, k, best.value, best.ell, best.witness)
    return best


_UPPER_SOURCE = {
    BoundKind.TRIVIAL_UPPER: "trivial",
    BoundKind.PROP32_UPPER: "root bound",
    BoundKind.GIRTH7_UPPER: "odd girth 7 interlacing bound",
    BoundKind.LAMBERT_UPPER: "Lambert W bound",
}


@dataclass(frozen=True)
class TableRow:
    k: int
    upper: float
    upper_source: str
    lower: float
    lower_witness: str


def gamma_table(k_max: int) -> list[TableRow]:
    """Best-known upper and lower bounds for each odd k in 3..k_max."""
    _check_odd_k(k_max, 3)
    rows = []
    for k in range(3, k_max + 1, 2):
        if k == 5:
            up = BoundResult(BoundKind.PROP32_UPPER, 5, prop32_bound(1).value, 1)
        else:
            up = best_upper_bound(k)
        if k == 3:
            low_val, low_name = 1.0, "K_n, n -> infinity"
        elif k == 5:
            b = higman_sims_lower_bound()
            low_val, low_name = b.value, b.witness["graph"]
        elif k == 7:
            b = folded_cube_lower_bound()
            low_val, low_name = b.value, b.witness["graph"]
        else:
            b = cycle_lower_bound(k)
            low_val, low_name = b.value, b.witness["graph"]
        rows.append(TableRow(k, up.value, _UPPER_SOURCE[up.kind], low_val, low_name))
    return rows
