"""Perron-weighted quotient matrices, interlacing certificates and the odd-girth-7 partition."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

from oddgirth.bounds import girth7_objective, girth7_upper_bound
from oddgirth.errors import InvalidParameter
from oddgirth.graph import (
    Graph,
    bfs_distances,
    is_connected,
    is_independent_set,
    odd_girth,
)
from oddgirth.spectral import PerronVector, adjacency_spectrum, perron_vector

TOL = 1e-8


def _jsonable(x):
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


@dataclass
class Certificate:
    """Outcome of checking an inequality on a concrete graph.

    ``status`` is ``"valid"``, ``"invalid"`` or ``"not-applicable"``.
    """

    kind: str
    status: str
    data: dict[str, Any] = field(default_factory=dict)
    reason: Optional[str] = None

    @property
    def valid(self) -> bool:
        return self.status == "valid"

    def to_dict(self) -> dict[str, Any]:
        out = {"kind": self.kind, "status": self.status, "valid": self.valid}
        if self.reason:
            out["reason"] = self.reason
        out["data"] = _jsonable(self.data)
        return out


@dataclass(frozen=True)
class WeightedPartition:
    classes: tuple[tuple[int, ...], ...]
    weights: PerronVector
    class_norms: np.ndarray  # squared Perron weight of each class

    @property
    def t(self) -> int:
        return len(self.classes)


@dataclass(frozen=True)
class QuotientMatrices:
    partition: WeightedPartition
    M: np.ndarray
    B: np.ndarray
    mu: np.ndarray  # eigenvalues of B, descending


def _validate_partition(n: int, partition: Iterable[Iterable[int]]) -> tuple[tuple[int, ...], ...]:
    classes = tuple(tuple(sorted(set(int(v) for v in c))) for c in partition)
    seen = np.zeros(n, dtype=bool)
    for c in classes:
        if not c:
            raise InvalidParameter("partition has an empty class")
        for v in c:
            if not 0 <= v < n:
                raise InvalidParameter(f"vertex {v} out of range for n={n}")
            if seen[v]:
                raise InvalidParameter(f"vertex {v} appears in more than one class")
            seen[v] = True
    if not seen.all():
        raise InvalidParameter(f"partition misses vertices {np.flatnonzero(~seen).tolist()}")
    return classes


def rho_norm(nu: PerronVector, vertices: Iterable[int]) -> float:
    """Squared norm of the Perron vector restricted to ``vertices``."""
    idx = list(vertices)
    return float(np.sum(nu.entries[idx] ** 2)) if idx else 0.0


def build_quotient(
    g: Graph, partition: Sequence[Iterable[int]], nu: Optional[PerronVector] = None
) -> QuotientMatrices:
    """M = D^-1 S^T A S and B = S-bar^T A S-bar for the Perron weight-characteristic matrix S."""
    if not is_connected(g) or g.n == 0:
        raise InvalidParameter("build_quotient needs a connected nonempty graph")
    classes = _validate_partition(g.n, partition)
    if nu is None:
        nu = perron_vector(g)
    t = len(classes)
    s = np.zeros((g.n, t))
    for i, c in enumerate(classes):
        s[list(c), i] = nu.entries[list(c)]
    d = np.einsum("ui,ui->i", s, s)
    sat = s.T @ g.adjacency_matrix() @ s
    m = sat / d[:, None]
    root = np.sqrt(d)
    b = sat / np.outer(root, root)
    b = (b + b.T) / 2
    mu = np.linalg.eigvalsh(b)[::-1]
    wp = WeightedPartition(classes, nu, d)
    return QuotientMatrices(wp, m, b, mu)


def check_interlacing(g: Graph, q: QuotientMatrices, tol: float = TOL) -> Certificate:
    """lambda_i >= mu_i and lambda_(n+1-i) <= mu_(t+1-i) for i = 1..t."""
    lam = adjacency_spectrum(g).eigenvalues
    mu = q.mu
    n, t = len(lam), len(mu)
    upper = np.array([lam[i] - mu[i] for i in range(t)])
    lower = np.array([mu[t - 1 - i] - lam[n - 1 - i] for i in range(t)])
    m_eigs = np.sort(np.linalg.eigvals(q.M).real)[::-1]
    similarity_gap = float(np.max(np.abs(m_eigs - mu)))
    row_sum_gap = float(np.max(np.abs(q.M.sum(axis=1) - lam[0])))
    ok = bool(upper.min() >= -tol and lower.min() >= -tol)
    data = {
        "n": n,
        "t": t,
        "class_sizes": [len(c) for c in q.partition.classes],
        "lambda": lam,
        "mu": mu,
        "upper_slack": upper,
        "lower_slack": lower,
        "min_slack": float(min(upper.min(), lower.min())),
        "least_mu_minus_lambda_n": float(mu[-1] - lam[-1]),
        "M": q.M,
        "M_B_eigen_gap": similarity_gap,
        "row_sum_gap": row_sum_gap,
    }
    return Certificate("interlacing", "valid" if ok else "invalid", data)


def neighborhood_weights(g: Graph, nu: PerronVector) -> np.ndarray:
    """Squared Perron weight of N(u) for every vertex u."""
    return g.adjacency_matrix() @ (nu.entries**2)


def heavy_vertex(g: Graph, nu: Optional[PerronVector] = None) -> int:
    """Vertex maximising the squared Perron weight of its neighbourhood (lowest index on ties).

    Such a vertex has weight at least lambda_1/n.
    """
    if g.n < 2:
        raise InvalidParameter("heavy_vertex needs at least two vertices")
    if not is_connected(g):
        raise InvalidParameter("heavy_vertex needs a connected graph")
    if nu is None:
        nu = perron_vector(g)
    w = neighborhood_weights(g, nu)
    # treat near-ties as ties so regular graphs return vertex 0
    return int(np.flatnonzero(w >= w.max() - 1e-12)[0])


def neighbors_of_set(g: Graph, s: Iterable[int]) -> list[int]:
    idx = list(s)
    if not idx:
        return []
    return np.flatnonzero(g.adjacency[idx].any(axis=0)).tolist()


def lemma35_check(
    g: Graph, s: Iterable[int], nu: Optional[PerronVector] = None, tol: float = 1e-10
) -> Certificate:
    """Weight of an independent set S against the weight of T = {v : N(v) meets S}."""
    s = sorted(set(int(v) for v in s))
    if not is_connected(g):
        raise InvalidParameter("lemma35_check needs a connected graph")
    if not is_independent_set(g, s):
        raise InvalidParameter("S is not an independent set")
    if nu is None:
        nu = perron_vector(g)
    t = neighbors_of_set(g, s)
    rs, rt = rho_norm(nu, s), rho_norm(nu, t)
    covers = len(s) + len(t) == g.n
    is_bipartition = covers and is_independent_set(g, t)
    equal = abs(rs - rt) <= tol
    half_equal = abs(rs - 0.5) <= tol
    checks = {
        "weight_S_le_weight_T": rs <= rt + tol,
        "weight_S_le_half": rs <= 0.5 + tol,
        "equality_iff_bipartition": equal == is_bipartition,
        "half_iff_bipartition": half_equal == is_bipartition,
    }
    data = {
        "S": s,
        "T": t,
        "weight_S": rs,
        "weight_T": rt,
        "slack": rt - rs,
        "half_slack": 0.5 - rs,
        "is_bipartition": is_bipartition,
        "equality": equal,
        "checks": checks,
    }
    return Certificate("independent-set", "valid" if all(checks.values()) else "invalid", data)


def distance_partition(g: Graph, u: int) -> list[list[int]]:
    """[dist 1], [dist 0 or 2], [dist >= 3] from ``u``."""
    dist = bfs_distances(g, u)
    v1 = np.flatnonzero(dist == 1).tolist()
    v2 = np.flatnonzero((dist == 0) | (dist == 2)).tolist()
    v3 = np.flatnonzero(dist >= 3).tolist()
    return [v1, v2, v3]


def girth7_lambda3_closed_form(lambda1: float, delta: float, alpha: float) -> float:
    d, a = delta, alpha
    rad = a**4 + 6 * a**3 * d + 9 * a**2 * d**2 - 12 * a**2 * d - 4 * a * d**2 + 4 * a * d
    return -lambda1 * (a * a - a * d + math.sqrt(max(rad, 0.0))) / (2 * a * (1 - d - a))


def girth7_certificate(g: Graph, tol: float = TOL) -> Certificate:
    """Certify (lambda_1 + lambda_n)/n below the odd-girth-7 bound via the distance partition.

    The partition is taken around the heaviest-neighbourhood vertex u:
    V1 = N(u), V2 = {u} + vertices at distance 2, V3 = everything farther.
    """
    if g.n == 0 or not is_connected(g):
        raise InvalidParameter("girth7_certificate needs a connected graph")
    og = odd_girth(g)
    if og.is_infinite:
        raise InvalidParameter("graph is bipartite")
    if og.value < 7:
        raise InvalidParameter(f"odd girth {og.value} < 7")

    nu = perron_vector(g)
    u = heavy_vertex(g, nu)
    lam = adjacency_spectrum(g)
    l1, ln, n = lam.largest, lam.smallest, g.n
    parts = distance_partition(g, u)
    delta, alpha = rho_norm(nu, parts[0]), rho_norm(nu, parts[1])
    base = {
        "n": n,
        "odd_girth": og.value,
        "u": u,
        "partition_sizes": [len(p) for p in parts],
        "delta": delta,
        "alpha": alpha,
        "lambda1": l1,
        "lambdan": ln,
        "ratio": (l1 + ln) / n,
        "heavy_vertex_slack": float(neighborhood_weights(g, nu)[u] - l1 / n),
    }
    if not parts[2]:
        q = build_quotient(g, parts[:2], nu)
        base.update({"M": q.M, "mu": q.mu})
        return Certificate(
            "girth7",
            "not-applicable",
            base,
            reason="no vertex at distance >= 3 from u; only a 2-class quotient exists",
        )

    q = build_quotient(g, parts, nu)
    m = q.M
    lam3 = float(q.mu[-1])
    lam3_closed = girth7_lambda3_closed_form(l1, delta, alpha)
    bound = girth7_upper_bound().value
    objective = girth7_objective(delta, alpha) if 0 < delta < alpha < 0.5 else float("nan")
    checks = {
        "M11_zero": abs(m[0, 0]) <= tol,
        "M13_zero": abs(m[0, 2]) <= tol,
        "M31_zero": abs(m[2, 0]) <= tol,
        "rows_sum_to_lambda1": bool(np.all(np.abs(m.sum(axis=1) - l1) <= tol * max(1, l1))),
        "M21_is_lambda1_delta_over_alpha": abs(m[1, 0] - l1 * delta / alpha) <= tol * max(1, l1),
        "heavy_vertex_weight": base["heavy_vertex_slack"] >= -1e-10,
        "delta_lt_alpha_lt_half": 0 < delta < alpha < 0.5,
        "lambda3_closed_form_matches": abs(lam3 - lam3_closed) <= 1e-7 * max(1, l1),
        "lambda3_ge_lambdan": lam3 >= ln - tol,
        "quotient_ratio_le_bound": (l1 + lam3) / n <= bound + tol,
        "objective_le_bound": objective <= bound + tol,
    }
    base.update(
        {
            "M": m,
            "mu": q.mu,
            "lambda3_M": lam3,
            "lambda3_closed_form": lam3_closed,
            "quotient_ratio": (l1 + lam3) / n,
            "objective": objective,
            "girth7_bound": bound,
            "slack_lambda3_minus_lambdan": lam3 - ln,
            "slack_bound_minus_quotient_ratio": bound - (l1 + lam3) / n,
            "checks": checks,
        }
    )
    return Certificate("girth7", "valid" if all(checks.values()) else "invalid", base)
