"""Adjacency and signless-Laplacian spectra, Perron vectors, closed-form spectra."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from oddgirth.errors import InvalidParameter
from oddgirth.graph import Graph, is_connected

PERRON_STEP_TOL = 1e-12
PERRON_MAX_ITER = 1_000_000


@dataclass(frozen=True)
class Spectrum:
    """Real eigenvalues sorted in descending order."""

    eigenvalues: np.ndarray

    def __post_init__(self):
        ev = np.sort(np.asarray(self.eigenvalues, dtype=float))[::-1].copy()
        ev.setflags(write=False)
        object.__setattr__(self, "eigenvalues", ev)

    def __len__(self):
        return len(self.eigenvalues)

    def __getitem__(self, i):
        return self.eigenvalues[i]

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def smallest(self) -> float:
        return float(self.eigenvalues[-1])

    def multiplicities(self, tol: float = 1e-8) -> list[tuple[float, int]]:
        """Distinct eigenvalues (descending) with multiplicities, clustered at ``tol``."""
        out: list[tuple[float, int]] = []
        for x in self.eigenvalues:
            if out and abs(out[-1][0] - x) <= tol:
                out[-1] = (out[-1][0], out[-1][1] + 1)
            else:
                out.append((float(x), 1))
        return out


def _require_nonempty(g: Graph):
    if g.n == 0:
        raise InvalidParameter("spectrum of the empty graph is undefined")


def adjacency_spectrum(g: Graph) -> Spectrum:
    _require_nonempty(g)
    return Spectrum(np.linalg.eigvalsh(g.adjacency_matrix()))


def signless_laplacian_spectrum(g: Graph) -> Spectrum:
    """Spectrum of Q = A + D."""
    _require_nonempty(g)
    q = g.adjacency_matrix() + np.diag(g.degrees().astype(float))
    return Spectrum(np.linalg.eigvalsh(q))


def spectral_ratio(g: Graph) -> float:
    """(lambda_1 + lambda_n) / n."""
    sp = adjacency_spectrum(g)
    return (sp.largest + sp.smallest) / g.n


@dataclass(frozen=True)
class PerronVector:
    entries: np.ndarray
    eigenvalue: float
    iterations: int

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.entries))

    def __getitem__(self, u):
        return self.entries[u]

    def __len__(self):
        return len(self.entries)


def perron_vector(g: Graph) -> PerronVector:
    """Positive unit eigenvector of lambda_1 for a connected graph.

    Power iteration runs on A + I: the shift keeps the dominant eigenvalue
    strictly ahead of -lambda_1 so bipartite graphs do not oscillate.  The
    eigenvalue is the Rayleigh quotient of the final iterate.
    """
    _require_nonempty(g)
    if not is_connected(g):
        raise InvalidParameter("perron_vector needs a connected graph; split into components first")
    a = g.adjacency_matrix()
    shifted = a + np.eye(g.n)
    x = np.full(g.n, 1.0 / math.sqrt(g.n))
    it = 0
    for it in range(1, PERRON_MAX_ITER + 1):
        y = shifted @ x
        y /= np.linalg.norm(y)
        step = np.linalg.norm(y - x)
        x = y
        if step < PERRON_STEP_TOL:
            break
    else:
        raise ArithmeticError(f"power iteration did not converge in {PERRON_MAX_ITER} steps")
    lam = float(x @ a @ x)
    x = np.abs(x)
    x /= np.linalg.norm(x)
    x.setflags(write=False)
    return PerronVector(x, lam, it)


# --- closed forms ------------------------------------------------------------


def cayley_f2_spectrum(m: int, generators: Iterable[int]) -> Spectrum:
    """Character formula: the eigenvalue at x is sum over generators s of (-1)^(x.s)."""
    gens = sorted(set(int(s) for s in generators))
    if m < 1:
        raise InvalidParameter(f"dimension must be >= 1, got {m}")
    if not gens:
        raise InvalidParameter("generating set is empty")
    if gens[0] == 0:
        raise InvalidParameter("zero vector in generating set would create loops")
    if gens[-1] >= 1 << m:
        raise InvalidParameter(f"generator {gens[-1]:#x} is not in F_2^{m}")
    x = np.arange(1 << m)
    ev = np.zeros(1 << m)
    for s in gens:
        parity = np.array([bin(v).count("1") & 1 for v in (x & s).tolist()])
        ev += 1 - 2 * parity
    return Spectrum(ev)


def cycle_spectrum(k: int) -> Spectrum:
    return Spectrum(2 * np.cos(2 * np.pi * np.arange(k) / k))


@dataclass(frozen=True)
class SrgParams:
    n: int
    k: int
    lam: int
    mu: int

    def __post_init__(self):
        n, k, lam, mu = self.n, self.k, self.lam, self.mu
        if min(n, k, lam, mu) < 0 or k >= n:
            raise InvalidParameter(f"invalid strongly regular parameters {self.astuple()}")
        if k * (k - lam - 1) != (n - k - 1) * mu:
            raise InvalidParameter(
                f"parameters {self.astuple()} violate k(k-lambda-1) = (n-k-1)mu"
            )

    def astuple(self):
        return (self.n, self.k, self.lam, self.mu)


@dataclass(frozen=True)
class SrgSpectrum:
    """Eigenvalues k > theta > tau with multiplicities 1, f, g (zero-multiplicity ones dropped)."""

    k: float
    theta: float
    tau: float
    f: float
    g: float

    def eigenvalues(self) -> list[tuple[float, float]]:
        return [(v, m) for v, m in ((self.k, 1), (self.theta, self.f), (self.tau, self.g)) if m > 1e-9]

    @property
    def smallest(self) -> float:
        return min(v for v, _ in self.eigenvalues())

    def ratio(self, n: int) -> float:
        return (self.k + self.smallest) / n


def srg_spectrum(p: SrgParams) -> SrgSpectrum:
    n, k, lam, mu = p.astuple()
    disc = (lam - mu) ** 2 + 4 * (k - mu)
    if disc < 0:
        raise InvalidParameter(f"negative discriminant for {p.astuple()}")
    root = math.sqrt(disc)
    theta = ((lam - mu) + root) / 2
    tau = ((lam - mu) - root) / 2
    if root == 0:
        raise InvalidParameter(f"degenerate parameters {p.astuple()}")
    skew = (2 * k + (n - 1) * (lam - mu)) / root
    f = ((n - 1) - skew) / 2
    g = ((n - 1) + skew) / 2
    if f < -1e-9 or g < -1e-9:
        raise InvalidParameter(f"negative multiplicity for {p.astuple()}")
    return SrgSpectrum(float(k), theta, tau, f, g)


HIGMAN_SIMS = SrgParams(100, 22, 0, 6)
