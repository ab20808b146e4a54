"""SIR-constrained multi-user selection along a shared angular direction.

Two matched-filter-served users interfere through the inner product of their
normalized channels; the pairwise SIR is the inverse squared magnitude of
that inner product. Users whose pairwise SIRs all exceed a threshold form a
clique in the compatibility graph, and the scheduler below greedily
approximates the maximum such clique by walking outward from the transmitter.
"""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .arrays import TxArray, channel_matrix
from .em import Medium, Model
from .errors import ConfigError, NullChannelError

MAX_EXACT_CLIQUE_NODES = 25


@dataclass(frozen=True)
class UserSet:
    """Candidate receive positions, indexed 0..K-1 in the given order."""

    positions: np.ndarray

    def __post_init__(self):
        positions = np.atleast_2d(np.asarray(self.positions, dtype=float))
        if positions.ndim != 2 or positions.shape[1] != 3:
            raise ConfigError("UserSet.positions must have shape (K, 3)")
        if len(np.unique(positions, axis=0)) != len(positions):
            raise ConfigError("user positions must be pairwise distinct")
        object.__setattr__(self, "positions", positions)

    @property
    def k(self) -> int:
        return len(self.positions)


def z_axis_users(count: int, d_min: float, d_max: float) -> UserSet:
    """``count`` users equally spaced on (0, 0, d), endpoints included."""
    if count < 1:
        raise ConfigError("need at least one user")
    if not 0.0 < d_min <= d_max:
        raise ConfigError("need 0 < d_min <= d_max")
    if count > 1 and d_min == d_max:
        raise ConfigError("coincident users: d_min == d_max with count > 1")
    d = np.linspace(d_min, d_max, count)
    return UserSet(np.column_stack([np.zeros(count), np.zeros(count), d]))


@dataclass(frozen=True)
class SirGraph:
    """Compatibility graph: an edge marks a user pair whose SIR beats the threshold."""

    k: int
    adjacency: np.ndarray
    gamma: float


@dataclass(frozen=True)
class ScheduleResult:
    selected: list[int]
    sir_matrix: np.ndarray
    profiles: Optional[dict] = field(default=None, compare=False)


def _entries(g) -> np.ndarray:
    return np.asarray(getattr(g, "entries", g))


def sir(g_k, g_l) -> float:
    """Pairwise SIR of two matched-filter-served channels: |ghat_k^H ghat_l|**-2.

    Symmetric in its arguments, always >= 1 (Cauchy-Schwarz is enforced by
    clamping the normalized inner product at unit magnitude), and +inf for
    exactly orthogonal channels.
    """
    a = _entries(g_k)
    b = _entries(g_l)
    if a.shape != b.shape:
        raise ConfigError(f"length mismatch: {a.shape[0]} vs {b.shape[0]} channel entries")
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    if na == 0.0 or nb == 0.0:
        raise NullChannelError("null channel, SIR undefined")
    ip = np.vdot(a, b) / (na * nb)
    ipsq = min(ip.real * ip.real + ip.imag * ip.imag, 1.0)
    if ipsq == 0.0:
        return float("inf")
    return 1.0 / ipsq


def normalized_channel_matrix(
    users: UserSet,
    array: TxArray,
    medium: Medium,
    model: Model = Model.NEAR,
    quadrature_order: int = 8,
) -> np.ndarray:
    """Row-wise unit-norm channel vectors for every user, shape (K, N)."""
    g = channel_matrix(array, users.positions, medium, model, quadrature_order)
    norms = np.linalg.norm(g, axis=1)
    if np.any(norms == 0.0):
        bad = int(np.flatnonzero(norms == 0.0)[0])
        raise NullChannelError(f"null channel, SIR undefined (user index {bad})")
    return g / norms[:, np.newaxis]


def sir_matrix_from_channels(ghat: np.ndarray) -> np.ndarray:
    """K x K linear SIR values from normalized channels; computed once and mirrored."""
    k = len(ghat)
    gram = ghat @ ghat.conj().T
    ipsq = np.minimum(gram.real**2 + gram.imag**2, 1.0)
    iu = np.triu_indices(k, 1)
    out = np.ones((k, k))
    with np.errstate(divide="ignore"):
        upper = 1.0 / ipsq[iu]
    out[iu] = upper
    out.T[iu] = upper
    return out


def build_graph(
    users: UserSet,
    gamma_db: float,
    array: TxArray,
    medium: Medium,
    model: Model = Model.NEAR,
    quadrature_order: int = 8,
) -> SirGraph:
    """Compatibility graph at a dB threshold; edges where pairwise SIR > gamma."""
    gamma = 10.0 ** (gamma_db / 10.0)
    s = sir_matrix_from_channels(
        normalized_channel_matrix(users, array, medium, model, quadrature_order)
    )
    adjacency = s > gamma
    np.fill_diagonal(adjacency, False)
    return SirGraph(users.k, adjacency, gamma)


def select_users(sir_matrix: np.ndarray, distances: np.ndarray, gamma: float) -> list[int]:
    """Greedy selection core: admit the closest remaining candidate, then drop conflicts.

    Each round admits the candidate closest to the origin (lowest index on
    ties) and discards every candidate whose SIR against it does not exceed
    ``gamma`` (linear). The admitted set is a clique of the compatibility
    graph at the same threshold.
    """
    remaining = list(range(len(distances)))
    selected: list[int] = []
    while remaining:
        x = min(remaining, key=lambda i: (distances[i], i))
        selected.append(x)
        # SIR(x, x) = 1 removes x itself whenever gamma >= 1; discard it
        # explicitly as well so sub-unity thresholds also terminate
        remaining = [y for y in remaining if sir_matrix[x, y] > gamma and y != x]
    return selected


def heuristic_select(
    users: UserSet,
    gamma_db: float,
    array: TxArray,
    medium: Medium,
    model: Model = Model.NEAR,
    quadrature_order: int = 8,
) -> ScheduleResult:
    """Greedy user selection walking outward from the transmitter."""
    s = sir_matrix_from_channels(
        normalized_channel_matrix(users, array, medium, model, quadrature_order)
    )
    dist = np.linalg.norm(users.positions, axis=1)
    selected = select_users(s, dist, 10.0 ** (gamma_db / 10.0))
    return ScheduleResult(selected, s)


def exact_max_clique(graph: SirGraph) -> list[int]:
    """Maximum clique by branch and bound; exponential, capped at small graphs."""
    k = graph.k
    if k > MAX_EXACT_CLIQUE_NODES:
        raise ConfigError(
            f"instance too large for exact oracle: K = {k} > {MAX_EXACT_CLIQUE_NODES}"
        )
    adjacency = np.asarray(graph.adjacency, dtype=bool)
    masks = [int(sum(1 << j for j in np.flatnonzero(adjacency[i]))) for i in range(k)]
    best: list[int] = []

    def expand(clique: list[int], candidates: int) -> None:
        nonlocal best
        if not candidates:
            if len(clique) > len(best):
                best = clique.copy()
            return
        while candidates:
            if len(clique) + candidates.bit_count() <= len(best):
                return
            v = (candidates & -candidates).bit_length() - 1
            candidates &= candidates - 1  # branch without v continues this loop
            clique.append(v)
            expand(clique, candidates & masks[v])
            clique.pop()

    expand([], (1 << k) - 1)
    return sorted(best)
