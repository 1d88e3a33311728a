import math

import numpy as np
import pytest

from thetaspan.geometry import ConeSystem, validate_general_position

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def random_points(rng, n: int, m: int, scale: float = 1.0) -> np.ndarray:
    """Uniform points in a square, redrawn until they are in general position."""
    cs = ConeSystem(m)
    while True:
        P = rng.random((n, 2)) * scale
        if validate_general_position(P, cs).ok:
            return P


def brute_force_theta_edges(P, m):
    """Pairwise-scan oracle written independently of the library:
    {(u, cone): v} with v minimising the bisector projection."""
    theta = 2 * math.pi / m
    best = {}
    for u in range(len(P)):
        for v in range(len(P)):
            if u == v:
                continue
            dx, dy = P[v][0] - P[u][0], P[v][1] - P[u][1]
            phi = math.atan2(dx, dy) % (2 * math.pi)
            i = int(math.floor((phi + theta / 2) / theta)) % m
            proj = dx * math.sin(i * theta) + dy * math.cos(i * theta)
            key = (proj, math.hypot(dx, dy), v)
            if (u, i) not in best or key < best[(u, i)][0]:
                best[(u, i)] = (key, v)
    return {k: v for k, (_, v) in best.items()}


def floyd_warshall(n, edges, P):
    D = np.full((n, n), np.inf)
    np.fill_diagonal(D, 0.0)
    for u, _, v in edges:
        w = math.dist(P[u], P[v])
        D[u, v] = D[v, u] = min(D[u, v], w)
    for k in range(n):
        D = np.minimum(D, D[:, k:k + 1] + D[k:k + 1, :])
    return D


def record_acceptance(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture
def rng():
    return rng_for(12345)
