"""Optimal Lipschitz bounds and condition numbers of phaseless measurement maps.

Two routes to the lower constant: exact subset enumeration (real field,
exponential in m, capped) and constrained numerical minimization over
orthogonal pairs (both fields).  The upper constant is always the spectral
norm.  Also provides the universal condition-number floors and a derivative-
free optimizer probing the best m x 2 real frame.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import workers
from .linalg import (
    Field,
    FieldMismatchError,
    dist,
    eig_hermitian,
    field_of,
    lambda_min_2x2_batch,
    lambda_min_3x3_batch,
    phaseless_map,
    spectral_norm,
)

ENUMERATION_CAP = 24
ENUM_CHUNK = 1 << 16
ZERO_LOWER_FACTOR = 1e-10  # lower <= factor * upper declares beta = inf

METHOD_EXACT = "exact_real_subset"
METHOD_NUMERIC = "numeric_orth_pair"


class EnumerationCapError(ValueError):
    """Exact enumeration requested beyond the subset cap."""

    def __init__(self, m: int):
        super().__init__(
            f"exact subset enumeration is capped at m={ENUMERATION_CAP} rows "
            f"(got m={m}); use the numeric orthogonal-pair method instead"
        )


@dataclass(frozen=True)
class PairCertificate:
    """Orthogonal pair achieving a candidate lower-constant value.

    x is unit, y = t*u for a unit u orthogonal to x and t in [0, 1]; `ratio`
    is |||Ax| - |Ay||| / dist(x, y) at the pair.
    """

    x: np.ndarray
    y: np.ndarray
    ratio: float
    iterations: int
    restarts: int


@dataclass(frozen=True)
class StabilityReport:
    upper: float
    lower: float
    beta: float
    method: str
    lower_certificate: tuple[int, ...] | PairCertificate | None = None
    bounds: dict = dc_field(default_factory=dict)


@dataclass(frozen=True)
class FramePolar:
    """Polar parameterization of a real m x 2 frame: rows t_i (cos f_i, sin f_i)."""

    radii: np.ndarray
    angles: np.ndarray

    def rows(self) -> np.ndarray:
        return np.stack(
            [self.radii * np.cos(self.angles), self.radii * np.sin(self.angles)], axis=1
        )


def upper_lipschitz(A: np.ndarray) -> float:
    """Optimal upper constant: the spectral norm of the matrix."""
    return spectral_norm(A)


def _subset_gram_terms(A: np.ndarray) -> np.ndarray:
    """Per-row rank-1 Gram terms packed for the batch lambda_min closed forms."""
    d = A.shape[1]
    if d == 1:
        return (A[:, 0] ** 2)[:, None]
    if d == 2:
        return np.stack([A[:, 0] ** 2, A[:, 0] * A[:, 1], A[:, 1] ** 2], axis=1)
    if d == 3:
        return np.stack(
            [
                A[:, 0] ** 2,
                A[:, 1] ** 2,
                A[:, 2] ** 2,
                A[:, 0] * A[:, 1],
                A[:, 0] * A[:, 2],
                A[:, 1] * A[:, 2],
            ],
            axis=1,
        )
    return np.einsum("mi,mj->mij", A, A).reshape(A.shape[0], d * d)


def _lambda_min_batch(g: np.ndarray, d: int) -> np.ndarray:
    if d == 1:
        return np.maximum(g[:, 0], 0.0)
    if d == 2:
        return lambda_min_2x2_batch(g)
    if d == 3:
        return lambda_min_3x3_batch(g)
    out = np.empty(g.shape[0])
    for i in range(g.shape[0]):
        out[i] = max(eig_hermitian(g[i].reshape(d, d))[0], 0.0)
    return out


def _reduce_over_splits(A: np.ndarray, reduce_chunk, threads: int = 1) -> list:
    """Apply a chunk reducer over all complementary-pair representatives.

    Masks range over subsets of the first m-1 rows, so each pair {I, I^c} is
    visited exactly once (the last row always sits in the complement).  The
    reducer sees (masks, lam_I, lam_C) for one contiguous chunk and returns a
    small summary, keeping memory flat for the largest enumerations.
    """
    m, d = A.shape
    terms = _subset_gram_terms(A)
    total = terms.sum(axis=0)
    nrep = 1 << (m - 1)
    shifts = np.arange(m - 1, dtype=np.uint64)

    def do_chunk(rng: tuple[int, int]):
        lo, hi = rng
        masks = np.arange(lo, hi, dtype=np.uint64)
        bits = ((masks[:, None] >> shifts[None, :]) & 1).astype(np.float64)
        g_subset = bits @ terms[: m - 1]
        g_complement = total[None, :] - g_subset
        return reduce_chunk(
            masks, _lambda_min_batch(g_subset, d), _lambda_min_batch(g_complement, d)
        )

    chunks = workers.chunk_ranges(nrep, ENUM_CHUNK)
    return workers.run_indexed(do_chunk, chunks, threads)


def _require_real_enumerable(A: np.ndarray) -> None:
    if field_of(A) is Field.COMPLEX:
        raise FieldMismatchError(
            "exact subset enumeration is defined for the real field only; "
            "use the numeric orthogonal-pair method for complex matrices"
        )
    if A.shape[0] > ENUMERATION_CAP:
        raise EnumerationCapError(A.shape[0])


def lower_lipschitz_exact_real(A: np.ndarray, threads: int = 1) -> tuple[float, tuple[int, ...]]:
    """Exact optimal lower constant of a real matrix, with a minimizing subset.

    Minimizes sqrt(lambda_min(G_I) + lambda_min(G_{I^c})) over row splits;
    the empty side contributes 0.  Returns (value, subset indices).
    """
    _require_real_enumerable(A)
    m = A.shape[0]

    def chunk_min(masks, lam_i, lam_c):
        tot = lam_i + lam_c
        k = int(np.argmin(tot))
        return float(tot[k]), int(masks[k])

    best_val, best_mask = min(_reduce_over_splits(A, chunk_min, threads))
    subset = tuple(i for i in range(m - 1) if (best_mask >> i) & 1)
    return float(np.sqrt(max(best_val, 0.0))), subset


def split_bound(A: np.ndarray, threads: int = 1) -> float:
    """Min over row splits of the larger of the two smallest-eigenvalue roots.

    Sandwiches the exact lower constant within a factor of sqrt(2).
    """
    _require_real_enumerable(A)

    def chunk_min(masks, lam_i, lam_c):
        return float(np.maximum(np.sqrt(lam_i), np.sqrt(lam_c)).min())

    return min(_reduce_over_splits(A, chunk_min, threads))


def _ratio_sq_min_over_scale(A: np.ndarray, X: np.ndarray, U: np.ndarray) -> np.ndarray:
    """Columnwise min over t in [0,1] of |||Ax| - t|Au|||^2 / (1 + t^2).

    X, U hold unit orthogonal pairs.  With p = ||Ax||^2, r = ||Au||^2 and
    q = sum_i |a_i x||a_i u|, the objective is (p - 2tq + t^2 r)/(1 + t^2)
    whose interior critical point solves q t^2 + (r - p) t - q = 0; the
    positive root is taken in closed form and clamped to [0, 1].
    """
    AX = np.abs(A @ X)
    AU = np.abs(A @ U)
    p = (AX**2).sum(axis=0)
    r = (AU**2).sum(axis=0)
    q = (AX * AU).sum(axis=0)
    disc = np.sqrt((p - r) ** 2 + 4 * q * q)
    with np.errstate(divide="ignore", invalid="ignore"):
        t_star = np.where(q > 0, ((p - r) + disc) / (2 * q), 0.0)
    t_star = np.clip(np.nan_to_num(t_star), 0.0, 1.0)

    def val(t):
        return (p - 2 * t * q + t * t * r) / (1 + t * t)

    ones = np.ones_like(p)
    return np.minimum(np.minimum(p, val(ones)), val(t_star))


def _best_scale(A: np.ndarray, x: np.ndarray, u: np.ndarray) -> float:
    AX = np.abs(A @ x)
    AU = np.abs(A @ u)
    p = float((AX**2).sum())
    r = float((AU**2).sum())
    q = float((AX * AU).sum())
    cands = [0.0, 1.0]
    if q > 0:
        disc = np.sqrt((p - r) ** 2 + 4 * q * q)
        cands.append(float(np.clip(((p - r) + disc) / (2 * q), 0.0, 1.0)))
    vals = [(p - 2 * t * q + t * t * r) / (1 + t * t) for t in cands]
    return cands[int(np.argmin(vals))]


def _orthonormalize_batch(Z: np.ndarray, d: int):
    """Rows (x_raw | u_raw) -> unit x, unit u with <x, u> = 0; flags failures."""
    X = Z[:, :d].copy()
    U = Z[:, d:].copy()
    nx = np.linalg.norm(X, axis=1)
    ok = nx > 1e-12
    X[ok] /= nx[ok, None]
    proj = np.sum(np.conj(X) * U, axis=1)
    U = U - proj[:, None] * X
    nu = np.linalg.norm(U, axis=1)
    ok &= nu > 1e-12
    U[ok] /= nu[ok, None]
    return X, U, ok


def _pair_pattern_search(
    A: np.ndarray,
    Z0: np.ndarray,
    rng: np.random.Generator,
    h0: float = 0.5,
    hmin: float = 1e-8,
    max_iter: int = 4000,
):
    """Batched pattern search over raw (x, u) charts, one state per row of Z0.

    Polls a randomized orthonormal direction set each iteration; steps halve
    on failure.  The objective is non-smooth at measurement-hyperplane
    crossings, so randomized polling avoids coordinate-direction stalls.
    """
    d = A.shape[1]
    cplx = np.iscomplexobj(A)
    Z = Z0.astype(np.complex128 if cplx else np.float64).copy()
    ns, n = Z.shape
    X, U, ok = _orthonormalize_batch(Z, d)
    vals = _ratio_sq_min_over_scale(A, X.T, U.T)
    vals[~ok] = np.inf
    h = np.full(ns, h0)
    it = 0
    while it < max_iter and (h > hmin).any():
        it += 1
        Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
        dirs = np.vstack([Q.T, -Q.T])
        if cplx:
            dirs = np.vstack([dirs, 1j * dirs[: 2 * n]])
        act = np.flatnonzero(h > hmin)
        cand = (Z[act, None, :] + h[act, None, None] * dirs[None, :, :]).reshape(-1, n)
        Xc, Uc, okc = _orthonormalize_batch(cand, d)
        v = _ratio_sq_min_over_scale(A, Xc.T, Uc.T)
        v[~okc] = np.inf
        v = v.reshape(len(act), -1)
        kb = np.argmin(v, axis=1)
        vb = v[np.arange(len(act)), kb]
        impr = vb < vals[act] - 1e-15
        took = act[impr]
        Z[took] = cand.reshape(len(act), -1, n)[impr, kb[impr]]
        vals[took] = vb[impr]
        h[act[~impr]] *= 0.5
    return Z, vals, it


def _golden_refine(fun, lo: float, hi: float, tol: float = 1e-12, max_iter: int = 200):
    """Golden-section minimization of a scalar function on [lo, hi]."""
    invphi = (np.sqrt(5) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    e = a + invphi * (b - a)
    fc, fe = fun(c), fun(e)
    for _ in range(max_iter):
        if b - a < tol:
            break
        if fc < fe:
            b, e, fe = e, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, e, fe
            e = a + invphi * (b - a)
            fe = fun(e)
    return (c, fc) if fc < fe else (e, fe)


def _pairs_real_d2(theta: np.ndarray):
    X = np.stack([np.cos(theta), np.sin(theta)])
    U = np.stack([np.sin(theta), -np.cos(theta)])
    return X, U


def _pairs_complex_d2(theta: np.ndarray, gamma: np.ndarray):
    ct, st = np.cos(theta), np.sin(theta)
    eg = np.exp(1j * gamma)
    X = np.stack([ct.astype(complex), st * eg])
    U = np.stack([st.astype(complex), -ct * eg])
    return X, U


def _numeric_lower_d2_real(A: np.ndarray, grid: int = 1024):
    theta = np.linspace(0.0, np.pi, grid, endpoint=False)
    X, U = _pairs_real_d2(theta)
    vals = _ratio_sq_min_over_scale(A, X, U)
    step = np.pi / grid

    def f(th: float) -> float:
        Xs, Us = _pairs_real_d2(np.array([th]))
        return float(_ratio_sq_min_over_scale(A, Xs, Us)[0])

    best_t, best_v = None, np.inf
    for k in np.argsort(vals)[:6]:
        th, v = _golden_refine(f, theta[k] - step, theta[k] + step)
        if v < best_v:
            best_t, best_v = th, v
    Xb, Ub = _pairs_real_d2(np.array([best_t]))
    return Xb[:, 0], Ub[:, 0], float(best_v), grid


def _numeric_lower_d2_complex(A: np.ndarray, rng: np.random.Generator, grid: int = 64):
    m = A.shape[0]
    th = np.linspace(0.0, np.pi / 2, grid)
    ga = np.linspace(0.0, 2 * np.pi, 2 * grid, endpoint=False)
    T, G = np.meshgrid(th, ga, indexing="ij")
    tt, gg = T.ravel(), G.ravel()
    # chunk the grid so m x ncols work arrays stay modest at large m
    cols = tt.size
    chunk = max(1, min(cols, (1 << 22) // max(m, 1)))
    vals = np.empty(cols)
    for lo, hi in workers.chunk_ranges(cols, chunk):
        X, U = _pairs_complex_d2(tt[lo:hi], gg[lo:hi])
        vals[lo:hi] = _ratio_sq_min_over_scale(A, X, U)
    seeds = np.argsort(vals)[:12]
    X0, U0 = _pairs_complex_d2(tt[seeds], gg[seeds])
    Z0 = np.concatenate([X0.T, U0.T], axis=1)
    Z, v2, it = _pair_pattern_search(A, Z0, rng, h0=0.1, hmin=1e-9, max_iter=2500)
    k = int(np.argmin(v2))
    X, U, _ = _orthonormalize_batch(Z[k : k + 1], 2)
    return X[0], U[0], float(min(vals[seeds[0]], v2[k])), it


def lower_lipschitz_numeric(
    A: np.ndarray,
    restarts: int = 32,
    max_iters: int = 4000,
    tol: float = 1e-9,
    seed: int = 0,
) -> tuple[float, PairCertificate]:
    """Best found value of the constrained orthogonal-pair minimization.

    Searches pairs (x, u) with ||x|| = 1, ||u|| = 1, <x, u> = 0 and resolves
    the scale of y = t*u in closed form; the returned value is always an
    upper bound on the true optimal lower constant.  d = 2 uses dense angle
    grids (with golden-section refinement over the single real angle);
    higher d uses random orthonormal restarts plus pattern search.
    """
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    m, d = A.shape
    if d == 1:
        # the only admissible pair is (x, 0); the ratio is ||A|| for any unit x
        x = np.ones(1, dtype=A.dtype)
        y = np.zeros(1, dtype=A.dtype)
        ratio = float(np.linalg.norm(phaseless_map(A, x)))
        return ratio, PairCertificate(x=x, y=y, ratio=ratio, iterations=0, restarts=restarts)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(101,)))
    cands: list[tuple[float, np.ndarray, np.ndarray]] = []

    if d == 2 and field_of(A) is Field.REAL:
        # dense single-angle grid plus golden-section refinement is global here
        x, u, v, iterations = _numeric_lower_d2_real(A)
        cands.append((v, x, u))
    elif d == 2:
        x, u, v, iterations = _numeric_lower_d2_complex(A, rng)
        cands.append((v, x, u))
    else:
        cplx = field_of(A) is Field.COMPLEX
        n = 2 * d
        Z0 = rng.standard_normal((restarts, n))
        if cplx:
            Z0 = Z0 + 1j * rng.standard_normal((restarts, n))
        # coordinate pairs are cheap, deterministic extra seeds
        extra = []
        for i in range(d):
            for j in range(d):
                if i != j:
                    z = np.zeros(n, dtype=complex if cplx else float)
                    z[i] = 1.0
                    z[d + j] = 1.0
                    extra.append(z)
        Z0 = np.vstack([Z0] + [np.array(extra)]) if extra else Z0
        Z, vals, iterations = _pair_pattern_search(
            A, Z0, rng, hmin=tol * 1e-2, max_iter=max_iters
        )
        k = int(np.argmin(vals))
        X, U, ok = _orthonormalize_batch(Z[k : k + 1], d)
        if ok[0]:
            cands.append((float(vals[k]), X[0], U[0]))

    best_v, best_x, best_u = min(cands, key=lambda c: c[0])
    t = _best_scale(A, best_x, best_u)
    y = t * best_u
    denom = dist(best_x, y)
    ratio = float(np.linalg.norm(phaseless_map(A, best_x) - phaseless_map(A, y)) / denom)
    cert = PairCertificate(
        x=best_x, y=y, ratio=ratio, iterations=iterations, restarts=restarts
    )
    return ratio, cert


def universal_lower_bound(field: Field) -> float:
    """Field-dependent floor on every condition number.

    sqrt(pi/(pi-2)) for the real field, sqrt(4/(4-pi)) for the complex one.
    """
    if field is Field.REAL:
        return float(np.sqrt(np.pi / (np.pi - 2)))
    if field is Field.COMPLEX:
        return float(np.sqrt(4.0 / (4.0 - np.pi)))
    raise ValueError(f"unknown field {field!r}")


def real_beta_lower_bound(m: int) -> float:
    """Row-count-dependent floor for real matrices: 1/sqrt(1 - 1/(m sin(pi/2m))).

    Monotone decreasing in m; tends to the real universal floor.
    """
    m = int(m)
    if m < 3:
        raise ValueError(f"bound requires m >= 3, got {m}")
    return float(1.0 / np.sqrt(1.0 - 1.0 / (m * np.sin(np.pi / (2 * m)))))


def condition_number(
    A: np.ndarray,
    method: str = METHOD_EXACT,
    restarts: int = 32,
    max_iters: int = 4000,
    tol: float = 1e-9,
    seed: int = 0,
    threads: int = 1,
) -> StabilityReport:
    """Assemble upper and lower constants into a stability report.

    `method` is "exact_real_subset" (real matrices up to the enumeration cap)
    or "numeric_orth_pair".  beta is +inf when the lower constant sits below
    the scale-invariant zero threshold.
    """
    upper = upper_lipschitz(A)
    if method == METHOD_EXACT:
        lower, cert = lower_lipschitz_exact_real(A, threads=threads)
        certificate: tuple[int, ...] | PairCertificate = cert
    elif method == METHOD_NUMERIC:
        lower, certificate = lower_lipschitz_numeric(
            A, restarts=restarts, max_iters=max_iters, tol=tol, seed=seed
        )
    else:
        raise ValueError(f"unknown method {method!r}")
    if lower <= ZERO_LOWER_FACTOR * upper:
        beta = np.inf
    else:
        beta = upper / lower
    bounds = {"beta0": universal_lower_bound(field_of(A))}
    if field_of(A) is Field.REAL and A.shape[0] >= 3:
        bounds["real_md_bound"] = real_beta_lower_bound(A.shape[0])
    return StabilityReport(
        upper=upper,
        lower=lower,
        beta=float(beta),
        method=method,
        lower_certificate=certificate,
        bounds=bounds,
    )


def _frame_beta_batch(rows: np.ndarray) -> np.ndarray:
    """Exact condition numbers for a batch of m x 2 real frames."""
    B, m, _ = rows.shape
    terms = np.stack(
        [rows[:, :, 0] ** 2, rows[:, :, 0] * rows[:, :, 1], rows[:, :, 1] ** 2], axis=2
    )
    tot = terms.sum(axis=1)
    n = 1 << (m - 1)
    bits = ((np.arange(n)[:, None] >> np.arange(m - 1)[None, :]) & 1).astype(float)
    g_subset = np.einsum("nk,bkt->bnt", bits, terms[:, : m - 1])
    g_complement = tot[:, None, :] - g_subset
    delta_sq = (lambda_min_2x2_batch(g_subset) + lambda_min_2x2_batch(g_complement)).min(axis=1)
    lam_max = (tot[:, 0] + tot[:, 2]) / 2 + np.sqrt(
        ((tot[:, 0] - tot[:, 2]) / 2) ** 2 + tot[:, 1] ** 2
    )
    with np.errstate(divide="ignore", invalid="ignore"):
        return np.where(
            delta_sq > (ZERO_LOWER_FACTOR**2) * lam_max,
            np.sqrt(lam_max / np.maximum(delta_sq, 1e-300)),
            np.inf,
        )


def _frames_from_params(P: np.ndarray, m: int) -> np.ndarray:
    """Gauge-fixed frames: first angle 0, radii scaled to sum of squares m."""
    B = P.shape[0]
    ang = np.concatenate([np.zeros((B, 1)), P[:, : m - 1]], axis=1)
    rad = np.abs(P[:, m - 1 :])
    rad = rad * np.sqrt(m) / np.maximum(np.linalg.norm(rad, axis=1, keepdims=True), 1e-12)
    return np.stack([rad * np.cos(ang), rad * np.sin(ang)], axis=2)


def _frames_angles_only(P: np.ndarray, m: int) -> np.ndarray:
    B = P.shape[0]
    ang = np.concatenate([np.zeros((B, 1)), P], axis=1)
    return np.stack([np.cos(ang), np.sin(ang)], axis=2)


def _polling_search(P, m, make, h0, hmin, rng, max_iter=8000, shrink=0.6, expand=1.0, sets=1):
    n = P.shape[1]
    vals = _frame_beta_batch(make(P, m))
    h = np.full(P.shape[0], h0)
    it = 0
    while it < max_iter and (h > hmin).any():
        it += 1
        blocks = []
        for _ in range(sets):
            Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
            blocks.extend([Q.T, -Q.T])
        dirs = np.vstack(blocks)
        act = np.flatnonzero(h > hmin)
        cand = (P[act, None, :] + h[act, None, None] * dirs[None, :, :]).reshape(-1, n)
        v = _frame_beta_batch(make(cand, m)).reshape(len(act), -1)
        kb = np.argmin(v, axis=1)
        vb = v[np.arange(len(act)), kb]
        impr = vb < vals[act] - 1e-15
        took = act[impr]
        P[took] = cand.reshape(len(act), -1, n)[impr, kb[impr]]
        vals[took] = vb[impr]
        h[took] *= expand
        h[act[~impr]] *= shrink
    return P, vals


def optimize_frame_r2(
    m: int, restarts: int = 48, seed: int = 0, budget: int = 8000
) -> tuple[FramePolar, float]:
    """Search for the m x 2 real frame with the smallest condition number.

    Multi-start derivative-free minimization over gauge-fixed polar
    parameters, with the exact subset-enumeration condition number as the
    objective.  Runs a joint multistart, an angles-only multistart at unit
    radii, then an expansion-polish of the best incumbents.
    """
    m = int(m)
    if m < 3:
        raise ValueError(f"need m >= 3, got {m}")
    if m > 16:
        raise EnumerationCapError(m)
    rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(202,)))
    n = 2 * m - 1

    P_joint = np.concatenate(
        [
            rng.uniform(0, np.pi, (restarts, m - 1)),
            np.abs(1 + 0.3 * rng.standard_normal((restarts, m))),
        ],
        axis=1,
    )
    P_joint, v_joint = _polling_search(
        P_joint, m, _frames_from_params, h0=0.6, hmin=1e-5, rng=rng, max_iter=budget
    )

    P_ang = rng.uniform(0, np.pi, (restarts, m - 1))
    P_ang, v_ang = _polling_search(
        P_ang, m, _frames_angles_only, h0=0.6, hmin=1e-5, rng=rng, max_iter=budget
    )
    P_ang_full = np.concatenate([P_ang, np.ones((P_ang.shape[0], m))], axis=1)

    P_all = np.vstack([P_joint, P_ang_full])
    v_all = np.concatenate([v_joint, v_ang])
    top = np.argsort(v_all)[:6]
    polish = P_all[top].copy()
    polish, v_pol = _polling_search(
        polish,
        m,
        _frames_from_params,
        h0=0.05,
        hmin=1e-12,
        rng=rng,
        max_iter=int(1.5 * budget),
        shrink=0.65,
        expand=1.8,
        sets=2,
    )
    k = int(np.argmin(v_pol))
    rows = _frames_from_params(polish[k : k + 1], m)[0]
    radii = np.linalg.norm(rows, axis=1)
    angles = np.mod(np.arctan2(rows[:, 1], rows[:, 0]), np.pi)
    return FramePolar(radii=radii, angles=angles), float(v_pol[k])
